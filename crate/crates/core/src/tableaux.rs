//! Extended Young tableaux of rank `n`, charged tableaux and the
//! Misra-Wilson tableaux that count outer multiplicities by brute force.
//!
//! Contents live in `Î = [0, n]` and all congruences are taken modulo
//! `n + 1`.

use serde::Serialize;

use crate::partitions::{visit_partitions, Partition};
use crate::residue::{congruent, residue};
use crate::{Error, Result};

/// A tableau of rank `n`: a shape with a content in `[0, n]` at every box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExtendedTableau {
    n: usize,
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl ExtendedTableau {
    /// Builds a tableau from explicit rows of contents. Row lengths must
    /// form the shape and every content must lie in `[0, n]`.
    pub fn new(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        let shape = Partition::new(rows.iter().map(|r| r.len() as u32).collect())?;
        if rows.iter().any(Vec::is_empty) {
            return Err(Error::NotAPartition(rows.iter().map(|r| r.len() as u32).collect()));
        }
        if let Some(&bad) = rows.iter().flatten().find(|&&c| c > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Ok(Self { n, shape, rows })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Content at row `r`, column `c` (both 1-based).
    pub fn content(&self, r: usize, c: usize) -> Option<usize> {
        self.rows.get(r.checked_sub(1)?)?.get(c.checked_sub(1)?).copied()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// True iff `T(r,c) ≡ c - r + i` at every box.
    pub fn has_charge(&self, i: usize) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, &t)| congruent(t as i64, c as i64 - r as i64 + i as i64, self.n))
        })
    }

    pub fn is_regular(&self) -> bool {
        is_regular(&self.shape, self.n)
    }
}

/// A vector `η ∈ Z_{≥0}^{n+1}` counting box contents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ContentCharacter {
    n: usize,
    eta: Vec<u32>,
}

impl ContentCharacter {
    pub fn new(eta: Vec<u32>) -> Result<Self> {
        if eta.len() < 2 {
            return Err(Error::ZeroRank);
        }
        Ok(Self { n: eta.len() - 1, eta })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(vec![0; n + 1])
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn eta(&self) -> &[u32] {
        &self.eta
    }

    /// `|η|`, the total number of boxes.
    pub fn total(&self) -> u32 {
        self.eta.iter().sum()
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(())
}

/// Content of box `(r, c)` (1-based) of the `i`-charged tableau.
pub fn charged_content(r: usize, c: usize, i: usize, n: usize) -> usize {
    residue(c as i64 - r as i64 + i as i64, n)
}

/// The unique `i`-charged tableau `T_{m,i}` of the given shape.
pub fn charged_tableau(shape: &Partition, i: usize, n: usize) -> Result<ExtendedTableau> {
    check_index(i, n)?;
    let rows = shape
        .parts()
        .iter()
        .enumerate()
        .map(|(r, &len)| (1..=len as usize).map(|c| charged_content(r + 1, c, i, n)).collect())
        .collect();
    ExtendedTableau::new(n, rows)
}

pub fn content_character(t: &ExtendedTableau) -> ContentCharacter {
    let mut eta = vec![0u32; t.n + 1];
    for &c in t.rows.iter().flatten() {
        eta[c] += 1;
    }
    ContentCharacter { n: t.n, eta }
}

/// Content character of `T_{m,i}` without materialising the tableau.
pub fn charged_character(shape: &Partition, i: usize, n: usize) -> Vec<u32> {
    let mut eta = vec![0u32; n + 1];
    for (r, &len) in shape.parts().iter().enumerate() {
        // row r+1 contents run cyclically from i - r
        let start = residue(i as i64 - r as i64, n);
        let (full, extra) = (len as usize / (n + 1), len as usize % (n + 1));
        for (s, e) in eta.iter_mut().enumerate() {
            *e += full as u32;
            if residue(s as i64 - start as i64, n) < extra {
                *e += 1;
            }
        }
    }
    eta
}

/// Every part repeats at most `n` times.
pub fn is_regular(shape: &Partition, n: usize) -> bool {
    shape.multiplicities().iter().all(|&(_, r)| r <= n)
}

fn mw_congruences(shape: &Partition, i: usize, n: usize, upto: impl Fn(usize) -> usize) -> bool {
    let mult = shape.multiplicities();
    let s = mult.len();
    let mut prefix = 0i64;
    for &(k, r) in mult.iter().take(upto(s)) {
        if !congruent(k as i64 + i as i64, r as i64 + 2 * prefix, n) {
            return false;
        }
        prefix += r as i64;
    }
    true
}

/// Membership of `T_{m,i}` in the Misra-Wilson set: the shape is regular
/// and `k_l + i ≡ r_l + 2 Σ_{j<l} r_j` for every `1 ≤ l ≤ s`, where
/// `m = (k_1^{r_1}, …, k_s^{r_s})`.
///
/// The congruence at `l = s` follows from the recursive form
/// `r_1 ≡ i + k_1`, `k_{l+1} - k_l ≡ r_l + r_{l+1}`; dropping it overcounts
/// (see [`is_mw_strict_prefix`]).
pub fn is_mw(shape: &Partition, i: usize, n: usize) -> bool {
    is_regular(shape, n) && mw_congruences(shape, i, n, |s| s)
}

/// The variant that only checks `1 ≤ l < s`. Kept to document that it
/// disagrees with the multiplicity formulas; not used for counting.
pub fn is_mw_strict_prefix(shape: &Partition, i: usize, n: usize) -> bool {
    is_regular(shape, n) && mw_congruences(shape, i, n, |s| s.saturating_sub(1))
}

/// All MW `i`-shapes whose charged tableau has content character `η`, in
/// lexicographically decreasing order.
pub fn mw_shapes(eta: &ContentCharacter, i: usize) -> Result<Vec<Partition>> {
    mw_shapes_with(eta, i, is_mw)
}

fn mw_shapes_with(
    eta: &ContentCharacter,
    i: usize,
    test: fn(&Partition, usize, usize) -> bool,
) -> Result<Vec<Partition>> {
    let n = eta.n;
    check_index(i, n)?;
    let total = eta.total();
    let mut out = Vec::new();
    visit_partitions(total, total, None, Some(n), &mut |parts| {
        let shape = Partition::new(parts.to_vec()).expect("generator yields partitions");
        if test(&shape, i, n) && charged_character(&shape, i, n) == eta.eta {
            out.push(shape);
        }
    });
    Ok(out)
}

/// `τ_i^n(η)`: the number of MW `i`-tableaux with content character `η`.
pub fn tau_bruteforce(eta: &ContentCharacter, i: usize) -> Result<u64> {
    Ok(mw_shapes(eta, i)?.len() as u64)
}

/// The same count under the strict-prefix reading of the MW condition.
pub fn tau_bruteforce_strict_prefix(eta: &ContentCharacter, i: usize) -> Result<u64> {
    Ok(mw_shapes_with(eta, i, is_mw_strict_prefix)?.len() as u64)
}

/// `η'_r = δ_{0r} + δ_{ir} - 2η_r + η_{r-1} + η_{r+1}`, indices cyclic.
/// These are the values on `h_r` of `Λ_0 + Λ_i - Σ η_l α_l`.
pub fn eta_prime(eta: &ContentCharacter, i: usize) -> Result<Vec<i64>> {
    let n = eta.n;
    check_index(i, n)?;
    let e = |r: i64| eta.eta[residue(r, n)] as i64;
    Ok((0..=n)
        .map(|r| {
            let ri = r as i64;
            let deltas = (r == 0) as i64 + (r == i) as i64;
            deltas - 2 * e(ri) + e(ri - 1) + e(ri + 1)
        })
        .collect())
}

/// Whether `η ∈ ℙ_i⁺`, i.e. every entry of `η'` is non-negative.
pub fn is_dominant_character(eta: &ContentCharacter, i: usize) -> Result<bool> {
    Ok(eta_prime(eta, i)?.iter().all(|&x| x >= 0))
}

/// The pair `j <= k` with `η' = e_j + e_k`.
pub fn jk_from_eta(eta: &ContentCharacter, i: usize) -> Result<(usize, usize)> {
    let ep = eta_prime(eta, i)?;
    let mut picks = Vec::new();
    for (r, &v) in ep.iter().enumerate() {
        if v < 0 {
            return Err(Error::NotDominantCharacter(eta.eta.clone()));
        }
        for _ in 0..v {
            picks.push(r);
        }
    }
    match picks[..] {
        [j, k] => Ok((j, k)),
        _ => Err(Error::NotDominantCharacter(eta.eta.clone())),
    }
}

/// Every `η ∈ ℙ_i⁺` with the given `η_0`, ordered by the pair `(j, k)`.
///
/// The affine Cartan matrix has kernel spanned by `(1, …, 1)`, so `η_0`
/// and `η' = e_j + e_k` determine `η`: the entries `η_1..η_n` solve
/// `C η_I = η_0 (e_1 + e_n) + e_i - (e_j + e_k)` restricted to `I`.
pub fn dominant_characters(n: usize, i: usize, eta0: u32) -> Result<Vec<ContentCharacter>> {
    check_index(i, n)?;
    let np1 = (n + 1) as i64;
    let mut out = Vec::new();
    for j in 0..=n {
        for k in j..=n {
            let mut rhs = vec![0i64; n + 1];
            rhs[1] += eta0 as i64;
            rhs[n] += eta0 as i64;
            rhs[i] += 1;
            rhs[j] -= 1;
            rhs[k] -= 1;
            let mut eta = vec![eta0];
            let mut ok = true;
            for r in 1..=n {
                // (n+1) C^{-1}_{rs} = min(r,s) (n+1-max(r,s))
                let num: i64 = (1..=n)
                    .map(|s| (r.min(s) as i64) * (np1 - r.max(s) as i64) * rhs[s])
                    .sum();
                if num % np1 != 0 || num < 0 {
                    ok = false;
                    break;
                }
                eta.push((num / np1) as u32);
            }
            if !ok {
                continue;
            }
            let c = ContentCharacter::new(eta)?;
            if eta_prime(&c, i)? == unit_pair(n, j, k) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn unit_pair(n: usize, j: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0i64; n + 1];
    v[j] += 1;
    v[k] += 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_bounded;
    use proptest::prelude::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn cc(v: &[u32]) -> ContentCharacter {
        ContentCharacter::new(v.to_vec()).unwrap()
    }

    #[test]
    fn charged_small_shapes() {
        let t = charged_tableau(&part(&[2, 1]), 0, 2).unwrap();
        assert_eq!(t.rows(), &[vec![0, 1], vec![2]]);
        assert_eq!(content_character(&t).eta(), &[1, 1, 1]);
        let col = charged_tableau(&part(&[1, 1, 1]), 1, 2).unwrap();
        assert_eq!(col.rows(), &[vec![1], vec![0], vec![2]]);
        let empty = charged_tableau(&Partition::empty(), 2, 3).unwrap();
        assert_eq!(content_character(&empty).eta(), &[0, 0, 0, 0]);
        assert!(charged_tableau(&part(&[1]), 3, 2).is_err());
    }

    #[test]
    fn headline_shape_character() {
        let t = charged_tableau(&part(&[15, 2]), 1, 2).unwrap();
        assert_eq!(content_character(&t).eta(), &[6, 6, 5]);
        assert!(t.has_charge(1));
        assert!(!t.has_charge(0));
    }

    #[test]
    fn general_tableaux_validate() {
        let t = ExtendedTableau::new(2, vec![vec![2, 2], vec![0]]).unwrap();
        assert_eq!(t.content(1, 2), Some(2));
        assert_eq!(t.content(2, 2), None);
        assert!(!t.has_charge(0));
        assert!(ExtendedTableau::new(2, vec![vec![3]]).is_err());
        assert!(ExtendedTableau::new(2, vec![vec![0], vec![0, 1]]).is_err());
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&part(&[3, 3, 1]), 2));
        assert!(!is_regular(&part(&[2, 2, 2]), 2));
        assert!(is_regular(&Partition::empty(), 1));
    }

    #[test]
    fn mw_examples() {
        assert!(is_mw(&part(&[15, 2]), 1, 2));
        assert!(is_mw(&part(&[6, 5, 4, 1, 1]), 1, 2));
        for i in 0..=3 {
            assert!(is_mw(&Partition::empty(), i, 3));
        }
    }

    #[test]
    fn headline_count_and_shapes() {
        let shapes = mw_shapes(&cc(&[6, 6, 5]), 1).unwrap();
        assert_eq!(shapes.len(), 5);
        assert!(shapes.contains(&part(&[15, 2])));
        assert!(shapes.contains(&part(&[6, 5, 4, 1, 1])));
        assert_eq!(tau_bruteforce(&ContentCharacter::zero(2).unwrap(), 1).unwrap(), 1);
    }

    #[test]
    fn strict_prefix_reading_overcounts_single_part_shapes() {
        // (2) carries contents 0,1 under charge 0 for n = 1; the l = s
        // congruence 2 ≡ 1 fails, while the strict reading accepts it.
        let eta = cc(&[1, 1]);
        assert_eq!(tau_bruteforce(&eta, 0).unwrap(), 0);
        assert_eq!(tau_bruteforce_strict_prefix(&eta, 0).unwrap(), 1);
    }

    #[test]
    fn eta_prime_examples() {
        for e0 in 1..5 {
            assert_eq!(eta_prime(&cc(&[e0, e0, e0]), 1).unwrap(), vec![1, 1, 0]);
            assert_eq!(eta_prime(&cc(&[e0, e0, e0 - 1]), 1).unwrap(), vec![0, 0, 2]);
            assert_eq!(jk_from_eta(&cc(&[e0, e0, e0]), 1).unwrap(), (0, 1));
            assert_eq!(jk_from_eta(&cc(&[e0, e0, e0 - 1]), 1).unwrap(), (2, 2));
        }
        assert_eq!(eta_prime(&cc(&[0, 0]), 0).unwrap(), vec![2, 0]);
        assert_eq!(jk_from_eta(&cc(&[0, 0]), 0).unwrap(), (0, 0));
        assert!(jk_from_eta(&cc(&[0, 3]), 0).is_err());
    }

    #[test]
    fn dominant_characters_satisfy_the_pair_rule() {
        for n in 1..=3usize {
            for i in 0..=n {
                for e0 in 0..=4 {
                    let all = dominant_characters(n, i, e0).unwrap();
                    assert!(!all.is_empty() || e0 == 0);
                    for eta in all {
                        let (j, k) = jk_from_eta(&eta, i).unwrap();
                        assert!(congruent((j + k) as i64, i as i64, n), "{eta:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn dominant_characters_match_box_search() {
        for n in 1..=3usize {
            for i in 0..=n {
                for e0 in 0..=5u32 {
                    let mut expect = Vec::new();
                    let hi = e0 + 2 * (n as u32 + 1);
                    let mut eta = vec![0; n + 1];
                    eta[0] = e0;
                    loop {
                        let c = cc(&eta);
                        if is_dominant_character(&c, i).unwrap() {
                            expect.push(c);
                        }
                        let mut pos = 1;
                        while pos <= n && eta[pos] == hi {
                            eta[pos] = 0;
                            pos += 1;
                        }
                        if pos > n {
                            break;
                        }
                        eta[pos] += 1;
                    }
                    let mut got = dominant_characters(n, i, e0).unwrap();
                    got.sort();
                    expect.sort();
                    assert_eq!(got, expect, "n={n} i={i} e0={e0}");
                }
            }
        }
    }

    #[test]
    fn charged_character_matches_materialised_tableau() {
        for n in 1..=3 {
            for i in 0..=n {
                for m in 0..=8 {
                    for shape in enumerate_bounded(m, m, None) {
                        let t = charged_tableau(&shape, i, n).unwrap();
                        assert_eq!(content_character(&t).eta(), &charged_character(&shape, i, n)[..]);
                    }
                }
            }
        }
    }

    #[test]
    fn charge_map_is_injective() {
        for m in 0..=7 {
            let shapes = enumerate_bounded(m, m, None);
            let mut tabs: Vec<_> = shapes.iter().map(|s| charged_tableau(s, 1, 2).unwrap()).collect();
            tabs.sort_by(|a, b| a.rows().cmp(b.rows()));
            tabs.dedup();
            assert_eq!(tabs.len(), shapes.len());
        }
    }

    proptest! {
        #[test]
        fn charge_consistency(parts in proptest::collection::vec(0u32..9, 0..6), i in 0usize..4, n in 1usize..4) {
            prop_assume!(i <= n);
            let shape = Partition::sorted_from(parts);
            let t = charged_tableau(&shape, i, n).unwrap();
            prop_assert!(t.has_charge(i));
            prop_assert_eq!(content_character(&t).total(), shape.size());
        }
    }
}
