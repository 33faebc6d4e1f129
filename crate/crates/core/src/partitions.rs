//! Partitions, multipartitions with bounded parts, and their counting
//! functions.
//!
//! `ρ_b^a(m)` is the number of partitions of `m` with parts at most `b` and
//! at most `a` parts; the multi-index version convolves these over the
//! components. A rational or negative argument always counts zero.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::laurent::LaurentPoly;
use crate::{Error, Rational, Result};

/// A weakly decreasing sequence of positive integers (trailing zeros are
/// stripped on construction).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validates that `parts` is weakly decreasing; zeros may only trail.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(parts));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self(parts))
    }

    /// The partition obtained by sorting an arbitrary vector of
    /// non-negative integers.
    pub fn sorted_from(mut values: Vec<u32>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        while values.last() == Some(&0) {
            values.pop();
        }
        Self(values)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|m|`, the partitioned integer.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn largest_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Distinct parts with their multiplicities, largest part first:
    /// `(k_1, r_1), …, (k_s, r_s)`.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((k, r)) if *k == p => *r += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The transposed Young diagram.
    pub fn conjugate(&self) -> Self {
        let cols = self.largest_part() as usize;
        Self(
            (1..=cols as u32)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
                .collect(),
        )
    }

    /// `(b, m_1, …, m_l)`; requires `b >= m_1`.
    pub fn prepend(&self, b: u32) -> Result<Self> {
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(b);
        parts.extend_from_slice(&self.0);
        Self::new(parts)
    }

    /// Consecutive differences `(m_1-m_2, …, m_{l-1}-m_l, m_l)` of the
    /// partition padded with zeros to length `l`.
    pub fn differences(&self, l: usize) -> Vec<u32> {
        let padded = self.padded(l);
        (0..l)
            .map(|i| padded[i] - padded.get(i + 1).copied().unwrap_or(0))
            .collect()
    }

    /// Parts padded with zeros (or truncated) to exactly `l` entries.
    pub fn padded(&self, l: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(l, 0);
        v
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A tuple of partitions, component `j` bounded by `bounds[j]` and, when
/// caps are present, having at most `caps[j]` parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Multipartition {
    components: Vec<Partition>,
    bounds: Vec<u32>,
    caps: Option<Vec<u32>>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>, bounds: Vec<u32>, caps: Option<Vec<u32>>) -> Result<Self> {
        if components.len() != bounds.len() {
            return Err(Error::Precondition(format!(
                "{} components but {} bounds",
                components.len(),
                bounds.len()
            )));
        }
        if let Some(c) = &caps {
            if c.len() != bounds.len() {
                return Err(Error::Precondition("caps and bounds differ in length".into()));
            }
        }
        for (j, comp) in components.iter().enumerate() {
            if comp.largest_part() > bounds[j] {
                return Err(Error::Precondition(format!(
                    "component {j} = {comp} exceeds bound {}",
                    bounds[j]
                )));
            }
            if let Some(c) = &caps {
                if comp.len() > c[j] as usize {
                    return Err(Error::Precondition(format!(
                        "component {j} = {comp} has more than {} parts",
                        c[j]
                    )));
                }
            }
        }
        Ok(Self { components, bounds, caps })
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn caps(&self) -> Option<&[u32]> {
        self.caps.as_deref()
    }

    pub fn size(&self) -> u32 {
        self.components.iter().map(Partition::size).sum()
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Calls `visit` on every partition of `m` with parts at most `max_part`,
/// at most `max_len` parts and no part repeated more than `max_repeat`
/// times, in lexicographically decreasing order.
pub fn visit_partitions(
    m: u32,
    max_part: u32,
    max_len: Option<usize>,
    max_repeat: Option<usize>,
    visit: &mut dyn FnMut(&[u32]),
) {
    fn go(
        remaining: u32,
        max_part: u32,
        slots: usize,
        run: usize,
        max_repeat: usize,
        current: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if remaining == 0 {
            visit(current);
            return;
        }
        if slots == 0 {
            return;
        }
        let top = max_part.min(remaining);
        for part in (1..=top).rev() {
            let new_run = if current.last() == Some(&part) { run + 1 } else { 1 };
            if new_run > max_repeat {
                continue;
            }
            // remaining boxes must fit into the remaining rows
            if (part as u64) * (slots as u64) < remaining as u64 {
                break;
            }
            current.push(part);
            go(remaining - part, part, slots - 1, new_run, max_repeat, current, visit);
            current.pop();
        }
    }
    let slots = max_len.unwrap_or(m as usize);
    let mut current = Vec::new();
    go(m, max_part, slots, 0, max_repeat.unwrap_or(usize::MAX), &mut current, visit);
}

/// The set `𝒫_b(m)` (or `𝒫_b^l(m)` when `max_parts = Some(l)`) in
/// lexicographically decreasing order.
pub fn enumerate_bounded(m: u32, b: u32, max_parts: Option<usize>) -> Vec<Partition> {
    let mut out = Vec::new();
    visit_partitions(m, b, max_parts, None, &mut |p| out.push(Partition(p.to_vec())));
    out
}

/// Every multipartition of total size `m` with the given bounds and caps.
pub fn enumerate_multi(m: u32, bounds: &[u32], caps: Option<&[u32]>) -> Result<Vec<Multipartition>> {
    if let Some(c) = caps {
        if c.len() != bounds.len() {
            return Err(Error::Precondition("caps and bounds differ in length".into()));
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(bounds.len());
    fn go(
        j: usize,
        remaining: u32,
        bounds: &[u32],
        caps: Option<&[u32]>,
        current: &mut Vec<Partition>,
        out: &mut Vec<Multipartition>,
    ) {
        if j == bounds.len() {
            if remaining == 0 {
                out.push(Multipartition {
                    components: current.clone(),
                    bounds: bounds.to_vec(),
                    caps: caps.map(<[u32]>::to_vec),
                });
            }
            return;
        }
        for mj in (0..=remaining).rev() {
            for part in enumerate_bounded(mj, bounds[j], caps.map(|c| c[j] as usize)) {
                current.push(part);
                go(j + 1, remaining - mj, bounds, caps, current, out);
                current.pop();
            }
        }
    }
    go(0, m, bounds, caps, &mut current, &mut out);
    Ok(out)
}

thread_local! {
    static COUNT_CACHE: RefCell<HashMap<(u32, u32, u32), u64>> = RefCell::new(HashMap::new());
}

/// Number of partitions of `m` with parts `<= b` and at most `cap` parts.
fn count(m: u32, b: u32, cap: u32) -> u64 {
    if m == 0 {
        return 1;
    }
    let b = b.min(m);
    let cap = cap.min(m);
    if b == 0 || cap == 0 {
        return 0;
    }
    if let Some(v) = COUNT_CACHE.with(|c| c.borrow().get(&(m, b, cap)).copied()) {
        return v;
    }
    // either no part equals b, or remove one part equal to b
    let v = count(m, b - 1, cap) + count(m - b, b, cap - 1);
    COUNT_CACHE.with(|c| c.borrow_mut().insert((m, b, cap), v));
    v
}

/// `m` as a non-negative machine integer, or `None` when it is negative or
/// not an integer.
pub fn natural(m: Rational) -> Option<u32> {
    if !m.is_integer() || m.is_negative() {
        return None;
    }
    m.to_integer().to_u32()
}

/// `ρ_b(m) = |𝒫_b(m)|`; zero off the non-negative integers.
pub fn rho(m: Rational, b: u32) -> u64 {
    match natural(m) {
        Some(m) => count(m, b, m),
        None => 0,
    }
}

/// `ρ_b^a(m)`: at most `cap` parts, each at most `b`.
pub fn rho_capped(m: Rational, b: u32, cap: u32) -> u64 {
    match natural(m) {
        Some(m) => count(m, b, cap),
        None => 0,
    }
}

/// `ρ_b(m)` (or `ρ_b^a(m)` with caps) for a multi-index of bounds, summed
/// over all compositions of `m`.
pub fn rho_multi(m: Rational, bounds: &[u32], caps: Option<&[u32]>) -> Result<u64> {
    if let Some(c) = caps {
        if c.len() != bounds.len() {
            return Err(Error::Precondition(format!(
                "caps have length {} but bounds have length {}",
                c.len(),
                bounds.len()
            )));
        }
    }
    let Some(m) = natural(m) else {
        return Ok(0);
    };
    let m = m as usize;
    // dp[t] = number of multipartitions of t over the components seen so far
    let mut dp = vec![0u64; m + 1];
    dp[0] = 1;
    for (j, &b) in bounds.iter().enumerate() {
        let cap = caps.map(|c| c[j]);
        if b == 0 || cap == Some(0) {
            continue;
        }
        let single: Vec<u64> = (0..=m as u32)
            .map(|t| count(t, b, cap.unwrap_or(t)))
            .collect();
        let mut next = vec![0u64; m + 1];
        for (t, &ways) in dp.iter().enumerate() {
            if ways == 0 {
                continue;
            }
            for (s, &c) in single.iter().enumerate().take(m + 1 - t) {
                next[t + s] += ways * c;
            }
        }
        dp = next;
    }
    Ok(dp[m])
}

/// The Gaussian binomial `[m choose p]_q`, computed from its product form.
pub fn q_binomial(m: u32, p: u32) -> Result<LaurentPoly> {
    if p > m {
        return Err(Error::BinomialRange { m, p });
    }
    let one_minus = |e: u32| LaurentPoly::from_terms([(0, 1), (e as i64, -1)]);
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for t in 0..p {
        num = &num * &one_minus(m - t);
        den = &den * &one_minus(p - t);
    }
    Ok(num
        .div_exact(&den)
        .expect("q-binomial product is a polynomial"))
}

/// `Π_j [m_j choose p_j]_q`.
pub fn q_binomial_product(m: &[u32], p: &[u32]) -> Result<LaurentPoly> {
    if m.len() != p.len() {
        return Err(Error::Precondition(format!(
            "length mismatch: {} vs {}",
            m.len(),
            p.len()
        )));
    }
    m.iter()
        .zip(p)
        .try_fold(LaurentPoly::one(), |acc, (&mj, &pj)| {
            Ok(&acc * &q_binomial(mj, pj)?)
        })
}

/// One pair of the explicit bijection
/// `𝒫_b^{k-a}(k|b| - ⟨a,b⟩ - f) → 𝒫_b(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionPair {
    pub capped: Multipartition,
    pub image: Multipartition,
}

/// Componentwise box complement: `m ↦ sort(b - m_s)` with `m` padded to
/// `rows` entries.
pub fn box_complement(part: &Partition, rows: u32, b: u32) -> Partition {
    Partition::sorted_from(part.padded(rows as usize).iter().map(|&x| b - x).collect())
}

/// The stabilization bijection for capped multipartitions. Every element of
/// the capped side is listed together with its image.
pub fn stabilize_bijection(f: u32, a: &[u32], b: &[u32], k: u32) -> Result<Vec<BijectionPair>> {
    if a.len() != b.len() || b.is_empty() {
        return Err(Error::Precondition("a and b must be non-empty and of equal length".into()));
    }
    let total_b: u64 = b.iter().map(|&x| x as u64).sum();
    if total_b == 0 {
        return Err(Error::Precondition("|b| must be positive".into()));
    }
    let a_max = *a.iter().max().unwrap();
    let ab: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
    if (k as u64) < f as u64 + a_max as u64 || (k as u64) * total_b < f as u64 + ab {
        return Err(Error::Precondition(format!(
            "k = {k} is below max(f + max a, (f + <a,b>)/|b|)"
        )));
    }
    let caps: Vec<u32> = a.iter().map(|&x| k - x).collect();
    let target = (k as u64 * total_b - ab - f as u64) as u32;
    let lhs = enumerate_multi(target, b, Some(&caps))?;
    let mut out = Vec::with_capacity(lhs.len());
    for mp in lhs {
        let comps = mp
            .components()
            .iter()
            .zip(caps.iter().zip(b))
            .map(|(part, (&rows, &bj))| box_complement(part, rows, bj))
            .collect();
        let image = Multipartition::new(comps, b.to_vec(), None)?;
        out.push(BijectionPair { capped: mp, image });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn r(m: i64) -> Rational {
        rat(m, 1)
    }

    /// Independent oracle: all weakly decreasing sequences built by
    /// brute-force recursion over part values, then filtered.
    fn brute_partitions(m: u32) -> Vec<Vec<u32>> {
        fn compositions(m: u32) -> Vec<Vec<u32>> {
            if m == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=m {
                for mut rest in compositions(m - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        compositions(m)
            .into_iter()
            .filter(|c| c.windows(2).all(|w| w[0] >= w[1]))
            .collect()
    }

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let p = Partition::new(vec![3, 1, 0, 0]).unwrap();
        assert_eq!(p, Partition::new(vec![3, 1]).unwrap());
        assert_eq!(p.size(), 4);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![1, 0, 1]).is_err());
    }

    #[test]
    fn enumerate_bounded_examples() {
        let got = enumerate_bounded(3, 2, None);
        let mut expect: Vec<Partition> = brute_partitions(3)
            .into_iter()
            .filter(|p| p.iter().all(|&x| x <= 2))
            .map(Partition)
            .collect();
        expect.sort_by(|a, b| b.cmp(a));
        assert_eq!(got, expect);
        assert_eq!(got, vec![Partition(vec![2, 1]), Partition(vec![1, 1, 1])]);
        assert_eq!(enumerate_bounded(0, 7, None), vec![Partition::empty()]);
        assert_eq!(enumerate_bounded(3, 2, Some(2)), vec![Partition(vec![2, 1])]);
        assert!(enumerate_bounded(4, 0, None).is_empty());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for m in 0..=12 {
            let all = brute_partitions(m);
            for b in 0..=6 {
                for cap in [None, Some(0), Some(2), Some(3)] {
                    let mut expect: Vec<Vec<u32>> = all
                        .iter()
                        .filter(|p| p.iter().all(|&x| x <= b))
                        .filter(|p| cap.is_none_or(|c| p.len() <= c))
                        .cloned()
                        .collect();
                    expect.sort_by(|x, y| y.cmp(x));
                    let got: Vec<Vec<u32>> =
                        enumerate_bounded(m, b, cap).into_iter().map(|p| p.0).collect();
                    assert_eq!(got, expect, "m={m} b={b} cap={cap:?}");
                }
            }
        }
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(r(3), 2), 2);
        assert_eq!(rho(r(5), 1), 1);
        assert_eq!(rho(rat(1, 2), 4), 0);
        assert_eq!(rho(r(-1), 4), 0);
        assert_eq!(rho(r(0), 0), 1);
        assert_eq!(rho(r(2), 0), 0);
    }

    #[test]
    fn rho_matches_enumeration() {
        for m in 0..=30 {
            for b in 0..=10 {
                assert_eq!(rho(r(m as i64), b), enumerate_bounded(m, b, None).len() as u64);
            }
        }
    }

    #[test]
    fn rho_multi_examples() {
        assert_eq!(rho_multi(r(1), &[2, 1], None).unwrap(), 2);
        assert_eq!(rho_multi(r(3), &[0, 2], None).unwrap(), 2);
        assert_eq!(rho_multi(r(0), &[3, 0, 1], None).unwrap(), 1);
        assert_eq!(rho_multi(r(0), &[], None).unwrap(), 1);
        assert_eq!(rho_multi(rat(3, 2), &[4, 4], None).unwrap(), 0);
        assert!(rho_multi(r(1), &[1, 1], Some(&[1])).is_err());
    }

    #[test]
    fn rho_multi_matches_multipartition_enumeration() {
        for m in 0..=8u32 {
            for bounds in [vec![1, 2], vec![0, 3], vec![2, 2, 1], vec![3]] {
                for caps in [None, Some(vec![1u32; bounds.len()]), Some(vec![2u32; bounds.len()])] {
                    let got = rho_multi(r(m as i64), &bounds, caps.as_deref()).unwrap();
                    let listed = enumerate_multi(m, &bounds, caps.as_deref()).unwrap();
                    assert_eq!(got, listed.len() as u64, "m={m} b={bounds:?} a={caps:?}");
                }
            }
        }
    }

    #[test]
    fn zero_bounds_can_be_deleted() {
        for m in 0..10 {
            assert_eq!(
                rho_multi(r(m), &[2, 0, 3], None).unwrap(),
                rho_multi(r(m), &[2, 3], None).unwrap()
            );
        }
        // all positive bounds: ρ_b(1) = l
        assert_eq!(rho_multi(r(1), &[1, 4, 2], None).unwrap(), 3);
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(4, 2).unwrap(), LaurentPoly::from_dense(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(7, 0).unwrap(), LaurentPoly::one());
        assert_eq!(q_binomial(3, 1).unwrap(), LaurentPoly::from_dense(&[1, 1, 1]));
        assert!(matches!(q_binomial(2, 3), Err(Error::BinomialRange { .. })));
    }

    #[test]
    fn q_binomial_product_examples() {
        assert_eq!(
            q_binomial_product(&[2, 2], &[1, 1]).unwrap(),
            LaurentPoly::from_dense(&[1, 2, 1])
        );
        assert_eq!(q_binomial_product(&[5], &[0]).unwrap(), LaurentPoly::one());
        let expect = &q_binomial(4, 2).unwrap() * &q_binomial(3, 1).unwrap();
        assert_eq!(q_binomial_product(&[4, 3], &[2, 1]).unwrap(), expect);
        assert!(q_binomial_product(&[4], &[5]).is_err());
    }

    #[test]
    fn conjugate_is_an_involution() {
        for m in 0..=10 {
            for p in enumerate_bounded(m, m, None) {
                assert_eq!(p.conjugate().conjugate(), p);
                assert_eq!(p.conjugate().size(), m);
            }
        }
    }

    #[test]
    fn partition_helpers() {
        let p = Partition::new(vec![9, 3, 3, 1, 1]).unwrap();
        assert_eq!(p.multiplicities(), vec![(9, 1), (3, 2), (1, 2)]);
        assert_eq!(p.differences(5), vec![6, 0, 2, 0, 1]);
        assert_eq!(p.prepend(10).unwrap().parts(), &[10, 9, 3, 3, 1, 1]);
        assert!(p.prepend(2).is_err());
        assert_eq!(Partition::sorted_from(vec![1, 0, 3, 2]).parts(), &[3, 2, 1]);
    }

    #[test]
    fn stabilize_bijection_examples() {
        // f = 0: unique full multipartition paired with the empty one
        let pairs = stabilize_bijection(0, &[1, 0], &[2, 1], 3).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].capped.components()[0].parts(), &[2, 2]);
        assert_eq!(pairs[0].capped.components()[1].parts(), &[1, 1, 1]);
        assert!(pairs[0].image.components().iter().all(Partition::is_empty));

        let pairs = stabilize_bijection(1, &[0], &[2], 3).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].capped.components()[0].parts(), &[2, 2, 1]);
        assert_eq!(pairs[0].image.components()[0].parts(), &[1]);

        let pairs = stabilize_bijection(2, &[1, 0], &[1, 2], 4).unwrap();
        assert_eq!(pairs.len(), 4);
        assert_eq!(rho_multi(r(2), &[1, 2], None).unwrap(), 4);
        let mut images: Vec<_> = pairs.iter().map(|p| p.image.clone()).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 4);
    }

    #[test]
    fn stabilize_bijection_rejects_small_k() {
        assert!(stabilize_bijection(3, &[1], &[2], 3).is_err());
        assert!(stabilize_bijection(1, &[0], &[0], 5).is_err());
        assert!(stabilize_bijection(1, &[0, 1], &[2], 5).is_err());
    }

    #[test]
    fn pascal_recurrence() {
        for m in 1..=12u32 {
            for p in 1..m {
                let lhs = q_binomial(m, p).unwrap();
                let rhs = &q_binomial(m - 1, p).unwrap()
                    + &q_binomial(m - 1, p - 1).unwrap().shift((m - p) as i64);
                assert_eq!(lhs, rhs, "m={m} p={p}");
            }
        }
    }

    #[test]
    fn q_binomial_coefficients_count_boxed_partitions() {
        for m in 0..=9u32 {
            for p in 0..=m {
                let poly = q_binomial(m, p).unwrap();
                for s in 0..=(p * (m - p)) as i64 + 1 {
                    assert_eq!(poly.coefficient(s) as u64, rho_capped(r(s), m - p, p));
                }
            }
        }
    }

    #[test]
    fn capped_count_vanishes_above_the_box() {
        for k in 0..=4u32 {
            for a in [[0u32, 0], [1, 0], [2, 1], [0, 3]] {
                if a.iter().any(|&x| x > k) {
                    continue;
                }
                for b in [[1u32, 0], [1, 2], [2, 2], [0, 3]] {
                    let caps: Vec<u32> = a.iter().map(|&x| k - x).collect();
                    let top: i64 = (0..2).map(|j| (k as i64 - a[j] as i64) * b[j] as i64).sum();
                    for excess in 1..=3 {
                        assert_eq!(rho_multi(r(top + excess), &b, Some(&caps)).unwrap(), 0);
                    }
                    assert_eq!(rho_multi(r(top), &b, Some(&caps)).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn stabilization_sequence_is_constant() {
        for f in 0..=4u32 {
            for (a, b) in [(vec![0u32], vec![2u32]), (vec![1, 0], vec![1, 2]), (vec![2, 1], vec![1, 1])] {
                let ab: u32 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
                let bb: u32 = b.iter().sum();
                let amax = *a.iter().max().unwrap();
                let k0 = (f + amax).max((f + ab).div_ceil(bb));
                for k in k0..k0 + 4 {
                    let caps: Vec<u32> = a.iter().map(|&x| k - x).collect();
                    let m = (k * bb - ab - f) as i64;
                    assert_eq!(
                        rho_multi(r(m), &b, Some(&caps)).unwrap(),
                        rho_multi(r(f as i64), &b, None).unwrap()
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn conjugation_symmetry(s in 0u32..=20, p in 0u32..=6, b in 0u32..=6) {
            prop_assert_eq!(rho_capped(r(s as i64), b, p), rho_capped(r(s as i64), p, b));
        }

        #[test]
        fn q_binomial_is_palindromic_with_full_degree(m in 0u32..=14, p in 0u32..=14) {
            prop_assume!(p <= m);
            let poly = q_binomial(m, p).unwrap();
            prop_assert!(poly.is_palindromic());
            prop_assert_eq!(poly.coefficient(0), 1);
            prop_assert_eq!(poly.max_exponent(), Some((p * (m - p)) as i64));
        }
    }
}
