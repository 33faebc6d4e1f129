//! The affine Weyl group of type `A_n^(1)` acting on affine weights: socles
//! of orbits, the orbit sets `Γ_ξ`, the level-two families `Γ_{j,k}`,
//! reduced pairs and the cofinal sequence `w_k = (s_0 s_{n-1,1})^k`.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::affine_cartan::{
    affine_bilinear, bilinear, eps_coords, from_eps_coords, quadratic_f_int, AffineWeight,
    FiniteWeight,
};
use crate::residue::{congruent, res_of_sum, residue};
use crate::{Error, Rational, Result};

/// `s_i λ = λ - λ(h_i) α_i`.
pub fn simple_reflection(i: usize, l: &AffineWeight) -> Result<AffineWeight> {
    let n = l.rank();
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let c = l.at(i);
    if c == 0 {
        return Ok(l.clone());
    }
    l.sub(&AffineWeight::simple_root(n, i)?.scale(c))
}

/// Applies the word `s_{w_1} s_{w_2} ⋯ s_{w_m}` (rightmost letter first).
pub fn apply_word(word: &[usize], l: &AffineWeight) -> Result<AffineWeight> {
    word.iter().rev().try_fold(l.clone(), |acc, &i| simple_reflection(i, &acc))
}

/// `t_α(λ) = λ + λ(c)α - ((λ,α) + ½(α,α)λ(c))δ` for `α` in the root
/// lattice.
pub fn translation(alpha: &FiniteWeight, l: &AffineWeight) -> Result<AffineWeight> {
    if !alpha.is_in_root_lattice() {
        return Err(Error::NotInRootLattice(alpha.to_string()));
    }
    let pair = bilinear(&l.finite, alpha)?;
    let norm = bilinear(alpha, alpha)?;
    let finite = l.finite.add(&alpha.scale(l.level))?;
    let degree = l.degree - pair - norm * Rational::new(l.level, 2);
    Ok(AffineWeight::new(finite, l.level, degree))
}

/// The dominant weight in the orbit of `ξ` together with the number of
/// reflections used, by repeatedly reflecting at the smallest negative
/// label.
pub fn socle_descent(xi: &AffineWeight) -> Result<(AffineWeight, usize)> {
    if xi.level <= 0 {
        return Err(Error::NonPositiveLevel(xi.level));
    }
    let mut cur = xi.clone();
    let mut steps = 0;
    while let Some(i) = (0..=cur.rank()).find(|&i| cur.at(i) < 0) {
        cur = simple_reflection(i, &cur)?;
        steps += 1;
    }
    Ok((cur, steps))
}

/// `soc(ξ)`, the unique dominant weight in `Ŵξ`, found by descent.
pub fn socle_oracle(xi: &AffineWeight) -> Result<AffineWeight> {
    Ok(socle_descent(xi)?.0)
}

/// The division `a_i = p_i ℓ + m_i`, `0 < m_i ≤ ℓ`, of the ε-coordinates
/// of a finite weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitPair {
    pub level: i64,
    pub m: Vec<i64>,
    pub p: Vec<i64>,
}

impl OrbitPair {
    pub fn new(level: i64, m: Vec<i64>, p: Vec<i64>) -> Result<Self> {
        if level <= 0 {
            return Err(Error::NonPositiveLevel(level));
        }
        if m.len() != p.len() {
            return Err(Error::RankMismatch { expected: m.len(), got: p.len() });
        }
        if m.is_empty() {
            return Err(Error::ZeroRank);
        }
        if let Some(bad) = m.iter().find(|&&x| x < 1 || x > level) {
            return Err(Error::Precondition(format!("m entry {bad} is outside [1, {level}]")));
        }
        Ok(Self { level, m, p })
    }

    /// `φ(μ) = (m(ℓ,μ), p(ℓ,μ))`.
    pub fn from_weight(level: i64, mu: &FiniteWeight) -> Result<Self> {
        if level <= 0 {
            return Err(Error::NonPositiveLevel(level));
        }
        Ok(Self::from_a(level, &eps_coords(mu)))
    }

    fn from_a(level: i64, a: &[i64]) -> Self {
        let (p, m) = a
            .iter()
            .map(|&ai| {
                let p = Integer::div_ceil(&ai, &level) - 1;
                (p, ai - p * level)
            })
            .unzip();
        Self { level, m, p }
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    /// `a(m,p) = ℓp + m`.
    pub fn a(&self) -> Vec<i64> {
        self.m.iter().zip(&self.p).map(|(m, p)| p * self.level + m).collect()
    }

    pub fn weight(&self) -> FiniteWeight {
        from_eps_coords(&self.a()).expect("rank is positive")
    }

    /// `res(p)`: the element of `Î` with `res + |p| ≡ 0`.
    pub fn res(&self) -> usize {
        res_of_sum(self.p.iter().sum(), self.rank())
    }

    /// Whether the pair comes from a dominant weight, i.e. `a(m,p)` is a
    /// partition. This forces `p_i ≥ -1`, `p` weakly decreasing, and
    /// `a_i = 0` exactly when `p_i = -1`, in which case `m_i = ℓ`.
    pub fn is_dominant(&self) -> bool {
        let a = self.a();
        a.iter().all(|&x| x >= 0) && a.windows(2).all(|w| w[0] >= w[1])
    }

    /// `m'(ℓ,μ)`: `(ℓ, m)` sorted into a partition.
    pub fn m_prime(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.rank() + 1);
        v.push(self.level);
        v.extend_from_slice(&self.m);
        v.sort_unstable_by(|x, y| y.cmp(x));
        v
    }
}

/// `soc(ℓ, μ) = soc(ℓΛ_0 + w_0 μ)` from the closed formula
/// `Σ_{j=0}^n (m'_{j+1} - m'_{j+2}) Λ_{p-j}`, with the degree fixed by
/// norm invariance.
pub fn socle_formula(level: i64, mu: &FiniteWeight) -> Result<AffineWeight> {
    let pair = OrbitPair::from_weight(level, mu)?;
    let n = mu.rank();
    let mp = pair.m_prime();
    let p = pair.res() as i64;
    let mut cvals = vec![0i64; n + 1];
    for j in 0..=n {
        let next = mp.get(j + 1).copied().unwrap_or(0);
        cvals[residue(p - j as i64, n)] += mp[j] - next;
    }
    let mut soc = AffineWeight::from_cvals(&cvals, Rational::zero())?;
    let nm = bilinear(mu, mu)?;
    let ns = bilinear(&soc.finite, &soc.finite)?;
    soc.degree = (nm - ns) / (2 * level);
    Ok(soc)
}

fn check_orbit_base(xi: &AffineWeight) -> Result<()> {
    if xi.level < 1 {
        return Err(Error::NonPositiveLevel(xi.level));
    }
    if !xi.is_dominant() {
        return Err(Error::NotDominant(xi.to_string()));
    }
    Ok(())
}

/// `μ ∈ Γ_ξ`: `μ` is dominant and `soc(ξ(c), μ) ≡ ξ` modulo `δ`.
pub fn gamma_contains(xi: &AffineWeight, mu: &FiniteWeight) -> Result<bool> {
    check_orbit_base(xi)?;
    if mu.rank() != xi.rank() {
        return Err(Error::RankMismatch { expected: xi.rank(), got: mu.rank() });
    }
    if !mu.is_dominant() {
        return Ok(false);
    }
    Ok(socle_formula(xi.level, mu)?.congruent_mod_delta(xi))
}

/// The same membership test read off the labels:
/// `m'(ℓ,μ)^-_j = ξ(h_{p+1-j})` for `1 ≤ j ≤ n+1`, where `p = p(ℓ,μ)`.
pub fn gamma_contains_by_labels(xi: &AffineWeight, mu: &FiniteWeight) -> Result<bool> {
    check_orbit_base(xi)?;
    if mu.rank() != xi.rank() {
        return Err(Error::RankMismatch { expected: xi.rank(), got: mu.rank() });
    }
    if !mu.is_dominant() {
        return Ok(false);
    }
    let pair = OrbitPair::from_weight(xi.level, mu)?;
    let n = mu.rank();
    let mp = pair.m_prime();
    let p = pair.res() as i64;
    Ok((1..=n + 1).all(|j| {
        let diff = mp[j - 1] - mp.get(j).copied().unwrap_or(0);
        diff == xi.at(residue(p + 1 - j as i64, n))
    }))
}

/// `r(μ,Φ) = Φ(d) - ((μ,μ) - (Φ̄,Φ̄)) / (2Φ(c))`.
pub fn r_of(mu: &FiniteWeight, phi: &AffineWeight) -> Result<Rational> {
    if phi.level < 1 {
        return Err(Error::NonPositiveLevel(phi.level));
    }
    let diff = bilinear(mu, mu)? - bilinear(&phi.finite, &phi.finite)?;
    Ok(phi.degree - diff / (2 * phi.level))
}

/// All partitions `a` with `a_1 ≤ top` and `n` parts (zeros allowed), in
/// lexicographically increasing order.
fn decreasing_vectors(n: usize, top: i64, visit: &mut dyn FnMut(&[i64])) {
    fn go(pos: usize, cap: i64, cur: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
        if pos == cur.len() {
            visit(cur);
            return;
        }
        for v in 0..=cap {
            cur[pos] = v;
            go(pos + 1, v, cur, visit);
        }
    }
    let mut cur = vec![0; n];
    go(0, top, &mut cur, visit);
}

/// Largest integer `t` with `t² ≤ (n+1)·bound`. Since
/// `(n+1) f(a) = Σ_{0≤i<j≤n} (a_i - a_j)²` with `a_0 = 0`, every
/// coordinate of a vector with `f(a) ≤ bound` is at most `t` in size.
fn coordinate_bound(n: usize, bound: Rational) -> i64 {
    if bound < Rational::zero() {
        return -1;
    }
    let target = bound * (n as i64 + 1);
    let mut t = 0i64;
    while Rational::from_integer((t + 1) * (t + 1)) <= target {
        t += 1;
    }
    t
}

/// All dominant `a`-vectors (ε-coordinates of dominant weights) with
/// `f(a) ≤ bound`.
pub fn dominant_weights_below(n: usize, bound: Rational) -> Vec<FiniteWeight> {
    let top = coordinate_bound(n, bound);
    let mut out = Vec::new();
    if top < 0 {
        return out;
    }
    decreasing_vectors(n, top, &mut |a| {
        if quadratic_f_int(a) <= bound {
            out.push(from_eps_coords(a).expect("rank is positive"));
        }
    });
    out
}

/// A member of `Γ_ξ` with its pair `φ(μ)` and norm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaMember {
    pub mu: FiniteWeight,
    pub pair: OrbitPair,
    pub norm: Rational,
}

/// Every `μ ∈ Γ_ξ` with `(μ,μ) ≤ bound`, sorted by norm and then by the
/// ε-coordinates.
pub fn enumerate_gamma(xi: &AffineWeight, bound: Rational) -> Result<Vec<GammaMember>> {
    check_orbit_base(xi)?;
    let mut out = Vec::new();
    for mu in dominant_weights_below(xi.rank(), bound) {
        if gamma_contains(xi, &mu)? {
            let pair = OrbitPair::from_weight(xi.level, &mu)?;
            let norm = bilinear(&mu, &mu)?;
            out.push(GammaMember { mu, pair, norm });
        }
    }
    out.sort_by(|x, y| x.norm.cmp(&y.norm).then_with(|| x.pair.a().cmp(&y.pair.a())));
    Ok(out)
}

/// `𝒮_{j,k} = {s ∈ [1, n+1] : s ≡ ±|j-k|}`.
pub fn s_set(n: usize, j: usize, k: usize) -> Vec<usize> {
    let d = j.abs_diff(k) as i64;
    (1..=n + 1)
        .filter(|&s| congruent(s as i64, d, n) || congruent(s as i64, -d, n))
        .collect()
}

/// The admissible residues `p_{j,k}(s)`: `p + 1 ≡ max{j,k}` when
/// `s ≡ |j-k|` and `p + 1 ≡ min{j,k}` when `s ≡ -|j-k|`. When both
/// congruences hold with `j ≠ k` both residues are returned, matching the
/// socle condition `{p+1, p+1-s} ≡ {j, k}`.
pub fn p_jk(n: usize, j: usize, k: usize, s: usize) -> Vec<usize> {
    let d = j.abs_diff(k) as i64;
    let mut out = Vec::new();
    if congruent(s as i64, d, n) {
        out.push(residue(j.max(k) as i64 - 1, n));
    }
    if congruent(s as i64, -d, n) {
        out.push(residue(j.min(k) as i64 - 1, n));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// A member of `Γ_{j,k}` with the index `s` of its orbit `𝒪(s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub s: usize,
    pub pair: OrbitPair,
}

impl FamilyMember {
    pub fn a(&self) -> Vec<i64> {
        self.pair.a()
    }
}

/// `Γ_{j,k}` restricted to `f(a(m,p)) ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelTwoFamily {
    pub n: usize,
    pub j: usize,
    pub k: usize,
    pub bound: Rational,
    pub members: Vec<FamilyMember>,
}

/// Materialises `Γ_{j,k}` up to the norm bound, sorted by `(s, p)`.
///
/// Pairs `(m, p)` at level 2 range over dominant `a = 2p + m`; a pair lies
/// in the family when `m` is a rearrangement of `(2^{s-1}, 1^{n+1-s})` for
/// some `s ∈ 𝒮_{j,k}` and `res(p)` is one of the residues `p_{j,k}(s)`.
pub fn level_two_family(n: usize, j: usize, k: usize, bound: Rational) -> Result<LevelTwoFamily> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    for idx in [j, k] {
        if idx > n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
    }
    let allowed: Vec<(usize, Vec<usize>)> =
        s_set(n, j, k).into_iter().map(|s| (s, p_jk(n, j, k, s))).collect();
    let top = coordinate_bound(n, bound);
    let mut members = Vec::new();
    if top >= 0 {
        decreasing_vectors(n, top, &mut |a| {
            if quadratic_f_int(a) > bound {
                return;
            }
            let pair = OrbitPair::from_a(2, a);
            let s = pair.m.iter().filter(|&&x| x == 2).count() + 1;
            if allowed.iter().any(|(s0, res)| *s0 == s && res.contains(&pair.res())) {
                members.push(FamilyMember { s, pair });
            }
        });
    }
    members.sort_by(|x, y| (x.s, &x.pair.p, &x.pair.m).cmp(&(y.s, &y.pair.p, &y.pair.m)));
    Ok(LevelTwoFamily { n, j, k, bound, members })
}

/// `b_r = p_r - p_{r+1} + (m_r - m_{r+1} - |m_r - m_{r+1}|)/2` with
/// `p_{n+1} = -1`, `m_{n+1} = 2`.
pub fn b_vector(pair: &OrbitPair) -> Result<Vec<i64>> {
    if pair.level != 2 {
        return Err(Error::Precondition(format!("b-vector needs level 2, got {}", pair.level)));
    }
    if !pair.is_dominant() {
        return Err(Error::Precondition("pair does not come from a dominant weight".into()));
    }
    let n = pair.rank();
    Ok((0..n)
        .map(|r| {
            let (pn, mn) = if r + 1 < n { (pair.p[r + 1], pair.m[r + 1]) } else { (-1, 2) };
            let dm = pair.m[r] - mn;
            pair.p[r] - pn + (dm - dm.abs()) / 2
        })
        .collect())
}

/// `w_k Λ = ℓΛ_0 + (λ + kℓθ) + (s - k(kℓ + |λ|))δ` for
/// `Λ = ℓΛ_0 + λ + sδ` and `w_k = (s_0 s_{n-1,1})^k`.
pub fn cofinal_weight(lam: &AffineWeight, k: u32) -> Result<AffineWeight> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.to_string()));
    }
    let n = lam.rank();
    let (l, k) = (lam.level, k as i64);
    let finite = lam.finite.add(&FiniteWeight::theta(n).scale(k * l))?;
    let height = lam.finite.height_of_coords();
    Ok(AffineWeight::new(finite, l, lam.degree - k * (k * l + height)))
}

/// `s_{i,j} = (s_1 s_2 ⋯ s_i)(s_n ⋯ s_{j+1} s_j)` as a word.
pub fn s_ij_word(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (1..=i).collect();
    w.extend((j..=n).rev());
    w
}

/// The word `s_0 s_{n-1,1}` repeated `k` times.
pub fn cofinal_word(n: usize, k: usize) -> Vec<usize> {
    let mut block = vec![0];
    block.extend(s_ij_word(n, n - 1, 1));
    block.repeat(k)
}

/// Number of inversions of a permutation of `0..=n` in one-line notation.
pub fn inversions(perm: &[usize]) -> usize {
    (0..perm.len())
        .map(|a| (a + 1..perm.len()).filter(|&b| perm[a] > perm[b]).count())
        .sum()
}

/// A reduced word for the permutation, with `s_i` swapping positions `i`
/// and `i + 1` (1-based).
pub fn reduced_word(perm: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..perm.len()).collect::<Vec<_>>() {
        return Err(Error::Precondition(format!("{perm:?} is not a permutation of 0..{}", perm.len())));
    }
    let mut cur = perm.to_vec();
    let mut swaps = Vec::new();
    // bubble sort: perm · s_{a_1} ⋯ s_{a_m} = e, so perm = s_{a_m} ⋯ s_{a_1}
    while let Some(t) = (0..cur.len().saturating_sub(1)).find(|&t| cur[t] > cur[t + 1]) {
        cur.swap(t, t + 1);
        swaps.push(t + 1);
    }
    swaps.reverse();
    Ok(swaps)
}

/// `σ(w, i, j) = w s_0 s_{i_1,j_1} s_0 s_{i_2,j_2} ⋯ s_0 s_{i_l,j_l}` as a
/// word.
pub fn sigma_word(perm: &[usize], i: &[usize], j: &[usize]) -> Result<Vec<usize>> {
    let n = perm.len().checked_sub(1).filter(|&n| n > 0).ok_or(Error::ZeroRank)?;
    check_pair_ranges(n, i, j)?;
    let mut word = reduced_word(perm)?;
    for (&ix, &jx) in i.iter().zip(j) {
        word.push(0);
        word.extend(s_ij_word(n, ix, jx));
    }
    Ok(word)
}

fn check_pair_ranges(n: usize, i: &[usize], j: &[usize]) -> Result<()> {
    if i.len() != j.len() {
        return Err(Error::RankMismatch { expected: i.len(), got: j.len() });
    }
    for (pos, (&ix, &jx)) in i.iter().zip(j).enumerate() {
        if ix >= n || jx == 0 || jx > n + 1 {
            return Err(Error::Precondition(format!(
                "entry {} = ({ix},{jx}) needs 0 <= i < {n} and 1 <= j <= {}",
                pos + 1,
                n + 1
            )));
        }
    }
    Ok(())
}

/// Checks the four reducedness conditions on `(i, j)`, reporting the
/// first violated condition and its 1-based position:
///
/// 1. for `s < l`, either `(i_s, j_s) = (0, 1)` or `i_s ≠ 0` and `j_s ≠ n+1`;
/// 2. `i` is non-increasing and `j` is non-decreasing;
/// 3. for `s < l`, `i_s < j_s - 1` implies `i_s > i_{s+1}`;
/// 4. for `s > 1`, `i_s < j_s - 1` implies `j_{s-1} < j_s`.
pub fn check_reduced(n: usize, i: &[usize], j: &[usize]) -> Result<()> {
    check_pair_ranges(n, i, j)?;
    let l = i.len();
    let fail = |condition: u8, s: usize| Err(Error::NotReduced { condition, position: s + 1 });
    for s in 0..l {
        if s + 1 < l && !((i[s], j[s]) == (0, 1) || (i[s] != 0 && j[s] != n + 1)) {
            return fail(1, s);
        }
    }
    for s in 1..l {
        if i[s] > i[s - 1] || j[s] < j[s - 1] {
            return fail(2, s);
        }
    }
    for s in 0..l {
        let gap = i[s] + 1 < j[s];
        if s + 1 < l && gap && i[s] <= i[s + 1] {
            return fail(3, s);
        }
        if s > 0 && gap && j[s - 1] >= j[s] {
            return fail(4, s);
        }
    }
    Ok(())
}

/// `ℓ(σ(w,i,j)) = ℓ(w) + l + Σ (i_k + n + 1 - j_k)` for a reduced pair.
pub fn reduced_pair_length(perm: &[usize], i: &[usize], j: &[usize]) -> Result<usize> {
    let n = perm.len().checked_sub(1).filter(|&n| n > 0).ok_or(Error::ZeroRank)?;
    reduced_word(perm)?;
    check_reduced(n, i, j)?;
    let tail: usize = i.iter().zip(j).map(|(&a, &b)| a + n + 1 - b).sum();
    Ok(inversions(perm) + i.len() + tail)
}

/// Length of an affine Weyl group element given by any word, read off by
/// descending `wρ̂` back to `ρ̂ = Λ_0 + ⋯ + Λ_n`.
pub fn word_length(n: usize, word: &[usize]) -> Result<usize> {
    let rho = AffineWeight::from_cvals(&vec![1; n + 1], Rational::zero())?;
    let image = apply_word(word, &rho)?;
    Ok(socle_descent(&image)?.1)
}

/// `(λ,λ)` of an affine weight; a convenience for invariance checks.
pub fn affine_norm(l: &AffineWeight) -> Result<Rational> {
    affine_bilinear(l, l)
}
