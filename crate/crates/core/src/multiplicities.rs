//! Outer multiplicities of `V(ξ)` in `V(Λ_0) ⊗ V(Λ_i)` and
//! `V(Λ_i) ⊗ V(Λ_j)`, level one to level two Demazure flag multiplicities,
//! and the stabilizing limit they converge to.
//!
//! The counting formulas take the form `Σ ρ_b(f)` over an orbit set, with
//! `ρ` vanishing on negative or fractional arguments.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::affine_cartan::{bilinear, quadratic_f_int, varpi, AffineWeight, FiniteWeight};
use crate::laurent::LaurentPoly;
use crate::partitions::{natural, q_binomial_product, rho_multi};
use crate::tableaux::{jk_from_eta, ContentCharacter};
use crate::weyl_orbits::{
    b_vector, enumerate_gamma, level_two_family, r_of, FamilyMember, GammaMember, OrbitPair,
};
use crate::{Error, Rational, Result};

/// The label `D(ℓ, λ, r) = D(ℓΛ_0 + w_0 λ + rδ)` of a Demazure module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DemazureLabel {
    pub level: i64,
    pub lambda: FiniteWeight,
    pub r: Rational,
}

impl DemazureLabel {
    /// The extremal weight `ℓΛ_0 + w_0λ + rδ`.
    pub fn weight(&self) -> AffineWeight {
        AffineWeight::new(self.lambda.w0(), self.level, self.r)
    }
}

/// `-w_0 μ = 2μ_0 + μ_1` with `μ_1(h_i) ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuSplit {
    pub mu0: FiniteWeight,
    pub mu1: FiniteWeight,
    /// `(μ_0(h_1), …, μ_0(h_n))`.
    pub bounds: Vec<u32>,
}

fn parity_split(v: &FiniteWeight) -> MuSplit {
    let mu0 = FiniteWeight::new(v.coords().iter().map(|&x| x.div_euclid(2)).collect())
        .expect("rank is positive");
    let mu1 = FiniteWeight::new(v.coords().iter().map(|&x| x.rem_euclid(2)).collect())
        .expect("rank is positive");
    let bounds = mu0.coords().iter().map(|&x| x as u32).collect();
    MuSplit { mu0, mu1, bounds }
}

/// The split of `-w_0 μ` into twice a dominant weight plus a 0/1 weight.
pub fn mu_split(mu: &FiniteWeight) -> Result<MuSplit> {
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    Ok(parity_split(&mu.neg_w0()))
}

/// `a^η` with `η = Σ a^η_i α_i`, i.e. `a^η_i = (η, ω_i)`.
pub fn a_of_eta(eta: &FiniteWeight) -> Result<Vec<i64>> {
    eta.root_coefficients_integral()
        .ok_or_else(|| Error::NotInRootLattice(eta.to_string()))
}

/// A flag polynomial `q^shift · poly(q)`; the shift may be fractional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagPolynomial {
    pub shift: Rational,
    pub poly: LaurentPoly,
}

impl FlagPolynomial {
    /// Coefficient of `q^r`.
    pub fn coefficient(&self, r: Rational) -> i64 {
        let e = r - self.shift;
        if e.is_integer() {
            self.poly.coefficient(e.to_integer())
        } else {
            0
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl std::fmt::Display for FlagPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        if self.shift.is_zero() {
            write!(f, "{}", self.poly)
        } else {
            write!(f, "q^({}) * ({})", self.shift, self.poly)
        }
    }
}

struct FlagData {
    a: Vec<i64>,
    split: MuSplit,
    shift: Rational,
}

/// Data shared by the polynomial and the coefficient forms. The flag
/// formulas split `μ` itself, `μ = 2μ_0 + μ_1`: this is the split under
/// which their exponents telescope into the limit of the cofinal sequence.
fn flag_data(lambda: &FiniteWeight, mu: &FiniteWeight) -> Result<Option<FlagData>> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let diff = lambda.sub(mu)?;
    let Some(a) = diff.root_coefficients_integral() else {
        return Ok(None);
    };
    if a.iter().any(|&x| x < 0) {
        return Ok(None);
    }
    let split = parity_split(mu);
    let shift = bilinear(&lambda.add(&split.mu1)?, &diff)? / 2;
    Ok(Some(FlagData { a, split, shift }))
}

/// `[D(1,λ) : D(2,μ)](q) = q^{½(λ+μ_1, λ-μ)} Π_j [a_j + μ_0(h_j) choose a_j]_q`
/// with `a = a^{λ-μ}`; zero unless `λ - μ ∈ Q⁺`.
pub fn flag_multiplicity_poly(lambda: &FiniteWeight, mu: &FiniteWeight) -> Result<FlagPolynomial> {
    let Some(data) = flag_data(lambda, mu)? else {
        return Ok(FlagPolynomial { shift: Rational::zero(), poly: LaurentPoly::zero() });
    };
    let tops: Vec<u32> = data.a.iter().zip(&data.split.bounds).map(|(&a, &b)| a as u32 + b).collect();
    let bottoms: Vec<u32> = data.a.iter().map(|&a| a as u32).collect();
    let poly = q_binomial_product(&tops, &bottoms)?;
    Ok(FlagPolynomial { shift: data.shift, poly })
}

/// `[D(1,λ) : D(2,μ,r)] = ρ^{a^{λ-μ}}_{μ_0}(r - ½(λ+μ_1, λ-μ))`.
pub fn flag_multiplicity_at(lambda: &FiniteWeight, mu: &FiniteWeight, r: Rational) -> Result<u64> {
    let Some(data) = flag_data(lambda, mu)? else {
        return Ok(0);
    };
    let caps: Vec<u32> = data.a.iter().map(|&a| a as u32).collect();
    rho_multi(r - data.shift, &data.split.bounds, Some(&caps))
}

/// `ξ = Λ_0 + Λ_i - Σ η_l α_l`.
pub fn xi_from_eta(i: usize, eta: &ContentCharacter) -> Result<AffineWeight> {
    let n = eta.rank();
    let mut xi = AffineWeight::fundamental(n, 0)?.add(&AffineWeight::fundamental(n, i)?)?;
    for (l, &e) in eta.eta().iter().enumerate() {
        xi = xi.sub(&AffineWeight::simple_root(n, l)?.scale(e as i64))?;
    }
    Ok(xi)
}

/// The α-coefficients `(η_0, …, η_n)` of `Λ_a + Λ_b - ξ`.
pub fn alpha_coefficients_below(a: usize, b: usize, xi: &AffineWeight) -> Result<Vec<i64>> {
    let n = xi.rank();
    let top = AffineWeight::fundamental(n, a)?.add(&AffineWeight::fundamental(n, b)?)?;
    let diff = top.sub(xi)?;
    if diff.level != 0 {
        return Err(Error::Precondition(format!("{xi} does not have level 2")));
    }
    if !diff.degree.is_integer() {
        return Err(Error::NotInRootLattice(diff.to_string()));
    }
    // α_0 = δ - θ carries all of the δ-part
    let eta0 = diff.degree.to_integer();
    let rest = diff.finite.add(&FiniteWeight::theta(n).scale(eta0))?;
    let tail = rest
        .root_coefficients_integral()
        .ok_or_else(|| Error::NotInRootLattice(diff.to_string()))?;
    let mut out = vec![eta0];
    out.extend(tail);
    Ok(out)
}

/// Inverse of [`xi_from_eta`]; requires `ξ ≤ Λ_0 + Λ_i`.
pub fn eta_from_xi(i: usize, xi: &AffineWeight) -> Result<ContentCharacter> {
    let coeffs = alpha_coefficients_below(0, i, xi)?;
    if coeffs.iter().any(|&c| c < 0) {
        return Err(Error::Precondition(format!("{xi} is not below Λ0 + Λ{i}")));
    }
    ContentCharacter::new(coeffs.into_iter().map(|c| c as u32).collect())
}

fn check_level_two(n: usize, i: usize, xi: &AffineWeight) -> Result<()> {
    if xi.rank() != n {
        return Err(Error::RankMismatch { expected: n, got: xi.rank() });
    }
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if xi.level != 2 {
        return Err(Error::Precondition(format!("{xi} has level {}, expected 2", xi.level)));
    }
    if !xi.is_dominant() {
        return Err(Error::NotDominant(xi.to_string()));
    }
    Ok(())
}

/// `2(ω_i,ω_i) - (ξ̄,ξ̄) - 4ξ(d)`: the ball containing every contributing
/// `μ`.
pub fn ball_bound(i: usize, xi: &AffineWeight) -> Result<Rational> {
    let w = FiniteWeight::fundamental(xi.rank(), i)?;
    Ok(bilinear(&w, &w)? * 2 - bilinear(&xi.finite, &xi.finite)? - xi.degree * 4)
}

/// `f_{i,ξ}(μ) = ¼(2(ω_i,ω_i) - (ξ̄,ξ̄) - 4ξ(d) - (μ,μ))`.
pub fn f_i_xi(i: usize, xi: &AffineWeight, mu: &FiniteWeight) -> Result<Rational> {
    Ok((ball_bound(i, xi)? - bilinear(mu, mu)?) / 4)
}

/// One summand `ρ_{μ_0}(f_{i,ξ}(μ))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaTerm {
    pub mu: FiniteWeight,
    pub pair: OrbitPair,
    pub bounds: Vec<u32>,
    pub argument: Rational,
    pub value: u64,
}

/// The summands of `Σ_{μ∈Γ_ξ} ρ_{μ_0}(f_{i,ξ}(μ))` over the ball, each with
/// its pair `φ(μ)`; terms with value zero are kept.
pub fn outer_multiplicity_terms(n: usize, i: usize, xi: &AffineWeight) -> Result<Vec<FormulaTerm>> {
    check_level_two(n, i, xi)?;
    let bound = ball_bound(i, xi)?;
    let mut out = Vec::new();
    for GammaMember { mu, pair, norm } in enumerate_gamma(xi, bound)? {
        let split = mu_split(&mu)?;
        let argument = (bound - norm) / 4;
        let value = rho_multi(argument, &split.bounds, None)?;
        out.push(FormulaTerm { mu, pair, bounds: split.bounds, argument, value });
    }
    Ok(out)
}

/// `[V(Λ_0) ⊗ V(Λ_i) : V(ξ)] = Σ_{μ∈Γ_ξ} ρ_{μ_0}(f_{i,ξ}(μ))`.
pub fn outer_multiplicity_formula(n: usize, i: usize, xi: &AffineWeight) -> Result<u64> {
    Ok(outer_multiplicity_terms(n, i, xi)?.iter().map(|t| t.value).sum())
}

/// One summand `ρ_{b(m,p)}(f_{i,η}(a(m,p)))` over `Γ_{j,k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauTerm {
    pub member: FamilyMember,
    pub bounds: Vec<u32>,
    pub argument: Rational,
    pub value: u64,
}

/// `(j, k)` and the bound `2f(ϖ_i) - f(ϖ_j + ϖ_k) + 4η_0` for `η ∈ ℙ_i⁺`.
pub fn tau_bound(eta: &ContentCharacter, i: usize) -> Result<((usize, usize), Rational)> {
    let (j, k) = jk_from_eta(eta, i)?;
    let n = eta.rank();
    let vi = varpi(n, i)?;
    let vjk: Vec<i64> = varpi(n, j)?.iter().zip(varpi(n, k)?).map(|(x, y)| x + y).collect();
    let bound = quadratic_f_int(&vi) * 2 - quadratic_f_int(&vjk) + eta.eta()[0] as i64 * 4;
    Ok(((j, k), bound))
}

/// The summands of the multipartition count over `Γ_{j,k}`.
pub fn tau_terms(eta: &ContentCharacter, i: usize) -> Result<Vec<TauTerm>> {
    let ((j, k), bound) = tau_bound(eta, i)?;
    let family = level_two_family(eta.rank(), j, k, bound)?;
    let mut out = Vec::new();
    for member in family.members {
        let b = b_vector(&member.pair)?;
        let bounds: Vec<u32> = b.iter().map(|&x| x as u32).collect();
        let argument = (bound - quadratic_f_int(&member.a())) / 4;
        let value = rho_multi(argument, &bounds, None)?;
        out.push(TauTerm { member, bounds, argument, value });
    }
    Ok(out)
}

/// `τ_i^n(η) = Σ_{(m,p)∈Γ_{j,k}} ρ_{b(m,p)}(f_{i,η}(a(m,p)))` where
/// `η' = e_j + e_k`.
pub fn tau_formula(eta: &ContentCharacter, i: usize) -> Result<u64> {
    Ok(tau_terms(eta, i)?.iter().map(|t| t.value).sum())
}

/// The per-`μ` sequence of the cofinal limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitTerm {
    pub mu: FiniteWeight,
    /// `β_k` for `k = 0..=k_max`.
    pub sequence: Vec<u64>,
    /// `max{f + max(a), (f + ⟨a,b⟩)/|b|}` from the stabilization lemma,
    /// where `a = a^{μ-ω_i}`, `b = μ_0`.
    pub threshold: u32,
    /// The threshold, when it lies within `k_max` and the sequence is
    /// constant from there on and changes no more.
    pub stabilized_at: Option<u32>,
}

impl LimitTerm {
    pub fn last(&self) -> u64 {
        *self.sequence.last().expect("sequence has k_max + 1 entries")
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.sequence.windows(2).all(|w| w[0] <= w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitResult {
    /// Sum of the per-`μ` values at `k_max`.
    pub value: u64,
    pub k_max: u32,
    pub terms: Vec<LimitTerm>,
}

impl LimitResult {
    pub fn stabilized(&self) -> bool {
        self.terms.iter().all(|t| t.stabilized_at.is_some())
    }
}

/// The `k` from which `ρ^{k-a}_b(k|b| - ⟨a,b⟩ - f) = ρ_b(f)` is guaranteed.
fn stabilization_threshold(f: Rational, a: &[i64], b: &[u32]) -> u32 {
    let Some(f) = natural(f) else {
        return a.iter().copied().max().unwrap_or(0).max(0) as u32;
    };
    let f = f as i64;
    let amax = a.iter().copied().max().unwrap_or(0);
    let bsum: i64 = b.iter().map(|&x| x as i64).sum();
    let ab: i64 = a.iter().zip(b).map(|(&x, &y)| x * y as i64).sum();
    let mut k = (f + amax).max(amax).max(0);
    if bsum > 0 {
        k = k.max(num_integer::Integer::div_ceil(&(f + ab), &bsum));
    }
    k as u32
}

/// `Σ_{μ∈Γ_ξ} lim_k [D(1, ω_i + kθ) : D(2, μ, r(μ,ξ) + k(|ω_i| + k))]`,
/// evaluated for `k = 0..=k_max`.
pub fn outer_multiplicity_limit(n: usize, i: usize, xi: &AffineWeight, k_max: u32) -> Result<LimitResult> {
    check_level_two(n, i, xi)?;
    let wi = FiniteWeight::fundamental(n, i)?;
    let theta = FiniteWeight::theta(n);
    let height = wi.height_of_coords();
    let bound = ball_bound(i, xi)?;
    let mut terms = Vec::new();
    let mut value = 0;
    for member in enumerate_gamma(xi, bound)? {
        let mu = member.mu;
        let r = r_of(&mu, xi)?;
        let sequence = (0..=k_max as i64)
            .map(|k| {
                let lambda = wi.add(&theta.scale(k))?;
                flag_multiplicity_at(&lambda, &mu, r + k * (height + k))
            })
            .collect::<Result<Vec<u64>>>()?;
        let a = a_of_eta(&mu.sub(&wi)?)?;
        let b = parity_split(&mu).bounds;
        let threshold = stabilization_threshold((bound - member.norm) / 4, &a, &b);
        let stabilized_at = (threshold < k_max
            && sequence[threshold as usize..].windows(2).all(|w| w[0] == w[1]))
        .then_some(threshold);
        value += *sequence.last().expect("non-empty");
        terms.push(LimitTerm { mu, sequence, threshold, stabilized_at });
    }
    Ok(LimitResult { value, k_max, terms })
}

/// A level-`ℓ` Demazure label over a level-`ℓ+1` one.
pub type LabelPair = (DemazureLabel, DemazureLabel);

/// The label pairs `(D(ℓ, λ + ℓkθ), D(ℓ+1, μ, r(μ,ξ) - s + k(|λ| + ℓk)))`
/// whose flag multiplicities converge to each summand, for any level.
pub fn limit_labels(lam: &AffineWeight, xi: &AffineWeight, k_max: u32) -> Result<Vec<(FiniteWeight, Vec<LabelPair>)>> {
    if !lam.is_dominant() || lam.level < 1 {
        return Err(Error::NotDominant(lam.to_string()));
    }
    if xi.level != lam.level + 1 {
        return Err(Error::Precondition(format!(
            "{xi} must have level {}",
            lam.level + 1
        )));
    }
    let (l, s) = (lam.level, lam.degree);
    let height = lam.finite.height_of_coords();
    let theta = FiniteWeight::theta(lam.rank());
    let mut out = Vec::new();
    for GammaMember { mu, .. } in enumerate_gamma(xi, ball_for_labels(lam, xi)?)? {
        let r = r_of(&mu, xi)?;
        let pairs = (0..=k_max as i64)
            .map(|k| {
                let top = DemazureLabel { level: l, lambda: lam.finite.add(&theta.scale(l * k))?, r: Rational::zero() };
                let bottom = DemazureLabel { level: l + 1, lambda: mu.clone(), r: r - s + k * (height + l * k) };
                Ok((top, bottom))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push((mu, pairs));
    }
    Ok(out)
}

/// Norm bound used to list the labels: the members of `Γ_ξ` inside the
/// level-one ball when it applies, otherwise those no longer than `ξ` is
/// away from `Λ + Λ_0`.
fn ball_for_labels(lam: &AffineWeight, xi: &AffineWeight) -> Result<Rational> {
    let top = lam.add(&AffineWeight::fundamental(lam.rank(), 0)?)?;
    let gap = top.degree - xi.degree;
    let base = bilinear(&top.finite, &top.finite)?.max(bilinear(&xi.finite, &xi.finite)?);
    Ok(base + gap * 2 * xi.level)
}

/// `[V(Λ_i) ⊗ V(Λ_j) : V(ξ)]`, reduced to the case `i = 0` by rotating the
/// affine Dynkin diagram by `-i`.
///
/// With `Λ_i + Λ_j - ξ = Σ c_l α_l`, the target is
/// `ξ' - c_i δ` with `ξ' = Σ_{k∈Î} ξ(h_k) Λ_{k-i}` inside
/// `V(Λ_0) ⊗ V(Λ_{j-i})`; for `i = 0` the reduction is the identity.
pub fn general_fundamental(n: usize, i: usize, j: usize, xi: &AffineWeight) -> Result<u64> {
    let (xi_rot, target) = general_reduction(n, i, j, xi)?;
    outer_multiplicity_formula(n, target, &xi_rot)
}

/// The rotated target weight and the index `j - i` of the second factor.
pub fn general_reduction(n: usize, i: usize, j: usize, xi: &AffineWeight) -> Result<(AffineWeight, usize)> {
    for idx in [i, j] {
        if idx > n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
    }
    check_level_two(n, 0, xi)?;
    let c = alpha_coefficients_below(i, j, xi)?;
    if c.iter().any(|&x| x < 0) {
        return Err(Error::Precondition(format!("{xi} is not below Λ{i} + Λ{j}")));
    }
    let np1 = n + 1;
    let mut cvals = vec![0i64; np1];
    for (k, v) in xi.cvals().into_iter().enumerate() {
        cvals[(k + np1 - i) % np1] += v;
    }
    let rotated = AffineWeight::from_cvals(&cvals, Rational::from_integer(-c[i]))?;
    Ok((rotated, (j + np1 - i) % np1))
}

/// `[V(Λ_i) ⊗ V(Λ_j) : V(ξ)]` from the formula, with the multiplicity of
/// each level-2 dominant `ξ` down to the given depth below `Λ_i + Λ_j`.
pub fn general_table(n: usize, i: usize, j: usize, depth: u32) -> Result<Vec<(AffineWeight, u64)>> {
    let top = AffineWeight::fundamental(n, i)?.add(&AffineWeight::fundamental(n, j)?)?;
    let mut out = Vec::new();
    for xi in dominant_below(&top, depth)? {
        let m = general_fundamental(n, i, j, &xi)?;
        if m > 0 {
            out.push((xi, m));
        }
    }
    Ok(out)
}

/// Every dominant `ξ ≤ Λ` of the same level with `Λ(d) - ξ(d) ≤ depth`,
/// ordered by depth and then by labels.
pub fn dominant_below(top: &AffineWeight, depth: u32) -> Result<Vec<AffineWeight>> {
    let n = top.rank();
    let level = top.level;
    let mut out = Vec::new();
    let mut cvals = vec![0i64; n + 1];
    fn compositions(pos: usize, left: i64, cur: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            visit(cur);
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            compositions(pos + 1, left - v, cur, visit);
        }
    }
    let mut candidates = Vec::new();
    compositions(0, level, &mut cvals, &mut |cv| candidates.push(cv.to_vec()));
    for d in 0..=depth as i64 {
        for cv in &candidates {
            let xi = AffineWeight::from_cvals(cv, top.degree - d)?;
            let diff = top.sub(&xi)?;
            let eta0 = diff.degree;
            let rest = diff.finite.add(&FiniteWeight::theta(n).scale(eta0.to_integer()))?;
            if let Some(c) = rest.root_coefficients_integral() {
                if c.iter().all(|&x| x >= 0) {
                    out.push(xi);
                }
            }
        }
    }
    Ok(out)
}

/// `|μ|`-style helper used by the CLI: the value of `r(μ,ξ)` for every
/// member of `Γ_ξ` inside the ball.
pub fn gamma_degrees(i: usize, xi: &AffineWeight) -> Result<Vec<(FiniteWeight, Rational)>> {
    let bound = ball_bound(i, xi)?;
    enumerate_gamma(xi, bound)?
        .into_iter()
        .map(|m| Ok((m.mu.clone(), r_of(&m.mu, xi)?)))
        .collect()
}

/// Converts a non-negative rational that is known to be integral.
pub fn to_u64(r: Rational) -> Option<u64> {
    r.is_integer().then(|| r.to_integer().to_u64()).flatten()
}
