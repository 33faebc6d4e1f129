//! Cartan data of types `A_n` and `A_n^(1)`: weights, the normalized
//! invariant form, ε-coordinates and the quadratic form `f`.
//!
//! Finite weights are stored by their values `λ(h_1), …, λ(h_n)`. An affine
//! weight is `λ̄ + λ(c)Λ_0 + λ(d)δ`, with `λ(h_0) = λ(c) - |λ̄|`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::{Error, Rational, Result};

/// A weight of `A_n` in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FiniteWeight {
    coords: Vec<i64>,
}

impl FiniteWeight {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroRank);
        }
        Ok(Self { coords })
    }

    pub fn zero(n: usize) -> Self {
        Self { coords: vec![0; n] }
    }

    /// `ω_i`; `ω_0 = 0`.
    pub fn fundamental(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut w = Self::zero(n);
        if i > 0 {
            w.coords[i - 1] = 1;
        }
        Ok(w)
    }

    /// `α_i` for `i ∈ I`, the `i`-th column of the Cartan matrix.
    pub fn simple_root(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut w = Self::zero(n);
        w.coords[i - 1] = 2;
        if i > 1 {
            w.coords[i - 2] = -1;
        }
        if i < n {
            w.coords[i] = -1;
        }
        Ok(w)
    }

    /// The highest root `θ = ω_1 + ω_n`.
    pub fn theta(n: usize) -> Self {
        let mut w = Self::zero(n);
        w.coords[0] += 1;
        w.coords[n - 1] += 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// `λ(h_i)` for `i ∈ I` (1-based).
    pub fn at(&self, i: usize) -> i64 {
        self.coords[i - 1]
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&x| x >= 0)
    }

    /// `|λ| = Σ λ(h_i) = λ(h_θ)`.
    pub fn height_of_coords(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// `-w_0 λ`: the coordinates reversed.
    pub fn neg_w0(&self) -> Self {
        Self { coords: self.coords.iter().rev().copied().collect() }
    }

    /// `w_0 λ`.
    pub fn w0(&self) -> Self {
        self.neg_w0().scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { coords: self.coords.iter().map(|&x| k * x).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_rank(self.rank(), other.rank())?;
        Ok(Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    /// Coefficients of `λ` in the simple roots, `C^{-1} λ`.
    pub fn root_coefficients(&self) -> Vec<Rational> {
        let inv = inverse_cartan(self.rank());
        inv.iter()
            .map(|row| row.iter().zip(&self.coords).map(|(c, &x)| c * x).sum())
            .collect()
    }

    /// Integer simple-root coefficients when `λ ∈ Q`.
    pub fn root_coefficients_integral(&self) -> Option<Vec<i64>> {
        self.root_coefficients()
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_in_root_lattice(&self) -> bool {
        self.root_coefficients_integral().is_some()
    }
}

impl fmt::Display for FiniteWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, i64)> = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &c)| (format!("ω{}", i + 1), c))
            .collect();
        write_linear(f, &terms, None)
    }
}

fn write_linear(f: &mut fmt::Formatter<'_>, terms: &[(String, i64)], tail: Option<Rational>) -> fmt::Result {
    let mut first = true;
    let mut put = |f: &mut fmt::Formatter<'_>, neg: bool, body: String| -> fmt::Result {
        match (first, neg) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
        Ok(())
    };
    for (name, c) in terms {
        if *c == 0 {
            continue;
        }
        let abs = c.abs();
        let body = if abs == 1 { name.clone() } else { format!("{abs}{name}") };
        put(f, *c < 0, body)?;
    }
    if let Some(d) = tail {
        if !d.is_zero() {
            let abs = if d < Rational::zero() { -d } else { d };
            let body = if abs.is_one() {
                "δ".to_string()
            } else if abs.is_integer() {
                format!("{abs}δ")
            } else {
                format!("({abs})δ")
            };
            put(f, d < Rational::zero(), body)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn same_rank(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::RankMismatch { expected, got });
    }
    Ok(())
}

/// The Cartan matrix of `A_n`.
pub fn cartan_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// `(C^{-1})_{ij} = min(i,j) (n+1-max(i,j)) / (n+1)`, 1-based.
pub fn inverse_cartan(n: usize) -> Vec<Vec<Rational>> {
    let np1 = n as i64 + 1;
    (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| Rational::new(i.min(j) * (np1 - i.max(j)), np1))
                .collect()
        })
        .collect()
}

/// The normalized invariant form `x^T C^{-1} y`, with `(α, α) = 2`.
pub fn bilinear(l: &FiniteWeight, m: &FiniteWeight) -> Result<Rational> {
    same_rank(l.rank(), m.rank())?;
    let inv = inverse_cartan(l.rank());
    let mut total = Rational::zero();
    for (i, &x) in l.coords.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in m.coords.iter().enumerate() {
            total += inv[i][j] * (x * y);
        }
    }
    Ok(total)
}

/// The same form computed from ε-coordinates with the Gram matrix
/// `(ε_i, ε_j) = n/(n+1)` on the diagonal and `-1/(n+1)` off it.
pub fn bilinear_eps(l: &FiniteWeight, m: &FiniteWeight) -> Result<Rational> {
    same_rank(l.rank(), m.rank())?;
    let n = l.rank() as i64;
    let (a, b) = (eps_coords(l), eps_coords(m));
    let mut total = 0i64;
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            total += x * y * if i == j { n } else { -1 };
        }
    }
    Ok(Rational::new(total, n + 1))
}

/// `f(a) = (n Σ a_i² - 2 Σ_{i<j} a_i a_j) / (n+1)` with `n = a.len()`.
pub fn quadratic_f(a: &[Rational]) -> Rational {
    let n = a.len() as i64;
    let sq: Rational = a.iter().map(|x| x * x).sum();
    let total: Rational = a.iter().sum();
    // 2 Σ_{i<j} a_i a_j = (Σa)² - Σa²
    (sq * n - (total * total - sq)) / (n + 1)
}

/// [`quadratic_f`] on an integer vector.
pub fn quadratic_f_int(a: &[i64]) -> Rational {
    let n = a.len() as i64;
    let sq: i64 = a.iter().map(|x| x * x).sum();
    let total: i64 = a.iter().sum();
    Rational::new(n * sq - (total * total - sq), n + 1)
}

/// ε-coordinates `a_i = Σ_{j=1}^{n+1-i} μ(h_j)`.
pub fn eps_coords(mu: &FiniteWeight) -> Vec<i64> {
    let n = mu.rank();
    (1..=n).map(|i| mu.coords[..n + 1 - i].iter().sum()).collect()
}

/// Inverse of [`eps_coords`]: `μ(h_{n+1-i}) = a_i - a_{i+1}` with
/// `a_{n+1} = 0`.
pub fn from_eps_coords(a: &[i64]) -> Result<FiniteWeight> {
    let n = a.len();
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let mut coords = vec![0; n];
    for i in 1..=n {
        let next = if i < n { a[i] } else { 0 };
        coords[n - i] = a[i - 1] - next;
    }
    FiniteWeight::new(coords)
}

/// ε-coordinates of `ϖ_i`: `i` ones followed by zeros.
pub fn varpi(n: usize, i: usize) -> Result<Vec<i64>> {
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok((0..n).map(|k| (k < i) as i64).collect())
}

/// Whether `Σ b_i ε_i` lies in the root lattice: `Σ b_i ≡ 0 (mod n+1)`.
pub fn in_root_lattice(b: &[i64]) -> bool {
    let n = b.len() as i64;
    b.iter().sum::<i64>().rem_euclid(n + 1) == 0
}

/// An affine weight `λ̄ + level·Λ_0 + degree·δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineWeight {
    pub finite: FiniteWeight,
    pub level: i64,
    pub degree: Rational,
}

impl AffineWeight {
    pub fn new(finite: FiniteWeight, level: i64, degree: Rational) -> Self {
        Self { finite, level, degree }
    }

    /// From the values `λ(h_0), …, λ(h_n)` and `λ(d)`.
    pub fn from_cvals(cvals: &[i64], degree: Rational) -> Result<Self> {
        if cvals.len() < 2 {
            return Err(Error::ZeroRank);
        }
        let finite = FiniteWeight::new(cvals[1..].to_vec())?;
        Ok(Self { finite, level: cvals.iter().sum(), degree })
    }

    /// `Λ_i = ω_i + Λ_0`.
    pub fn fundamental(n: usize, i: usize) -> Result<Self> {
        Ok(Self::new(FiniteWeight::fundamental(n, i)?, 1, Rational::zero()))
    }

    pub fn delta(n: usize) -> Self {
        Self::new(FiniteWeight::zero(n), 0, Rational::one())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(FiniteWeight::zero(n), 0, Rational::zero())
    }

    /// `α_i`; `α_0 = δ - θ`.
    pub fn simple_root(n: usize, i: usize) -> Result<Self> {
        if i == 0 {
            Ok(Self::new(FiniteWeight::theta(n).scale(-1), 0, Rational::one()))
        } else {
            Ok(Self::new(FiniteWeight::simple_root(n, i)?, 0, Rational::zero()))
        }
    }

    pub fn rank(&self) -> usize {
        self.finite.rank()
    }

    /// `λ(h_i)` for `i ∈ Î`.
    pub fn at(&self, i: usize) -> i64 {
        if i == 0 {
            self.level - self.finite.height_of_coords()
        } else {
            self.finite.at(i)
        }
    }

    /// `(λ(h_0), …, λ(h_n))`.
    pub fn cvals(&self) -> Vec<i64> {
        (0..=self.rank()).map(|i| self.at(i)).collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.finite.is_dominant() && self.at(0) >= 0
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(
            self.finite.add(&other.finite)?,
            self.level + other.level,
            self.degree + other.degree,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.finite.scale(k), k * self.level, self.degree * k)
    }

    /// `λ + r δ`.
    pub fn shift_degree(&self, r: Rational) -> Self {
        Self::new(self.finite.clone(), self.level, self.degree + r)
    }

    /// Equality modulo `Cδ`: same finite part and level.
    pub fn congruent_mod_delta(&self, other: &Self) -> bool {
        self.finite == other.finite && self.level == other.level
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, i64)> = self
            .cvals()
            .into_iter()
            .enumerate()
            .map(|(i, c)| (format!("Λ{i}"), c))
            .collect();
        write_linear(f, &terms, Some(self.degree))
    }
}

/// `(λ, μ) = (λ̄, μ̄) + λ(c) μ(d) + λ(d) μ(c)`.
pub fn affine_bilinear(l: &AffineWeight, m: &AffineWeight) -> Result<Rational> {
    Ok(bilinear(&l.finite, &m.finite)? + m.degree * l.level + l.degree * m.level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn fw(v: &[i64]) -> FiniteWeight {
        FiniteWeight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn simple_roots_have_norm_two() {
        for n in 1..=6 {
            for i in 1..=n {
                let a = FiniteWeight::simple_root(n, i).unwrap();
                assert_eq!(bilinear(&a, &a).unwrap(), rat(2, 1));
                for j in 1..=n {
                    let w = FiniteWeight::fundamental(n, j).unwrap();
                    assert_eq!(bilinear(&w, &a).unwrap(), rat((i == j) as i64, 1));
                }
            }
            let t = FiniteWeight::theta(n);
            assert_eq!(bilinear(&t, &t).unwrap(), rat(2, 1));
        }
    }

    #[test]
    fn fundamental_norms() {
        let w1 = FiniteWeight::fundamental(2, 1).unwrap();
        assert_eq!(bilinear(&w1, &w1).unwrap(), rat(2, 3));
        assert!(bilinear(&w1, &fw(&[1])).is_err());
    }

    #[test]
    fn cartan_inverse() {
        assert_eq!(cartan_matrix(1), vec![vec![2]]);
        assert_eq!(inverse_cartan(1), vec![vec![rat(1, 2)]]);
        assert_eq!(
            inverse_cartan(2),
            vec![vec![rat(2, 3), rat(1, 3)], vec![rat(1, 3), rat(2, 3)]]
        );
        assert_eq!(inverse_cartan(3)[0][0], rat(3, 4));
        for n in 1..=7 {
            let (c, inv) = (cartan_matrix(n), inverse_cartan(n));
            for (i, row) in c.iter().enumerate() {
                for j in 0..n {
                    let e: Rational = row.iter().zip(&inv).map(|(x, r)| r[j] * x).sum();
                    assert_eq!(e, rat((i == j) as i64, 1));
                }
            }
        }
    }

    #[test]
    fn affine_form_examples() {
        let l0 = AffineWeight::fundamental(1, 0).unwrap();
        let d = AffineWeight::delta(1);
        assert_eq!(affine_bilinear(&l0, &l0).unwrap(), rat(0, 1));
        assert_eq!(affine_bilinear(&d, &d).unwrap(), rat(0, 1));
        assert_eq!(affine_bilinear(&l0, &d).unwrap(), rat(1, 1));
        let l = AffineWeight::new(fw(&[1]), 1, rat(-1, 1));
        assert_eq!(affine_bilinear(&l, &l).unwrap(), rat(-3, 2));
        for n in 1..=4 {
            for i in 0..=n {
                let a = AffineWeight::simple_root(n, i).unwrap();
                assert_eq!(affine_bilinear(&a, &a).unwrap(), rat(2, 1));
                assert_eq!(a.level, 0);
            }
        }
    }

    #[test]
    fn quadratic_f_examples() {
        assert_eq!(quadratic_f(&[rat(2, 1), rat(2, 1)]), rat(8, 3));
        assert_eq!(quadratic_f_int(&[2, 2]), rat(8, 3));
        assert_eq!(quadratic_f_int(&[0, 0, 0]), rat(0, 1));
        for n in 1..=6 {
            for i in 0..=n {
                let v = varpi(n, i).unwrap();
                assert_eq!(quadratic_f_int(&v), rat((i * (n + 1 - i)) as i64, n as i64 + 1));
            }
        }
    }

    #[test]
    fn eps_examples() {
        assert_eq!(eps_coords(&fw(&[0, 0])), vec![0, 0]);
        assert_eq!(eps_coords(&fw(&[2, 0])), vec![2, 2]);
        // ω_i has ε-coordinates ϖ_{n+1-i}
        for n in 1..=5 {
            for i in 1..=n {
                let w = FiniteWeight::fundamental(n, i).unwrap();
                assert_eq!(eps_coords(&w), varpi(n, n + 1 - i).unwrap());
            }
        }
    }

    #[test]
    fn root_lattice_examples() {
        assert!(!in_root_lattice(&[1, 1, 1]));
        assert!(in_root_lattice(&[0, 0, 0, 0]));
        assert!(in_root_lattice(&[2, 1]));
        assert!(FiniteWeight::theta(3).is_in_root_lattice());
        assert!(!FiniteWeight::fundamental(3, 1).unwrap().is_in_root_lattice());
        // the two lattice tests agree
        for x in -3..=3 {
            for y in -3..=3 {
                let mu = fw(&[x, y]);
                assert_eq!(mu.is_in_root_lattice(), in_root_lattice(&eps_coords(&mu)));
            }
        }
    }

    #[test]
    fn cvals_round_trip() {
        let xi = AffineWeight::from_cvals(&[0, 0, 2], rat(-6, 1)).unwrap();
        assert_eq!(xi.level, 2);
        assert_eq!(xi.cvals(), vec![0, 0, 2]);
        assert_eq!(xi.to_string(), "2Λ2 - 6δ");
        assert_eq!(AffineWeight::zero(2).to_string(), "0");
        assert_eq!(
            AffineWeight::new(fw(&[1]), 1, rat(-1, 2)).to_string(),
            "Λ1 - (1/2)δ"
        );
        assert_eq!(fw(&[2, -1]).to_string(), "2ω1 - ω2");
    }

    #[test]
    fn neg_w0_is_an_involution_preserving_dominance() {
        let mu = fw(&[3, 0, 1]);
        assert_eq!(mu.neg_w0(), fw(&[1, 0, 3]));
        assert_eq!(mu.neg_w0().neg_w0(), mu);
        assert!(mu.neg_w0().is_dominant());
        assert_eq!(bilinear(&mu.w0(), &mu.w0()).unwrap(), bilinear(&mu, &mu).unwrap());
    }

    fn weight(max_n: usize, bound: i64) -> impl Strategy<Value = FiniteWeight> {
        (1..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec(-bound..=bound, n).prop_map(|v| FiniteWeight::new(v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn f_is_positive_definite(v in (1usize..=6).prop_flat_map(|n| proptest::collection::vec(-10i64..=10, n))) {
            let f = quadratic_f_int(&v);
            if v.iter().all(|&x| x == 0) {
                prop_assert_eq!(f, rat(0, 1));
            } else {
                prop_assert!(f > rat(0, 1));
            }
        }

        #[test]
        fn norm_equals_f_of_eps(mu in weight(4, 5)) {
            let a = eps_coords(&mu);
            prop_assert_eq!(bilinear(&mu, &mu).unwrap(), quadratic_f_int(&a));
            prop_assert_eq!(from_eps_coords(&a).unwrap(), mu.clone());
        }

        #[test]
        fn two_routes_to_the_form_agree(pair in (1usize..=5).prop_flat_map(|n| (
            proptest::collection::vec(-5i64..=5, n),
            proptest::collection::vec(-5i64..=5, n),
        ))) {
            let (l, m) = (fw(&pair.0), fw(&pair.1));
            prop_assert_eq!(bilinear(&l, &m).unwrap(), bilinear_eps(&l, &m).unwrap());
        }

        #[test]
        fn affine_norm_decomposes(mu in weight(4, 5), level in -4i64..=4, num in -9i64..=9, den in 1i64..=4) {
            let l = AffineWeight::new(mu.clone(), level, rat(num, den));
            prop_assert_eq!(
                affine_bilinear(&l, &l).unwrap(),
                bilinear(&mu, &mu).unwrap() + rat(num, den) * (2 * level)
            );
        }
    }
}
