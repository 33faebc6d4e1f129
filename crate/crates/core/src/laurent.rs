//! Sparse Laurent polynomials in one variable `q` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

/// A finitely supported map from integer exponents to non-zero integer
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff · q^exp`
    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds `Σ coeffs[s] q^s` from a dense coefficient list starting at `q^0`.
    pub fn from_dense(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (s, &c) in coeffs.iter().enumerate() {
            p.add_term(s as i64, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coefficient(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplies by `q^by`.
    pub fn shift(&self, by: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + by, c)).collect(),
        }
    }

    /// Coefficients read the same from both ends of the support.
    pub fn is_palindromic(&self) -> bool {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => self
                .terms()
                .all(|(e, c)| self.coefficient(lo + hi - e) == c),
            _ => true,
        }
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Exact division by `divisor`. Returns `None` when the division leaves
    /// a remainder or the divisor is zero.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (d_lo, d_hi) = (divisor.min_exponent()?, divisor.max_exponent()?);
        let lead = divisor.coefficient(d_hi);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(r_hi) = rem.max_exponent() {
            let r_lo = rem.min_exponent().unwrap();
            if r_hi - r_lo < d_hi - d_lo {
                return None;
            }
            let c = rem.coefficient(r_hi);
            if c % lead != 0 {
                return None;
            }
            let term = LaurentPoly::monomial(c / lead, r_hi - d_hi);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (abs, e) {
                (_, 0) => write!(f, "{abs}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "q^{e}")?,
                (_, 1) => write!(f, "{abs}q")?,
                _ => write!(f, "{abs}q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_not_stored() {
        let mut p = LaurentPoly::monomial(3, 2);
        p.add_term(2, -3);
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn negative_exponents_multiply() {
        let a = LaurentPoly::from_terms([(-1, 1), (1, 1)]);
        let sq = &a * &a;
        assert_eq!(sq, LaurentPoly::from_terms([(-2, 1), (0, 2), (2, 1)]));
        assert!(sq.is_palindromic());
    }

    #[test]
    fn exact_division() {
        let one_minus_q3 = LaurentPoly::from_terms([(0, 1), (3, -1)]);
        let one_minus_q = LaurentPoly::from_terms([(0, 1), (1, -1)]);
        let q = one_minus_q3.div_exact(&one_minus_q).unwrap();
        assert_eq!(q, LaurentPoly::from_dense(&[1, 1, 1]));
        let one_plus_q = LaurentPoly::from_dense(&[1, 1]);
        assert!(one_minus_q3.div_exact(&one_plus_q).is_none());
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_dense(&[1, 1, 2, 1, 1]);
        assert_eq!(p.to_string(), "1 + q + 2q^2 + q^3 + q^4");
        assert_eq!(LaurentPoly::from_terms([(-1, -2)]).to_string(), "-2q^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
