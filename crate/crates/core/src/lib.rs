//! Exact computation of outer multiplicities in tensor products of
//! fundamental modules for the affine Kac-Moody algebra of type `A_n^(1)`.
//!
//! Three independent routes are provided and cross-checked against each
//! other:
//!
//! - counting multipartitions over affine Weyl orbit sets
//!   ([`multiplicities::outer_multiplicity_formula`],
//!   [`multiplicities::tau_formula`]);
//! - brute-force enumeration of Misra-Wilson tableaux
//!   ([`tableaux::tau_bruteforce`]);
//! - truncated characters built with the affine Freudenthal recursion
//!   ([`char_oracle::tensor_outer_multiplicities`]).
//!
//! All arithmetic is exact. Weight pairings live in [`Rational`], counts are
//! `u64`.

pub mod affine_cartan;
pub mod char_oracle;
mod error;
pub mod laurent;
pub mod multiplicities;
pub mod partitions;
pub mod residue;
pub mod tableaux;
pub mod weyl_orbits;

pub use error::{Error, Result};

/// Exact rational used for bilinear-form values and degrees.
pub type Rational = num_rational::Ratio<i64>;

/// Builds `num / den` as a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Convenience re-exports of the most used types and entry points.
pub mod prelude {
    pub use crate::affine_cartan::{
        affine_bilinear, bilinear, eps_coords, quadratic_f, AffineWeight, FiniteWeight,
    };
    pub use crate::char_oracle::{freudenthal_character, tensor_outer_multiplicities};
    pub use crate::laurent::LaurentPoly;
    pub use crate::multiplicities::{
        flag_multiplicity_at, flag_multiplicity_poly, general_fundamental,
        outer_multiplicity_formula, outer_multiplicity_limit, tau_formula, xi_from_eta,
    };
    pub use crate::partitions::{rho, rho_multi, Multipartition, Partition};
    pub use crate::tableaux::{tau_bruteforce, ContentCharacter};
    pub use crate::weyl_orbits::{socle_formula, socle_oracle, OrbitPair};
    pub use crate::{rat, Error, Rational, Result};
}
