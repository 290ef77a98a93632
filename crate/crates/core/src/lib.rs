//! Exact computations around the three-gap theorem for badly approximable
//! numbers: the optimal largest-gap constant `f(B)`, constructive
//! inhomogeneous approximation, and agreement of arithmetic subsequences of
//! characteristic Sturmian words.
//!
//! Every correctness-critical comparison is made in exact arithmetic: rational
//! surrogates of `θ` with certified error bounds, and exact elements of real
//! quadratic fields. Floating point appears only when rendering reports.

pub mod cf;
pub mod decimal;
pub mod error;
pub mod kronecker;
pub mod oracle;
pub mod quadratic;
pub mod scalar;
pub mod sturmian;
pub mod three_gap;

pub use cf::{CertifiedValue, ContinuedFraction, Convergent, Surrogate};
pub use error::{Error, Result};
pub use kronecker::KroneckerSolution;
pub use quadratic::Quadratic;
pub use sturmian::{Agreement, DiversityWitness, SturmianSeq};
pub use three_gap::{ExtremalWitness, GapSet, RegimeTag};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

/// Exact element of a real quadratic field with arbitrary-precision
/// coefficients.
pub type QuadraticNumber = Quadratic<num_bigint::BigInt>;

/// Quadratic-field element over `i64`, for small closed forms.
pub type QuadraticI64 = Quadratic<i64>;

/// Quadratic-field element over `i128`.
pub type QuadraticI128 = Quadratic<i128>;
