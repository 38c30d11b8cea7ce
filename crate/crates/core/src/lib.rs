//! Mixed discriminants ("polydeterminants") of `N` complex `N x N` matrices.
//!
//! The crate is organised bottom-up:
//!
//! * [`matrix`] and [`scalar`]: dense matrices generic over the scalar type,
//!   with determinants by cofactors (`n <= 3`) or pivoted LU.
//! * [`combinatorics`]: permutations, subsets, partition vectors and the
//!   Cayley-Hamilton class coefficients.
//! * [`engines`]: five independent evaluators of `eps(A_1, .., A_N)`.
//! * [`symbolic`]: exact trace-monomial expansions.
//! * [`chiral`]: the flavour-physics layer (generators, anomaly phases,
//!   the four-term Lagrangian, Lorentz contraction).
//! * [`properties`] and [`bench`]: the property suite and timing harness
//!   behind the CLI.
//!
//! Everything numeric is generic over [`Scalar`]; the aliases below fix the
//! common choices.

pub mod bench;
pub mod chiral;
pub mod combinatorics;
pub mod engines;
pub mod error;
pub mod io;
pub mod matrix;
pub mod properties;
pub mod random;
pub mod scalar;
pub mod symbolic;

pub use engines::{det_of_sum, polydet, polydet_named, Engine, PolydetResult};
pub use error::{Error, Result};
pub use matrix::{Matrix, MatrixTuple};
pub use scalar::Scalar;

/// Exact reduced fraction used for expansion coefficients.
pub type Rational = num_rational::Ratio<i64>;

/// Double-precision complex scalar, the default working type.
pub type Complex = num_complex::Complex64;
pub type ComplexMatrix = Matrix<Complex>;
pub type ComplexTuple = MatrixTuple<Complex>;

/// Single-precision variants.
pub type ComplexMatrix32 = Matrix<num_complex::Complex32>;
pub type RealMatrix = Matrix<f64>;

/// Exact arithmetic over `Q` and `Q(i)`.
pub type ExactRational = num_rational::BigRational;
pub type ExactComplex = num_complex::Complex<num_rational::BigRational>;
pub type RationalMatrix = Matrix<ExactRational>;
pub type ExactComplexMatrix = Matrix<ExactComplex>;

/// Relative tolerance used by the property suite and engine agreement checks.
pub const REL_TOL: f64 = 1e-9;
/// Absolute floor paired with [`REL_TOL`].
pub const ABS_TOL: f64 = 1e-12;
