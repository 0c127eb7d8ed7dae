//! Binary quartic forms whose Galois group is contained in the dihedral
//! group of order 8, organised by the quadratic form that stabilizes them.

pub mod counting;
pub mod error;
pub mod factor;
pub mod forms;
pub mod galois;
pub mod params;
pub mod quadarith;
pub mod quadlattice;
pub mod resolvent;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use forms::{BinaryForm, Invariants, Mat2, QuadForm, QuarticForm};
pub use quadlattice::Chart;
pub use scalar::{FieldScalar, IntScalar, Scalar};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar.
pub type Rational = BigRational;
/// Quartic with arbitrary-precision integer coefficients.
pub type QuarticZ = QuarticForm<BigInt>;
/// Quartic with exact rational coefficients.
pub type QuarticQ = QuarticForm<Rational>;
/// Quartic with floating-point coefficients.
pub type QuarticF = QuarticForm<f64>;
/// Quadratic form with arbitrary-precision integer coefficients.
pub type QuadZ = QuadForm<BigInt>;
/// Integer matrix with arbitrary-precision entries.
pub type Mat2Z = Mat2<BigInt>;
