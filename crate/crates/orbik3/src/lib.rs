//! Exact lattices, codes, permutation groups and theta series attached to
//! the Z3-orbifold K3 surface and the A2^12 Niemeier lattice.

pub mod codes;
pub mod error;
pub mod genus;
pub mod gluing;
pub mod intmat;
pub mod lattice;
pub mod mathieu;
pub mod matrix;
pub mod niemeier;
pub mod orbifold;
pub mod perm;
pub mod properties;
pub mod report;
pub mod scalar;
pub mod symmetry;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational scalar used throughout.
pub type Rat = BigRational;
/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Rational matrix.
pub type QMatrix = matrix::Matrix<Rat>;
/// Integer matrix.
pub type ZMatrix = matrix::Matrix<Int>;
/// Formal q,y-series with cyclotomic rational coefficients.
pub type Series = genus::JacobiSeries<Rat>;
/// Element of the 24th cyclotomic field over the rationals.
pub type Cyclo = genus::CycloNumber<Rat>;
