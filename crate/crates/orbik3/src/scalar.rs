//! Scalar traits shared by the linear algebra kernel and the cyclotomic ring.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Commutative ring with identity, as far as num-traits can express it.
pub trait Ring: Clone + Debug + PartialEq + Num + Neg<Output = Self> {}

impl<T: Clone + Debug + PartialEq + Num + Neg<Output = T>> Ring for T {}

/// A field. Implemented explicitly so that integer types (whose `/`
/// truncates) never qualify.
pub trait Field: Ring + Signed + PartialOrd + FromPrimitive {
    /// True when the value is known to be zero. Floats use exact comparison.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Field for BigRational {}
impl Field for Ratio<i64> {}
impl Field for Ratio<i128> {}
impl Field for f64 {}
impl Field for f32 {}

/// Exact rational scalars that expose numerator and denominator.
pub trait ExactRational: Field {
    fn to_big(&self) -> BigRational;
    fn from_big(r: &BigRational) -> Option<Self>;
}

impl ExactRational for BigRational {
    fn to_big(&self) -> BigRational {
        self.clone()
    }
    fn from_big(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
}

impl ExactRational for Ratio<i64> {
    fn to_big(&self) -> BigRational {
        Ratio::new((*self.numer()).into(), (*self.denom()).into())
    }
    fn from_big(r: &BigRational) -> Option<Self> {
        Some(Ratio::new(r.numer().to_i64()?, r.denom().to_i64()?))
    }
}

impl ExactRational for Ratio<i128> {
    fn to_big(&self) -> BigRational {
        Ratio::new((*self.numer()).into(), (*self.denom()).into())
    }
    fn from_big(r: &BigRational) -> Option<Self> {
        Some(Ratio::new(r.numer().to_i128()?, r.denom().to_i128()?))
    }
}

/// Shorthand for a rational from two machine integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integral rational.
pub fn rint(n: i64) -> BigRational {
    Ratio::from_integer(BigInt::from(n))
}

/// True when `r` is an integer.
pub fn is_integral(r: &BigRational) -> bool {
    r.is_integer()
}

/// Reduce `r` into `[0, m)` for a positive integer modulus `m`.
pub fn mod_rational(r: &BigRational, m: i64) -> BigRational {
    let m = rint(m);
    let k = (r / &m).floor();
    r - k * m
}

/// Format a rational as `"a/b"` (or `"a"` when integral).
pub fn rat_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"a/b"` or `"a"`.
pub fn rat_from_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Ratio::new(n, d))
        }
        None => Some(Ratio::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_reduction() {
        assert_eq!(mod_rational(&rat(-16, 3), 2), rat(2, 3));
        assert_eq!(mod_rational(&rat(4, 3), 2), rat(4, 3));
        assert_eq!(mod_rational(&rint(-2), 2), rint(0));
    }

    #[test]
    fn string_round_trip() {
        for r in [rat(-2, 3), rint(5), rat(7, 24)] {
            assert_eq!(rat_from_str(&rat_to_string(&r)), Some(r));
        }
        assert_eq!(rat_from_str("1/0"), None);
    }
}
