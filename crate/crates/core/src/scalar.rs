//! Exact rational scalars.
//!
//! Every quantity in this crate is a [`Scalar`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. No floating
//! point is used anywhere; equality of results is always exact equality.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms.
///
/// `Display` renders `num/den`, or just `num` when the denominator is one,
/// which is the textual form used by the CLI and golden fixtures.
pub type Scalar = BigRational;

/// Scalar from a machine integer.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Scalar from a big integer.
pub fn big(n: BigInt) -> Scalar {
    Scalar::from_integer(n)
}

/// Scalar `n/d`. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Absolute value, for residual reporting.
pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

/// True if the scalar is an integer (denominator one).
pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

/// Parse the textual form produced by `Display` (`num` or `num/den`).
pub fn parse(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Scalar::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Scalar::from_integer(n))
        }
    }
}
