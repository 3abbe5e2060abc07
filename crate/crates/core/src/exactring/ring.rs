use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// A commutative ring with exact arithmetic.
///
/// Every coefficient type used by symmetric functions and operator matrices
/// implements this. Rationals embed into every ring through [`Ring::from_rat`].
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rat(r: &Rat) -> Self;

    fn from_int(k: i64) -> Self {
        Self::from_rat(&Rat::from_integer(BigInt::from(k)))
    }
}

/// Rings in which a division known to be exact can be carried out.
///
/// `exact_div` returns `None` when `self` is not a multiple of `divisor`.
/// Fraction-free elimination relies on this.
pub trait ExactDiv: Ring {
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl Ring for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl ExactDiv for Rat {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(self / divisor)
        }
    }
}

/// Shorthand for the integer `k` as a rational.
pub fn rat(k: i64) -> Rat {
    Rat::from_integer(BigInt::from(k))
}

/// Shorthand for `num/den` as a rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `"num/den"`, or `"num"` for integers.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

/// Parses `"3"`, `"-5/2"` into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}
