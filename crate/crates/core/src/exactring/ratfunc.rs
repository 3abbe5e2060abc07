use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::ring::{ExactDiv, Rat, Ring};
use crate::error::{Error, Result};

/// Reduced fraction `t^shift * num / den` over `Q[t]`.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, and neither `num` nor
/// `den` divisible by `t` (all powers of `t` live in `shift`). Zero is
/// `0 / 1` with `shift = 0`. The integer shift lets Laurent monomials such
/// as `q^-1 = t^-A` be represented without inflating the polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Reduces `t^shift * num / den`. Fails with `ZeroDivision` if `den = 0`.
    pub fn new(num: Poly, den: Poly, shift: i64) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(Self::reduce(num, den, shift))
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        Self::reduce(p, Poly::one(), 0)
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> RationalFunction {
        RationalFunction {
            shift: k,
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> RationalFunction {
        Self::from_poly(Poly::constant(c))
    }

    fn reduce(num: Poly, den: Poly, shift: i64) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let (vn, num) = num.strip_t();
        let (vd, den) = den.strip_t();
        let shift = shift + vn as i64 - vd as i64;
        let (num, den) = if den.is_constant() {
            (num, den)
        } else if let Some(q) = num.exact_div(&den) {
            (q, Poly::one())
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides numerator"),
                    den.exact_div(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff();
        let (num, den) = if lc.is_one() {
            (num, den)
        } else {
            let inv = lc.recip();
            (num.scale(&inv), den.scale(&inv))
        };
        RationalFunction { shift, num, den }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// True when the denominator is a unit, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_constant()
    }

    /// True when the value is an ordinary polynomial in `t`.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || (self.is_laurent() && self.shift >= 0)
    }

    /// The polynomial value, if it is one.
    pub fn to_poly(&self) -> Option<Poly> {
        if !self.is_polynomial() {
            return None;
        }
        Some(self.num.shift(self.shift.max(0) as usize))
    }

    /// Multiplies by `t^k`.
    pub fn mul_t_pow(&self, k: i64) -> RationalFunction {
        if self.is_zero() {
            return self.clone();
        }
        RationalFunction {
            shift: self.shift + k,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// The substitution `t -> t^-1`.
    pub fn invert_variable(&self) -> RationalFunction {
        if self.is_zero() {
            return self.clone();
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        let rev = |p: &Poly| Poly::from_coeffs(&p.coeffs().into_iter().rev().collect::<Vec<_>>());
        // num(1/t) = t^-dn rev(num)
        Self::reduce(rev(&self.num), rev(&self.den), -self.shift - dn + dd)
    }

    /// The substitution `t -> t^k` for `k >= 1`.
    pub fn substitute_power(&self, k: usize) -> RationalFunction {
        Self::reduce(
            self.num.substitute_power(k),
            self.den.substitute_power(k),
            self.shift * k as i64,
        )
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone(), -self.shift))
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.clone() * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        (0..e).fold(RationalFunction::one(), |acc, _| acc * self)
    }

    /// Value at `x`. Fails with `PoleError` when the reduced denominator
    /// vanishes at `x`.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        if self.is_zero() {
            return Ok(Rat::zero());
        }
        let d = self.den.eval(x);
        if d.is_zero() || (x.is_zero() && self.shift < 0) {
            return Err(Error::PoleError(format!("{self} at t = {x}")));
        }
        let mut v = self.num.eval(x) / d;
        if self.shift != 0 {
            let xp = num_traits::pow(x.clone(), self.shift.unsigned_abs() as usize);
            if self.shift > 0 {
                v *= xp;
            } else {
                v /= xp;
            }
        }
        Ok(v)
    }

    fn add_impl(&self, rhs: &RationalFunction, negate: bool) -> RationalFunction {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -rhs.clone() } else { rhs.clone() };
        }
        let s = self.shift.min(rhs.shift);
        let a = self.num.shift((self.shift - s) as usize);
        let c = rhs.num.shift((rhs.shift - s) as usize);
        let c = if negate { -c } else { c };
        if self.den == rhs.den {
            return Self::reduce(a + c, self.den.clone(), s);
        }
        let g = self.den.gcd(&rhs.den);
        let (b1, d1) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.exact_div(&g).unwrap(), rhs.den.exact_div(&g).unwrap())
        };
        let num = a * &d1 + c * &b1;
        Self::reduce(num, b1 * &rhs.den, s)
    }

    fn mul_impl(&self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel so the product is reduced without a gcd of the products
        let cancel = |n: &Poly, d: &Poly| -> (Poly, Poly) {
            if d.is_constant() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.exact_div(&g).unwrap(), d.exact_div(&g).unwrap())
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        let num = a * &c;
        let den = b * &d;
        let lc = den.leading_coeff();
        let (num, den) = if lc.is_one() {
            (num, den)
        } else {
            let inv = lc.recip();
            (num.scale(&inv), den.scale(&inv))
        };
        RationalFunction {
            shift: self.shift + rhs.shift,
            num,
            den,
        }
    }
}

/// Evaluates `r` at `x`; see [`RationalFunction::eval`].
pub fn rf_eval(r: &RationalFunction, x: &Rat) -> Result<Rat> {
    r.eval(x)
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction {
            shift: 0,
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction {
            shift: 0,
            num: Poly::one(),
            den: Poly::one(),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'a RationalFunction) -> RationalFunction {
                $body(&self, rhs)
            }
        }
        impl<'a, 'b> $tr<&'b RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'b RationalFunction) -> RationalFunction {
                $body(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RationalFunction, b: &RationalFunction| a
    .add_impl(b, false));
forward_binop!(Sub, sub, |a: &RationalFunction, b: &RationalFunction| a
    .add_impl(b, true));
forward_binop!(Mul, mul, |a: &RationalFunction, b: &RationalFunction| a.mul_impl(b));

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            shift: self.shift,
            num: -self.num,
            den: self.den,
        }
    }
}

impl Ring for RationalFunction {
    fn from_rat(r: &Rat) -> Self {
        RationalFunction::constant(r.clone())
    }
}

impl ExactDiv for RationalFunction {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.checked_div(divisor).ok()
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let num = if self.shift > 0 {
            self.num.shift(self.shift as usize)
        } else {
            self.num.clone()
        };
        let den = if self.shift < 0 {
            self.den.shift((-self.shift) as usize)
        } else {
            self.den.clone()
        };
        if den.is_one() {
            write!(f, "{num}")
        } else if num.num_terms() > 1 {
            write!(f, "({num})/({den})")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::ring::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d), 0).unwrap()
    }

    #[test]
    fn eval_examples() {
        // (t^2 - 1)/(t - 1) reduces to t + 1
        let r = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(r, RationalFunction::from_poly(p(&[1, 1])));
        assert_eq!(rf_eval(&r, &rat(1)).unwrap(), rat(2));
        // 1/(t - 1) has a pole at 1
        assert!(matches!(
            rf_eval(&rf(&[1], &[-1, 1]), &rat(1)),
            Err(Error::PoleError(_))
        ));
        // (2t + 3)/(t + 1) at 0
        assert_eq!(rf_eval(&rf(&[3, 2], &[1, 1]), &rat(0)).unwrap(), rat(3));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalFunction::new(p(&[1]), Poly::zero(), 0),
            Err(Error::ZeroDivision)
        ));
    }

    #[test]
    fn laurent_shift_and_inversion() {
        let r = RationalFunction::from_poly(p(&[1, 1])).invert_variable(); // 1 + 1/t
        assert_eq!(r.shift(), -1);
        assert!(r.is_laurent());
        assert_eq!(r.eval(&rat(2)).unwrap(), Rat::new(3.into(), 2.into()));
        assert_eq!(r.invert_variable(), RationalFunction::from_poly(p(&[1, 1])));
        // t^-3 * t^3 = 1
        assert_eq!(
            RationalFunction::t_pow(-3) * RationalFunction::t_pow(3),
            RationalFunction::one()
        );
    }

    #[test]
    fn arithmetic_stays_reduced() {
        let a = rf(&[1], &[-1, 1]); // 1/(t-1)
        let b = rf(&[1], &[1, 1]); // 1/(t+1)
        let s = &a + &b; // 2t/(t^2-1)
        assert_eq!(s, RationalFunction::new(p(&[0, 2]), p(&[-1, 0, 1]), 0).unwrap());
        let d = &a - &a;
        assert!(d.is_zero());
        let m = &a * &rf(&[-1, 0, 1], &[1]); // (t+1)
        assert_eq!(m, RationalFunction::from_poly(p(&[1, 1])));
    }
}
