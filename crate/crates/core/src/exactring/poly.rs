use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::kronecker;
use super::ring::{ExactDiv, Rat, Ring};

/// Univariate polynomial in `t` with rational coefficients.
///
/// Stored in content form: integer coefficients `num` (lowest degree first,
/// no trailing zeros) over a single positive denominator `den`, with
/// `gcd(content(num), den) = 1`. The representation is canonical, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    num: Vec<BigInt>,
    den: BigInt,
}

fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl Poly {
    fn normalize(mut num: Vec<BigInt>, mut den: BigInt) -> Poly {
        trim(&mut num);
        if num.is_empty() {
            return Poly::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let g = content(&num).gcd(&den);
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c /= &g;
                }
                den /= &g;
            }
        }
        Poly { num, den }
    }

    /// Builds a polynomial from rational coefficients, lowest degree first.
    pub fn from_coeffs(coeffs: &[Rat]) -> Poly {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Poly::normalize(num, den)
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::normalize(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    pub(crate) fn from_int_vec(num: Vec<BigInt>) -> Poly {
        Poly::normalize(num, BigInt::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::normalize(vec![c.numer().clone()], c.denom().clone())
    }

    /// `c * t^deg`
    pub fn monomial(c: Rat, deg: usize) -> Poly {
        let mut num = vec![BigInt::zero(); deg + 1];
        num[deg] = c.numer().clone();
        Poly::normalize(num, c.denom().clone())
    }

    /// The indeterminate `t`.
    pub fn t() -> Poly {
        Poly::from_ints(&[0, 1])
    }

    /// `1 - t^k`
    pub fn one_minus_t_pow(k: usize) -> Poly {
        let mut num = vec![BigInt::zero(); k + 1];
        num[0] += 1;
        num[k] -= 1;
        Poly::normalize(num, BigInt::one())
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        match self.num.get(i) {
            Some(c) => Rat::new(c.clone(), self.den.clone()),
            None => Rat::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.degree().map_or_else(Rat::zero, |d| self.coeff(d))
    }

    /// Number of nonzero coefficients.
    pub fn num_terms(&self) -> usize {
        self.num.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_constant(&self) -> bool {
        self.num.len() <= 1
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Largest `k` with `t^k` dividing `self`; zero for the zero polynomial.
    pub fn t_valuation(&self) -> usize {
        self.num.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out the largest power of `t`, returning its exponent.
    pub fn strip_t(&self) -> (usize, Poly) {
        let v = self.t_valuation();
        if v == 0 || self.is_zero() {
            return (0, self.clone());
        }
        (
            v,
            Poly {
                num: self.num[v..].to_vec(),
                den: self.den.clone(),
            },
        )
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut num = vec![BigInt::zero(); k];
        num.extend(self.num.iter().cloned());
        Poly {
            num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::normalize(self.num.iter().map(|x| x * c.numer()).collect(), &self.den * c.denom())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.num.last().unwrap().clone();
        Poly::normalize(self.num.clone(), lc)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        // Horner on p/q in integers: q^d f(p/q) = sum num_i p^i q^(d-i)
        if self.is_zero() {
            return Rat::zero();
        }
        let p = x.numer();
        let q = x.denom();
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for (k, c) in self.num.iter().rev().enumerate() {
            if k > 0 {
                qpow *= q;
            }
            acc = acc * p + c * &qpow;
        }
        Rat::new(acc, qpow * &self.den)
    }

    /// Polynomial `f(t^k)`.
    pub fn substitute_power(&self, k: usize) -> Poly {
        if self.is_constant() || k == 1 {
            return self.clone();
        }
        let mut num = vec![BigInt::zero(); (self.num.len() - 1) * k + 1];
        for (i, c) in self.num.iter().enumerate() {
            num[i * k] = c.clone();
        }
        Poly {
            num,
            den: self.den.clone(),
        }
    }

    /// Quotient and remainder over `Q[t]`. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lc = d.leading_coeff();
        let mut rem = self.coeffs();
        let mut quot = vec![Rat::zero(); rem.len().saturating_sub(dd)];
        let dc = d.coeffs();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let q = rem[top].clone() / &lc;
            if !q.is_zero() {
                for (j, c) in dc.iter().enumerate() {
                    rem[top - dd + j] -= &q * c;
                }
                quot[top - dd] = q;
            }
            rem.pop();
        }
        (Poly::from_coeffs(&quot), Poly::from_coeffs(&rem))
    }

    /// Monic greatest common divisor; `gcd(a, 0) = monic(a)`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (va, a) = self.strip_t();
        let (vb, b) = other.strip_t();
        let tpow = va.min(vb);
        let g = gcd_primitive(&a.num, &b.num);
        Poly::from_int_vec(g).monic().shift(tpow)
    }

    pub fn derivative(&self) -> Poly {
        if self.is_constant() {
            return Poly::zero();
        }
        let num = self
            .num
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Poly::normalize(num, self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }

    /// True when every coefficient is a non-negative integer.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.den.is_one() && self.num.iter().all(|c| !c.is_negative())
    }

    fn mul_ref(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let num = kronecker::mul(&self.num, &rhs.num);
        if self.den.is_one() && rhs.den.is_one() {
            return Poly {
                num,
                den: BigInt::one(),
            };
        }
        Poly::normalize(num, &self.den * &rhs.den)
    }

    fn add_ref(&self, rhs: &Poly, negate_rhs: bool) -> Poly {
        let (num, den) = if self.den == rhs.den {
            let mut num = self.num.clone();
            combine(&mut num, &rhs.num, None, negate_rhs);
            (num, self.den.clone())
        } else {
            let l = self.den.lcm(&rhs.den);
            let fa = &l / &self.den;
            let fb = &l / &rhs.den;
            let mut num: Vec<BigInt> = self.num.iter().map(|c| c * &fa).collect();
            combine(&mut num, &rhs.num, Some(&fb), negate_rhs);
            (num, l)
        };
        if den.is_one() {
            let mut num = num;
            trim(&mut num);
            return Poly { num, den };
        }
        Poly::normalize(num, den)
    }
}

fn combine(acc: &mut Vec<BigInt>, other: &[BigInt], factor: Option<&BigInt>, negate: bool) {
    if acc.len() < other.len() {
        acc.resize(other.len(), BigInt::zero());
    }
    for (a, b) in acc.iter_mut().zip(other) {
        let term = match factor {
            Some(f) => b * f,
            None => b.clone(),
        };
        if negate {
            *a -= term;
        } else {
            *a += term;
        }
    }
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.to_vec();
    trim(&mut out);
    let g = content(&out);
    if !g.is_zero() && !g.is_one() {
        for c in out.iter_mut() {
            *c /= &g;
        }
    }
    out
}

/// Sparse pseudo-remainder of `a` by `b` (integer coefficients, `deg a >= deg b`).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let g = lr.gcd(lb);
        let mult_r = lb / &g;
        let mult_b = &lr / &g;
        if !mult_r.is_one() {
            for c in r.iter_mut() {
                *c *= &mult_r;
            }
        }
        for (j, c) in b.iter().enumerate() {
            r[top - db + j] -= &mult_b * c;
        }
        debug_assert!(r[top].is_zero());
        r.pop();
    }
    trim(&mut r);
    r
}

/// Primitive gcd over `Z[t]` by the primitive remainder sequence.
fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        return vec![BigInt::one()];
    }
    if int_exact_div(&a, &b).is_some() {
        return b;
    }
    loop {
        if b.is_empty() {
            return a;
        }
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = primitive(&pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
}

/// Exact quotient of integer polynomials, `None` if `b` does not divide `a`
/// in `Z[t]`. `b` must be nonzero.
fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        if !r[top].is_zero() {
            let (qc, rc) = r[top].div_rem(lb);
            if !rc.is_zero() {
                return None;
            }
            for (j, c) in b.iter().enumerate().take(db) {
                r[top - db + j] -= &qc * c;
            }
            q[top - db] = qc;
        }
        r.pop();
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

impl ExactDiv for Poly {
    fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let ca = content(&self.num);
        let cb = content(&d.num);
        let pa: Vec<BigInt> = self.num.iter().map(|c| c / &ca).collect();
        let pb: Vec<BigInt> = d.num.iter().map(|c| c / &cb).collect();
        let q = int_exact_div(&pa, &pb)?;
        // (ca/da) / (cb/db)
        let scale = Rat::new(ca * &d.den, cb * &self.den);
        Some(Poly::from_int_vec(q).scale(&scale))
    }
}

impl Zero for Poly {
    fn zero() -> Poly {
        Poly {
            num: Vec::new(),
            den: BigInt::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for Poly {
    fn one() -> Poly {
        Poly {
            num: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                $body(&self, rhs)
            }
        }
        impl<'a, 'b> $tr<&'b Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: &'b Poly) -> Poly {
                $body(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Poly, b: &Poly| a.add_ref(b, false));
forward_binop!(Sub, sub, |a: &Poly, b: &Poly| a.add_ref(b, true));
forward_binop!(Mul, mul, |a: &Poly, b: &Poly| a.mul_ref(b));

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            num: self.num.into_iter().map(|c| -c).collect(),
            den: self.den,
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl Ring for Poly {
    fn from_rat(r: &Rat) -> Poly {
        Poly::constant(r.clone())
    }
}

impl fmt::Display for Poly {
    /// Descending powers of `t`, e.g. `t^5 + 2*t - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.num.len()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            match (a.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs().cmp(&other.coeffs())
    }
}

/// Monic gcd of two polynomials.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::ring::{rat, ratio};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        // gcd(t^2 - 1, t - 1) = t - 1
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        // gcd(p, 0) = monic(p)
        let q = p(&[4, 0, 2]);
        assert_eq!(poly_gcd(&q, &Poly::zero()), p(&[2, 0, 1]));
        assert_eq!(poly_gcd(&Poly::zero(), &q), p(&[2, 0, 1]));
        // Euclid by hand: t^2 + 1 = (t - 2)(t + 2) + 5, so gcd(t^2+1, t+2) = 1
        assert_eq!(poly_gcd(&p(&[1, 0, 1]), &p(&[2, 1])), Poly::one());
    }

    #[test]
    fn gcd_with_t_powers_and_rationals() {
        let a = p(&[0, 0, 3, 3]); // 3t^2(1+t)
        let b = Poly::from_coeffs(&[rat(0), ratio(1, 2), ratio(1, 2)]); // t(1+t)/2
        assert_eq!(a.gcd(&b), p(&[0, 1, 1]));
    }

    #[test]
    fn display_is_descending() {
        assert_eq!(p(&[1, 1, 0, 0, 0, 1]).to_string(), "t^5 + t + 1");
        assert_eq!(
            Poly::from_coeffs(&[ratio(-1, 2), rat(2), rat(-1)]).to_string(),
            "-t^2 + 2*t - 1/2"
        );
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn content_form_is_canonical() {
        let a = Poly::from_coeffs(&[ratio(1, 2), ratio(1, 3)]);
        let b = p(&[3, 2]).scale(&ratio(1, 6));
        assert_eq!(a, b);
        assert_eq!(a.coeff(0), ratio(1, 2));
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 0, 1]); // t^3 - 1
        let b = p(&[-1, 1]);
        assert_eq!(a.exact_div(&b), Some(p(&[1, 1, 1])));
        assert_eq!(a.exact_div(&p(&[1, 1])), None);
        let half = Poly::constant(ratio(1, 2));
        assert_eq!(b.exact_div(&half), Some(p(&[-2, 2])));
    }

    #[test]
    fn eval_and_div_rem() {
        let a = p(&[3, 2]);
        assert_eq!(a.eval(&rat(0)), rat(3));
        assert_eq!(a.eval(&ratio(1, 2)), rat(4));
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[2, 1]));
        assert_eq!(q, p(&[-2, 1]));
        assert_eq!(r, p(&[5]));
    }
}
