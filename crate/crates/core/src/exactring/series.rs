use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ring::Rat;
use crate::error::{Error, Result};

/// Power series in `t` known up to and including `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rat>,
}

impl TruncSeries {
    /// Series with the given leading coefficients, padded with zeros to `order`.
    pub fn new(mut coeffs: Vec<Rat>, order: usize) -> TruncSeries {
        coeffs.resize(order + 1, Rat::zero());
        TruncSeries { coeffs }
    }

    pub fn one(order: usize) -> TruncSeries {
        TruncSeries::new(vec![Rat::one()], order)
    }

    /// `exp(a t)` truncated.
    pub fn exp_linear(a: &Rat, order: usize) -> TruncSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rat::one();
        for k in 0..=order {
            if k > 0 {
                term = term * a / Rat::from_integer(BigInt::from(k));
            }
            coeffs.push(term.clone());
        }
        TruncSeries { coeffs }
    }

    /// `(1 - exp(h t)) / t`, a unit when `h != 0`: `-(h + h^2 t/2! + h^3 t^2/3! + ...)`.
    pub fn one_minus_exp_over_t(h: &Rat, order: usize) -> TruncSeries {
        let e = TruncSeries::exp_linear(h, order + 1);
        let coeffs = e.coeffs[1..].iter().map(|c| -c.clone()).collect();
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul(&self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out = vec![Rat::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut s = Rat::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -s * &inv0;
        }
        Ok(TruncSeries { coeffs: out })
    }
}

/// `a / b` where both are divisible by `t^valuation_shift`.
///
/// The common factor `t^valuation_shift` is cancelled first, so the result is
/// known to order `min(order(a), order(b)) - valuation_shift`. Fails with
/// `ZeroDivision` if `b` vanishes identically to its truncation order, and
/// with `Valuation` if `b / t^shift` is not a unit or `a` is not divisible by
/// `t^shift`.
pub fn series_divide(a: &TruncSeries, b: &TruncSeries, valuation_shift: usize) -> Result<TruncSeries> {
    if b.is_zero() {
        return Err(Error::ZeroDivision);
    }
    let s = valuation_shift;
    let order = a.order().min(b.order());
    if s > order {
        return Err(Error::Valuation(format!("shift {s} exceeds truncation order {order}")));
    }
    if a.coeffs[..s].iter().any(|c| !c.is_zero()) {
        return Err(Error::Valuation("numerator has lower valuation than the shift".into()));
    }
    if b.coeffs[..s].iter().any(|c| !c.is_zero()) || b.coeffs[s].is_zero() {
        return Err(Error::Valuation("denominator valuation differs from the shift".into()));
    }
    let new_order = order - s;
    let a2 = TruncSeries::new(a.coeffs[s..=order].to_vec(), new_order);
    let b2 = TruncSeries::new(b.coeffs[s..=order].to_vec(), new_order);
    Ok(a2.mul(&b2.inverse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::ring::{rat, ratio};

    #[test]
    fn divide_exponential_differences() {
        // (1 - e^{2t}) / (1 - e^t) = 1 + e^t = 2 + t + t^2/2 + t^3/6 + ...
        let order = 4;
        let num = TruncSeries::new(
            std::iter::once(rat(0))
                .chain(
                    TruncSeries::one_minus_exp_over_t(&rat(2), order)
                        .coeffs()
                        .iter()
                        .cloned(),
                )
                .collect(),
            order,
        );
        let den = TruncSeries::new(
            std::iter::once(rat(0))
                .chain(
                    TruncSeries::one_minus_exp_over_t(&rat(1), order)
                        .coeffs()
                        .iter()
                        .cloned(),
                )
                .collect(),
            order,
        );
        let q = series_divide(&num, &den, 1).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.coeffs(), &[rat(2), rat(1), ratio(1, 2), ratio(1, 6)]);
    }

    #[test]
    fn identity_and_cancellation() {
        let a = TruncSeries::new(vec![rat(3), rat(-1), ratio(2, 7)], 3);
        assert_eq!(series_divide(&a, &TruncSeries::one(3), 0).unwrap(), a);
        let t = TruncSeries::new(vec![rat(0), rat(1)], 3);
        assert_eq!(series_divide(&t, &t, 1).unwrap(), TruncSeries::one(2));
    }

    #[test]
    fn zero_divisor() {
        let z = TruncSeries::new(vec![], 3);
        assert!(matches!(
            series_divide(&TruncSeries::one(3), &z, 0),
            Err(Error::ZeroDivision)
        ));
    }
}
