//! Fock-space presentation of `Λ`: `b_k` multiplies by `p_k` and `b_{-k}`
//! acts as `-k ∂/∂p_k`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactring::Rat;
use crate::linalg::LinOperator;
use crate::partitions::{partitions_of, Partition};
use crate::symfunc::{Basis, SymFunc};

/// `scalar · b_m b_{-ν_1} ⋯ b_{-ν_ℓ}`, normally ordered.
///
/// Invariant: `creation ≥ 1`, `annihilations` is non-empty and non-increasing.
#[derive(Clone, PartialEq, Eq)]
pub struct HeisenbergTerm {
    pub scalar: Rat,
    pub creation: usize,
    pub annihilations: Partition,
}

/// A finite sum of normally ordered terms with distinct operator parts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HeisenbergSum {
    terms: BTreeMap<(usize, Partition), Rat>,
}

/// Which closed-form operator to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedOperator {
    D,
    E,
}

/// `b_k` on a p-basis symmetric function; `k = 0` acts as zero.
pub fn apply_mode(k: i64, f: &SymFunc) -> SymFunc {
    let f = f.convert(Basis::P);
    let n = f.n();
    if k == 0 {
        return SymFunc::zero(n, Basis::P);
    }
    if k > 0 {
        let k = k as usize;
        let mut out = SymFunc::zero(n + k, Basis::P);
        for (p, c) in f.terms() {
            out.add_term(p.union(&Partition::row(k)), c.clone());
        }
        return out;
    }
    let k = (-k) as usize;
    if k > n {
        return SymFunc::zero(0, Basis::P);
    }
    let mut out = SymFunc::zero(n - k, Basis::P);
    for (p, c) in f.terms() {
        let mult = p.parts().iter().filter(|&&x| x == k).count();
        if let Some(rest) = p.remove_part(k) {
            let w = Rat::from_integer(-BigInt::from(k) * BigInt::from(mult));
            out.add_term(rest, c * w);
        }
    }
    out
}

/// Applies the word `b_{w_0} b_{w_1} ⋯` to `f`, rightmost letter first.
pub fn apply_word(word: &[i64], f: &SymFunc) -> SymFunc {
    word.iter()
        .rev()
        .fold(f.convert(Basis::P), |acc, &k| apply_mode(k, &acc))
}

impl HeisenbergTerm {
    /// Annihilations first, then the creation.
    pub fn apply(&self, f: &SymFunc) -> SymFunc {
        let mut word = vec![self.creation as i64];
        word.extend(self.annihilations.parts().iter().map(|&k| -(k as i64)));
        apply_word(&word, f).scale(&self.scalar)
    }

    /// Weight removed by the annihilations.
    pub fn annihilation_weight(&self) -> usize {
        self.annihilations.weight()
    }
}

impl fmt::Debug for HeisenbergTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} b_{}", self.scalar, self.creation)?;
        for k in self.annihilations.parts() {
            write!(f, " b_-{k}")?;
        }
        Ok(())
    }
}

impl HeisenbergSum {
    pub fn new() -> Self {
        HeisenbergSum::default()
    }

    /// Adds a term, merging with an existing one of the same shape. Terms
    /// involving `b_0` are dropped.
    pub fn push(&mut self, term: HeisenbergTerm) {
        if term.creation == 0 || term.scalar.is_zero() {
            return;
        }
        let key = (term.creation, term.annihilations);
        let v = self.terms.remove(&key).unwrap_or_else(Rat::zero) + term.scalar;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn terms(&self) -> Vec<HeisenbergTerm> {
        self.terms
            .iter()
            .map(|((m, nu), c)| HeisenbergTerm {
                scalar: c.clone(),
                creation: *m,
                annihilations: nu.clone(),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Action on `f`. Terms of differing weight change contribute to a
    /// different degree, so only weight-preserving terms are accepted.
    pub fn apply(&self, f: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero(f.n(), Basis::P);
        for term in self.terms() {
            assert_eq!(
                term.creation,
                term.annihilation_weight(),
                "only degree-preserving sums act on a fixed Λⁿ"
            );
            out = out + term.apply(f);
        }
        out
    }

    /// Matrix of the action on `Λⁿ` in the p-basis.
    pub fn matrix_of(&self, n: usize) -> LinOperator<Rat> {
        LinOperator::from_columns(n, Basis::P, |l| self.apply(&SymFunc::p(l.clone())))
    }

    fn rescale(&self, factor: impl Fn(usize, &Partition) -> Rat) -> Self {
        let mut out = HeisenbergSum::new();
        for t in self.terms() {
            let f = factor(t.creation, &t.annihilations);
            out.push(HeisenbergTerm {
                scalar: t.scalar * f,
                ..t
            });
        }
        out
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// Normally ordered expansion of 𝒟 or 𝓔, truncated to annihilation weight
/// `≤ n`; the dropped terms kill `Λⁿ`, so the action on `Λⁿ` is exact.
///
/// An unordered tuple `ν` with multiplicities `α` occurs `ℓ!/Π α_i!` times,
/// which turns the `1/ℓ!` prefactors into `1/Π α_i!`.
pub fn expand_named(name: NamedOperator, n: usize) -> HeisenbergSum {
    let mut out = HeisenbergSum::new();
    for total in 1..=n {
        for nu in partitions_of(total) {
            let alpha: BigInt = nu.multiplicities().iter().map(|&a| factorial(a)).product();
            let scalar = match name {
                NamedOperator::D => -Rat::new(BigInt::one(), alpha),
                NamedOperator::E => {
                    let sign = if nu.len() % 2 == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    };
                    Rat::new(sign * BigInt::from(total), alpha * BigInt::from(nu.part_product()))
                }
            };
            out.push(HeisenbergTerm {
                scalar,
                creation: total,
                annihilations: nu,
            });
        }
    }
    out
}

/// The automorphism `b_k ↦ -k b_k`, `b_{-k} ↦ -(1/k) b_{-k}` applied termwise.
pub fn omega_hat(sum: &HeisenbergSum) -> HeisenbergSum {
    sum.rescale(|m, nu| {
        let mut f = -Rat::from_integer(BigInt::from(m));
        for &k in nu.parts() {
            f *= -Rat::new(BigInt::one(), BigInt::from(k));
        }
        f
    })
}

/// Inverse of [`omega_hat`]: `b_k ↦ -(1/k) b_k`, `b_{-k} ↦ -k b_{-k}`.
pub fn omega_hat_inverse(sum: &HeisenbergSum) -> HeisenbergSum {
    sum.rescale(|m, nu| {
        let mut f = -Rat::new(BigInt::one(), BigInt::from(m));
        for &k in nu.parts() {
            f *= -Rat::from_integer(BigInt::from(k));
        }
        f
    })
}
