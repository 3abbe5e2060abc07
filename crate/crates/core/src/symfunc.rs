//! Homogeneous symmetric functions of a fixed degree over an exact ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::character_table;
use crate::error::{Error, Result};
use crate::exactring::{parse_rat, rat_to_string, Rat, Ring};
use crate::partitions::{partitions_of, Partition};

/// Which basis the coefficients of a [`SymFunc`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// Power sums `p_λ`.
    #[serde(rename = "p")]
    P,
    /// Schur functions `s_λ`.
    #[serde(rename = "s")]
    S,
}

impl Basis {
    pub fn letter(self) -> &'static str {
        match self {
            Basis::P => "p",
            Basis::S => "s",
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Basis> {
        match s {
            "p" | "P" => Ok(Basis::P),
            "s" | "S" => Ok(Basis::S),
            other => Err(Error::Usage(format!("unknown basis '{other}' (expected p or s)"))),
        }
    }
}

/// Sign convention for the involution ω on power sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaConvention {
    /// `p_k ↦ -p_k`, the convention used throughout the crate.
    Negate,
    /// `p_k ↦ (-1)^{k-1} p_k`; differs from `Negate` by `(-1)^n` on degree `n`.
    Classical,
}

/// Element of `Λⁿ`. Keys all have weight `n`; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct SymFunc<R: Ring = Rat> {
    n: usize,
    basis: Basis,
    coeffs: BTreeMap<Partition, R>,
}

fn scalar<R: Ring>(r: &Rat) -> R {
    R::from_rat(r)
}

impl<R: Ring> SymFunc<R> {
    pub fn zero(n: usize, basis: Basis) -> Self {
        SymFunc {
            n,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(basis: Basis, lambda: Partition, c: R) -> Self {
        let mut f = SymFunc::zero(lambda.weight(), basis);
        f.add_term(lambda, c);
        f
    }

    /// Builds from `(partition, coefficient)` pairs, summing repeats.
    pub fn from_terms(n: usize, basis: Basis, terms: impl IntoIterator<Item = (Partition, R)>) -> Result<Self> {
        let mut f = SymFunc::zero(n, basis);
        for (p, c) in terms {
            if p.weight() != n {
                return Err(Error::WeightMismatch(n, p.weight()));
            }
            f.add_term(p, c);
        }
        Ok(f)
    }

    /// Coefficient vector in canonical partition order.
    pub fn from_vector(n: usize, basis: Basis, v: &[R]) -> Self {
        let parts = partitions_of(n);
        assert_eq!(parts.len(), v.len(), "vector length must be p(n)");
        let mut f = SymFunc::zero(n, basis);
        for (p, c) in parts.into_iter().zip(v) {
            f.add_term(p, c.clone());
        }
        f
    }

    pub fn to_vector(&self) -> Vec<R> {
        partitions_of(self.n).iter().map(|p| self.coeff(p)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, lambda: &Partition) -> R {
        self.coeffs.get(lambda).cloned().unwrap_or_else(R::zero)
    }

    /// Nonzero terms in canonical partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &R)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: R) {
        debug_assert_eq!(lambda.weight(), self.n);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = SymFunc::zero(self.n, self.basis);
        for (p, v) in &self.coeffs {
            out.add_term(p.clone(), v.clone() * c);
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> SymFunc<S> {
        let mut out = SymFunc::zero(self.n, self.basis);
        for (p, v) in &self.coeffs {
            out.add_term(p.clone(), f(v));
        }
        out
    }

    /// Exact change of basis through the character table.
    pub fn convert(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let table = character_table(self.n);
        let mut out = SymFunc::zero(self.n, target);
        for (li, lambda) in table.parts.iter().enumerate() {
            for (mi, mu) in table.parts.iter().enumerate() {
                let chi = table.chi[li][mi];
                if chi == 0 {
                    continue;
                }
                match self.basis {
                    // p_μ = Σ_λ χ^λ_μ s_λ
                    Basis::P => {
                        if let Some(c) = self.coeffs.get(mu) {
                            out.add_term(lambda.clone(), c.clone() * scalar::<R>(&Rat::from_integer(chi.into())));
                        }
                    }
                    // s_λ = Σ_μ χ^λ_μ p_μ / z_μ
                    Basis::S => {
                        if let Some(c) = self.coeffs.get(lambda) {
                            let w = Rat::new(BigInt::from(chi), mu.z());
                            out.add_term(mu.clone(), c.clone() * scalar::<R>(&w));
                        }
                    }
                }
            }
        }
        out
    }

    /// Hall scalar product. Uses the basis of `self`, converting `other` if needed.
    pub fn hall(&self, other: &SymFunc<R>) -> Result<R> {
        if self.n != other.n {
            return Err(Error::WeightMismatch(self.n, other.n));
        }
        let other = other.convert(self.basis);
        let mut acc = R::zero();
        for (p, a) in &self.coeffs {
            if let Some(b) = other.coeffs.get(p) {
                let term = a.clone() * b;
                acc = match self.basis {
                    Basis::S => acc + term,
                    Basis::P => acc + term * scalar::<R>(&Rat::from_integer(p.z())),
                };
            }
        }
        Ok(acc)
    }

    /// Multiplies `p_λ` by `Π_i u(λ_i)`. Result in the p-basis.
    pub fn pleth_scale(&self, u: impl Fn(usize) -> R) -> Self {
        let f = self.convert(Basis::P);
        let mut out = SymFunc::zero(self.n, Basis::P);
        for (p, c) in &f.coeffs {
            let mut w = c.clone();
            for &k in p.parts() {
                w = w * u(k);
            }
            out.add_term(p.clone(), w);
        }
        out
    }

    fn diagonal_p(&self, weight: impl Fn(&Partition) -> Rat) -> Self {
        let f = self.convert(Basis::P);
        let mut out = SymFunc::zero(self.n, Basis::P);
        for (p, c) in &f.coeffs {
            out.add_term(p.clone(), c.clone() * scalar::<R>(&weight(p)));
        }
        out.convert(self.basis)
    }

    /// ω with `p_k ↦ -p_k`, returned in the basis of `self`.
    pub fn omega(&self) -> Self {
        self.omega_with(OmegaConvention::Negate)
    }

    pub fn omega_with(&self, conv: OmegaConvention) -> Self {
        self.diagonal_p(|p| {
            let flips = match conv {
                OmegaConvention::Negate => p.len(),
                OmegaConvention::Classical => p.parts().iter().filter(|&&k| k % 2 == 0).count(),
            };
            if flips % 2 == 0 {
                Rat::one()
            } else {
                -Rat::one()
            }
        })
    }

    /// `p_λ ↦ (-1)^{l(λ)} p_λ / ⟨λ⟩`, returned in the basis of `self`.
    pub fn pi_iso(&self) -> Self {
        self.diagonal_p(|p| {
            let sign = if p.len() % 2 == 0 { 1 } else { -1 };
            Rat::new(BigInt::from(sign), BigInt::from(p.part_product()))
        })
    }

    /// Inverse of [`SymFunc::pi_iso`]: `p_λ ↦ (-1)^{l(λ)} ⟨λ⟩ p_λ`.
    pub fn pi_iso_inverse(&self) -> Self {
        self.diagonal_p(|p| {
            let sign: i64 = if p.len() % 2 == 0 { 1 } else { -1 };
            Rat::from_integer(BigInt::from(sign) * BigInt::from(p.part_product()))
        })
    }

    /// Ordinary product of symmetric functions, in the p-basis.
    pub fn multiply(&self, other: &SymFunc<R>) -> Self {
        let a = self.convert(Basis::P);
        let b = other.convert(Basis::P);
        let mut out = SymFunc::zero(self.n + other.n, Basis::P);
        for (p, x) in &a.coeffs {
            for (q, y) in &b.coeffs {
                out.add_term(p.union(q), x.clone() * y);
            }
        }
        out
    }
}

impl SymFunc<Rat> {
    pub fn p(lambda: Partition) -> Self {
        SymFunc::monomial(Basis::P, lambda, Rat::one())
    }

    pub fn s(lambda: Partition) -> Self {
        SymFunc::monomial(Basis::S, lambda, Rat::one())
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        SymFunc::monomial(basis, lambda, Rat::one())
    }

    /// Terms in display order: power sums from `(1ⁿ)` up to `(n)`, Schur
    /// functions from `(n)` down to `(1ⁿ)`.
    pub fn display_terms(&self) -> Vec<(&Partition, &Rat)> {
        let mut v: Vec<_> = self.coeffs.iter().collect();
        if self.basis == Basis::P {
            v.reverse();
        }
        v
    }

    /// Compact term string such as `2p_{1,1}-2p_2` or `-s_3+s_{2,1}+3s_{1,1,1}`.
    pub fn term_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.display_terms().into_iter().enumerate() {
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            if !abs.is_one() {
                if abs.is_integer() {
                    out.push_str(&abs.to_integer().to_string());
                } else {
                    out.push_str(&format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom()));
                }
            }
            let sub = p.subscript();
            if p.len() == 1 && sub.len() == 1 {
                out.push_str(&format!("{}_{}", self.basis.letter(), sub));
            } else {
                out.push_str(&format!("{}_{{{}}}", self.basis.letter(), sub));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SymFuncJson::from(self)).expect("symmetric function serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: SymFuncJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Usage(format!("bad symmetric function JSON: {e}")))?;
        raw.try_into()
    }
}

impl<R: Ring> Add for SymFunc<R> {
    type Output = SymFunc<R>;
    /// Sum in the basis of the left operand. Panics on unequal weights.
    fn add(self, rhs: SymFunc<R>) -> SymFunc<R> {
        assert_eq!(self.n, rhs.n, "cannot add symmetric functions of different degree");
        let rhs = rhs.convert(self.basis);
        let mut out = self;
        for (p, c) in rhs.coeffs {
            out.add_term(p, c);
        }
        out
    }
}

impl<R: Ring> Neg for SymFunc<R> {
    type Output = SymFunc<R>;
    fn neg(self) -> SymFunc<R> {
        let coeffs = self.coeffs.into_iter().map(|(p, c)| (p, -c)).collect();
        SymFunc {
            n: self.n,
            basis: self.basis,
            coeffs,
        }
    }
}

impl<R: Ring> Sub for SymFunc<R> {
    type Output = SymFunc<R>;
    fn sub(self, rhs: SymFunc<R>) -> SymFunc<R> {
        self + (-rhs)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for SymFunc<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{}{}", self.basis.letter(), p)?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for SymFunc<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFunc(n={}, {:?}, {:?})", self.n, self.basis, self.coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SymFuncJson {
    n: usize,
    basis: Basis,
    terms: Vec<TermJson>,
}

impl From<&SymFunc<Rat>> for SymFuncJson {
    fn from(f: &SymFunc<Rat>) -> Self {
        SymFuncJson {
            n: f.n,
            basis: f.basis,
            terms: f
                .coeffs
                .iter()
                .map(|(p, c)| TermJson {
                    partition: p.clone(),
                    coeff: rat_to_string(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<SymFuncJson> for SymFunc<Rat> {
    type Error = Error;
    fn try_from(raw: SymFuncJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c = parse_rat(&t.coeff).ok_or_else(|| Error::Usage(format!("bad coefficient '{}'", t.coeff)))?;
            terms.push((Partition::new(t.partition.parts().to_vec()), c));
        }
        SymFunc::from_terms(raw.n, raw.basis, terms)
    }
}

impl Serialize for SymFunc<Rat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymFuncJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc<Rat> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SymFuncJson::deserialize(d)?;
        raw.try_into().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rat, ratio, Poly};

    fn p(parts: &[usize]) -> SymFunc {
        SymFunc::p(parts.into())
    }

    fn s(parts: &[usize]) -> SymFunc {
        SymFunc::s(parts.into())
    }

    #[test]
    fn convert_examples() {
        assert_eq!(p(&[1, 1]).convert(Basis::S), s(&[2]) + s(&[1, 1]));
        assert_eq!(p(&[2]).convert(Basis::S), s(&[2]) - s(&[1, 1]));
        for n in 1..=6 {
            let expect = SymFunc::from_terms(
                n,
                Basis::P,
                partitions_of(n).into_iter().map(|m| {
                    let z = Rat::from_integer(m.z());
                    (m, z.recip())
                }),
            )
            .unwrap();
            assert_eq!(SymFunc::s(Partition::row(n)).convert(Basis::P), expect);
        }
    }

    #[test]
    fn hall_examples() {
        assert_eq!(p(&[2, 1]).hall(&p(&[2, 1])).unwrap(), rat(2));
        assert_eq!(p(&[2]).hall(&p(&[1, 1])).unwrap(), rat(0));
        for a in partitions_of(4) {
            for b in partitions_of(4) {
                let expect = if a == b { rat(1) } else { rat(0) };
                let sa = SymFunc::s(a.clone());
                let sb = SymFunc::s(b.clone());
                assert_eq!(sa.hall(&sb).unwrap(), expect);
                assert_eq!(sa.convert(Basis::P).hall(&sb.convert(Basis::P)).unwrap(), expect);
            }
        }
        assert!(matches!(p(&[2]).hall(&p(&[1])), Err(Error::WeightMismatch(2, 1))));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(p(&[2]).omega(), -p(&[2]));
        assert_eq!(p(&[1, 1]).omega(), p(&[1, 1]));
        assert_eq!(s(&[2]).omega(), s(&[1, 1]));
        for n in 1..=6 {
            let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
            for l in partitions_of(n) {
                let x = SymFunc::s(l.clone());
                assert_eq!(x.omega(), SymFunc::s(l.conjugate()).scale(&sign));
                assert_eq!(x.omega_with(OmegaConvention::Classical), SymFunc::s(l.conjugate()));
            }
        }
    }

    #[test]
    fn pi_examples() {
        assert_eq!(p(&[2]).pi_iso(), p(&[2]).scale(&ratio(-1, 2)));
        assert_eq!(p(&[1, 1]).pi_iso(), p(&[1, 1]));
        assert_eq!(p(&[2, 1]).pi_iso(), p(&[2, 1]).scale(&ratio(1, 2)));
        let x = s(&[2, 1]) + s(&[3]).scale(&rat(5));
        assert_eq!(x.pi_iso().pi_iso_inverse(), x);
    }

    #[test]
    fn pleth_scale_over_polynomials() {
        let f: SymFunc<Poly> = SymFunc::monomial(Basis::P, [2].into(), Poly::one());
        let c = |k: usize| Poly::one_minus_t_pow(k) * Poly::one_minus_t_pow(3 * k);
        let g = f.pleth_scale(c);
        assert_eq!(
            g.coeff(&[2].into()),
            Poly::one_minus_t_pow(2) * Poly::one_minus_t_pow(6)
        );
        assert_eq!(f.pleth_scale(|_| Poly::one()), f);
        let x = p(&[2, 1]) + p(&[1, 1, 1]).scale(&rat(3));
        assert_eq!(x.pleth_scale(|_| rat(-1)), x.omega());
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(p(&[2]).multiply(&p(&[1])), p(&[2, 1]));
        assert_eq!(p(&[1]).multiply(&p(&[1])), p(&[1, 1]));
        let unit = SymFunc::p(Partition::empty());
        assert_eq!(unit.multiply(&p(&[3, 1])), p(&[3, 1]));
    }

    #[test]
    fn json_round_trip() {
        let x = p(&[2, 1]).scale(&ratio(-5, 2)) + p(&[3]);
        let v = x.to_json();
        assert_eq!(v["basis"], "p");
        assert_eq!(v["terms"][0]["partition"], serde_json::json!([3]));
        assert_eq!(v["terms"][1]["coeff"], "-5/2");
        assert_eq!(SymFunc::from_json(&v).unwrap(), x);
    }

    #[test]
    fn term_strings() {
        let x = p(&[1, 1]).scale(&rat(2)) - p(&[2]).scale(&rat(2));
        assert_eq!(x.term_string(), "2p_{1,1}-2p_2");
        let y = s(&[2, 1]) + s(&[1, 1, 1]).scale(&rat(3)) - s(&[3]);
        assert_eq!(y.term_string(), "-s_3+s_{2,1}+3s_{1,1,1}");
        assert_eq!(SymFunc::zero(2, Basis::S).term_string(), "0");
    }
}
