//! The ring `(Λⁿ, ⊙)`: multiplication by `s_λ` is the transported operator of
//! the fixed-point weights `K̃_{λμ}(q^{-1}, t^{-1})`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{CupProduct, Normalization};
use crate::error::{Error, Result};
use crate::exactring::Rat;
use crate::linalg::LinOperator;
use crate::macdonald::{macdonald_basis, MacdonaldBasis, Specialization};
use crate::operators::{graded_component, op_e, op_gamma, transport, FixedPointWeights};
use crate::partitions::{partitions_of, Partition};
use crate::symfunc::{Basis, SymFunc};

/// How many times a degenerate specialization is bumped before giving up.
pub const MAX_RETRIES: u32 = 4;

/// Runs `f` on `start`, moving to `A + 1` after `PoleAtOne` or `DegenerateSpecialization`.
pub fn with_retry<T>(start: Specialization, f: impl Fn(Specialization) -> Result<T>) -> Result<T> {
    let mut spec = start;
    let mut attempt = 0;
    loop {
        match f(spec) {
            Err(Error::PoleAtOne { .. } | Error::DegenerateSpecialization { .. }) if attempt < MAX_RETRIES => {
                attempt += 1;
                spec = spec.bumped();
            }
            other => return other,
        }
    }
}

fn start_spec(n: usize, a: Option<u32>) -> Result<Specialization> {
    match a {
        Some(a) => Specialization::new(n, a),
        None => Ok(Specialization::default_for(n)),
    }
}

/// `Λⁿ` with its induced product, holding the operators of multiplication by
/// each `s_λ` in the Schur basis.
pub struct OdotRing {
    mb: MacdonaldBasis,
    schur_ops: Vec<LinOperator<Rat>>,
}

impl OdotRing {
    /// Uses `A = n + 2`, or `a` when given, bumping on degeneracy.
    pub fn new(n: usize, a: Option<u32>) -> Result<OdotRing> {
        with_retry(start_spec(n, a)?, |spec| OdotRing::build(n, spec))
    }

    fn build(n: usize, spec: Specialization) -> Result<OdotRing> {
        let mb = macdonald_basis(n, spec)?;
        let schur_ops = mb
            .partitions()
            .par_iter()
            .map(|lambda| transport(&FixedPointWeights::dual_kostka(&mb, lambda), &mb))
            .collect::<Result<_>>()?;
        Ok(OdotRing { mb, schur_ops })
    }

    pub fn n(&self) -> usize {
        self.mb.n()
    }

    pub fn spec(&self) -> Specialization {
        self.mb.spec()
    }

    pub fn macdonald(&self) -> &MacdonaldBasis {
        &self.mb
    }

    /// The unit `s_(n)`.
    pub fn unit(&self) -> SymFunc {
        SymFunc::s(Partition::row(self.n()))
    }

    /// Multiplication by `s_λ`, in the Schur basis.
    pub fn schur_operator(&self, lambda: &Partition) -> &LinOperator<Rat> {
        &self.schur_ops[crate::partitions::index_of(self.mb.partitions(), lambda)]
    }

    /// Multiplication by `x`, in the Schur basis.
    pub fn multiplication_operator(&self, x: &SymFunc) -> LinOperator<Rat> {
        let x = x.convert(Basis::S);
        let mut out = LinOperator::zero(self.n(), Basis::S);
        for (lambda, c) in x.terms() {
            out = out.add(&self.schur_operator(lambda).scale(c));
        }
        out
    }

    fn check_weights(&self, x: &SymFunc, y: &SymFunc) -> Result<()> {
        if x.n() != self.n() {
            return Err(Error::WeightMismatch(self.n(), x.n()));
        }
        if y.n() != self.n() {
            return Err(Error::WeightMismatch(self.n(), y.n()));
        }
        Ok(())
    }

    /// `x ⊙ y`, expressed in the basis of `x`.
    pub fn odot(&self, x: &SymFunc, y: &SymFunc) -> Result<SymFunc> {
        self.check_weights(x, y)?;
        let ys = y.convert(Basis::S);
        let mut out = SymFunc::zero(self.n(), Basis::S);
        for (lambda, c) in x.convert(Basis::S).terms() {
            out = out + self.schur_operator(lambda).apply(&ys).scale(c);
        }
        Ok(out.convert(x.basis()))
    }

    /// `x ⊙ y` computed from the p-basis operators `p_μ ⊙ - = Σ_λ χ^λ_μ (s_λ ⊙ -)`.
    pub fn odot_p_route(&self, x: &SymFunc, y: &SymFunc) -> Result<SymFunc> {
        self.check_weights(x, y)?;
        let yp = y.convert(Basis::P);
        let mut out = SymFunc::zero(self.n(), Basis::P);
        for (mu, c) in x.convert(Basis::P).terms() {
            let op = self
                .multiplication_operator(&SymFunc::p(mu.clone()))
                .change_basis(Basis::P);
            out = out + op.apply(&yp).scale(c);
        }
        Ok(out.convert(x.basis()))
    }

    /// All `p(n)²` products of basis elements.
    pub fn table(&self, basis: Basis) -> ProductTable {
        let parts = partitions_of(self.n());
        let pairs: Vec<(Partition, Partition)> = parts
            .iter()
            .flat_map(|r| parts.iter().map(move |c| (r.clone(), c.clone())))
            .collect();
        let cells = pairs
            .into_par_iter()
            .map(|(r, c)| {
                let x = SymFunc::basis_element(basis, r.clone());
                let y = SymFunc::basis_element(basis, c.clone());
                let v = self.odot(&x, &y).expect("equal weights");
                ((r, c), v)
            })
            .collect();
        ProductTable {
            n: self.n(),
            basis,
            a: self.spec().a(),
            cells,
        }
    }

    /// `gr(p_λ ⊙ p_μ)`: the part of `p_λ ⊙ p_μ` of age exactly `age λ + age μ`.
    pub fn graded_product(&self, lambda: &Partition, mu: &Partition) -> SymFunc {
        let prod = self
            .odot(&SymFunc::p(lambda.clone()), &SymFunc::p(mu.clone()))
            .expect("equal weights");
        age_part(&prod, lambda.age() + mu.age())
    }

    /// `p_λ ⊙ p_μ` only involves `p_ν` with `age ν ≥ age λ + age μ`.
    pub fn age_filtration_holds(&self) -> bool {
        let parts = partitions_of(self.n());
        parts.iter().all(|l| {
            parts.iter().all(|m| {
                let prod = self
                    .odot(&SymFunc::p(l.clone()), &SymFunc::p(m.clone()))
                    .expect("equal weights");
                let ok = prod.terms().all(|(nu, _)| nu.age() >= l.age() + m.age());
                ok
            })
        })
    }
}

fn age_part(f: &SymFunc, age: usize) -> SymFunc {
    let f = f.convert(Basis::P);
    SymFunc::from_terms(
        f.n(),
        Basis::P,
        f.terms()
            .filter(|(nu, _)| nu.age() == age)
            .map(|(nu, c)| (nu.clone(), c.clone())),
    )
    .expect("same weight")
}

/// Products of all pairs of basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductTable {
    pub n: usize,
    pub basis: Basis,
    pub a: u32,
    pub cells: BTreeMap<(Partition, Partition), SymFunc>,
}

impl ProductTable {
    pub fn get(&self, row: &Partition, col: &Partition) -> &SymFunc {
        &self.cells[&(row.clone(), col.clone())]
    }

    /// Row and column labels in display order: `(1ⁿ)` first for power sums,
    /// `(n)` first for Schur functions.
    pub fn labels(&self) -> Vec<Partition> {
        let mut parts = partitions_of(self.n);
        if self.basis == Basis::P {
            parts.reverse();
        }
        parts
    }

    pub fn is_symmetric(&self) -> bool {
        self.cells.iter().all(|((r, c), v)| self.get(c, r) == v)
    }
}

/// The full ⊙ table, starting from `A = n + 2` unless `a` is given.
pub fn odot_table(n: usize, basis: Basis, a: Option<u32>) -> Result<ProductTable> {
    Ok(OdotRing::new(n, a)?.table(basis))
}

/// `𝓔_{ψ^j B_n}` in the p-basis, with the rank convention `ψ^0 = n`.
pub fn adams_operator(n: usize, j: usize, a: Option<u32>) -> Result<LinOperator<Rat>> {
    with_retry(start_spec(n, a)?, |spec| {
        let mb = macdonald_basis(n, spec)?;
        adams_operator_with(&mb, j)
    })
}

/// [`adams_operator`] on an existing Macdonald basis.
pub fn adams_operator_with(mb: &MacdonaldBasis, j: usize) -> Result<LinOperator<Rat>> {
    Ok(transport(&FixedPointWeights::adams(mb.spec(), j), mb)?.change_basis(Basis::P))
}

/// `Σ_k j^k 𝓔_k`, the conjectured form of the Adams operators.
pub fn graded_power_sum(n: usize, j: usize) -> LinOperator<Rat> {
    let e = op_e(n);
    let mut out = LinOperator::zero(n, Basis::P);
    let mut power = Rat::one();
    for k in 0..n as i64 {
        out = out.add(&graded_component(&e, k).scale(&power));
        power *= Rat::from_integer(BigInt::from(j));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdamsEntry {
    pub n: usize,
    pub j: usize,
    pub a: u32,
    pub equal: bool,
    /// Number of matrix entries on which the two sides differ.
    pub differing_entries: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdamsReport {
    pub entries: Vec<AdamsEntry>,
}

impl AdamsReport {
    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.equal)
    }
}

/// Compares `𝓔_{ψ^j B_n}` with `Σ_k j^k 𝓔_k` for `j = 0..=j_max`.
pub fn adams_conjecture_check(n: usize, j_max: usize, a: Option<u32>) -> Result<AdamsReport> {
    let entries = with_retry(start_spec(n, a)?, |spec| {
        let mb = macdonald_basis(n, spec)?;
        (0..=j_max)
            .map(|j| {
                let lhs = adams_operator_with(&mb, j)?;
                let rhs = graded_power_sum(n, j);
                let diff = lhs.sub(&rhs);
                let d = diff.matrix.rows();
                let differing = (0..d)
                    .flat_map(|r| (0..d).map(move |c| (r, c)))
                    .filter(|&(r, c)| !diff.matrix[(r, c)].is_zero())
                    .count();
                Ok(AdamsEntry {
                    n,
                    j,
                    a: spec.a(),
                    equal: differing == 0,
                    differing_entries: differing,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(AdamsReport { entries })
}

/// Outcome of comparing `gr ⊙` with the class-algebra product.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferReport {
    pub n: usize,
    /// `(-1)^n Π (p_λ gr⊙ p_μ) = (-1)^n Π p_λ ∪ (-1)^n Π p_μ` for all pairs.
    pub graded_via_pi: bool,
    /// The same with the lowest-age part of the full Γ in place of `(-1)^n Π`.
    pub graded_via_gamma: bool,
    /// `Γ(x ⊙ y)` equals the untruncated transported class product. Reported only.
    pub ungraded: bool,
}

/// Compares the associated graded of `⊙` with the calibrated cup product.
pub fn gamma_transfer_check(ring: &OdotRing, cup: &CupProduct) -> Result<TransferReport> {
    let n = ring.n();
    if cup.normalization().is_none() {
        return Err(Error::CalibrationMissing(n));
    }
    let gamma = op_gamma(n);
    let sign = if n.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
    let gamma0 = |f: &SymFunc| f.pi_iso().scale(&sign);
    let parts = partitions_of(n);
    let mut via_pi = true;
    let mut via_gamma = true;
    let mut ungraded = true;
    for l in &parts {
        for m in &parts {
            let (x, y) = (SymFunc::p(l.clone()), SymFunc::p(m.clone()));
            let target = l.age() + m.age();
            let gr = ring.graded_product(l, m);
            let cup_pi = cup.cup_graded(&gamma0(&x), &gamma0(&y))?;
            via_pi &= gamma0(&gr) == cup_pi;
            let gx = age_part(&gamma.apply(&x), l.age());
            let gy = age_part(&gamma.apply(&y), m.age());
            let full = ring.odot(&x, &y)?;
            via_gamma &= age_part(&gamma.apply(&full), target) == cup.cup_graded(&gx, &gy)?;
            ungraded &= gamma.apply(&full) == cup.class_product(&gamma.apply(&x), &gamma.apply(&y))?;
        }
    }
    Ok(TransferReport {
        n,
        graded_via_pi: via_pi,
        graded_via_gamma: via_gamma,
        ungraded,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CalibrationReport {
    /// Degrees used to select the normalization.
    pub fit_degrees: Vec<usize>,
    /// Every candidate that passes on all fit degrees.
    pub candidates: Vec<Normalization>,
    /// First passing candidate in family order, if any.
    pub chosen: Option<Normalization>,
    /// Validation verdicts of the chosen candidate per degree.
    pub validation: Vec<(usize, bool)>,
}

impl CalibrationReport {
    pub fn resolved(&self) -> bool {
        self.chosen.is_some() && self.validation.iter().all(|(_, ok)| *ok)
    }

    pub fn status(&self) -> &'static str {
        if self.resolved() {
            "resolved"
        } else {
            "unresolved"
        }
    }
}

/// Searches the normalization family for one under which the graded transfer
/// holds on `fit`, then validates it on `validate`.
pub fn calibrate_cup(fit: &[usize], validate: &[usize]) -> Result<CalibrationReport> {
    let mut rings = BTreeMap::new();
    for &n in fit.iter().chain(validate) {
        if let std::collections::btree_map::Entry::Vacant(e) = rings.entry(n) {
            e.insert(OdotRing::new(n, None)?);
        }
    }
    let passes = |norm: Normalization, n: usize| -> Result<bool> {
        let r = gamma_transfer_check(&rings[&n], &CupProduct::calibrated(n, norm))?;
        Ok(r.graded_via_pi)
    };
    let mut candidates = Vec::new();
    for norm in Normalization::family() {
        let mut ok = true;
        for &n in fit {
            ok &= passes(norm, n)?;
        }
        if ok {
            candidates.push(norm);
        }
    }
    let chosen = candidates.first().copied();
    let validation = match chosen {
        Some(norm) => validate
            .iter()
            .map(|&n| Ok((n, passes(norm, n)?)))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    Ok(CalibrationReport {
        fit_degrees: fit.to_vec(),
        candidates,
        chosen,
        validation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    fn p(parts: &[usize]) -> SymFunc {
        SymFunc::p(parts.into())
    }

    fn s(parts: &[usize]) -> SymFunc {
        SymFunc::s(parts.into())
    }

    #[test]
    fn degree_two_products() {
        let ring = OdotRing::new(2, None).unwrap();
        assert!(ring.odot(&p(&[2]), &p(&[2])).unwrap().is_zero());
        assert_eq!(
            ring.odot(&p(&[1, 1]), &p(&[1, 1])).unwrap(),
            p(&[1, 1]).scale(&rat(2)) - p(&[2]).scale(&rat(2))
        );
        assert_eq!(ring.odot(&p(&[1, 1]), &p(&[2])).unwrap(), p(&[2]).scale(&rat(2)));
        assert_eq!(
            ring.odot(&s(&[1, 1]), &s(&[1, 1])).unwrap(),
            s(&[1, 1]).scale(&rat(2)) - s(&[2])
        );
    }

    #[test]
    fn degree_three_schur_square() {
        let ring = OdotRing::new(3, None).unwrap();
        let expect = s(&[2, 1]) + s(&[1, 1, 1]).scale(&rat(3)) - s(&[3]);
        assert_eq!(ring.odot(&s(&[2, 1]), &s(&[2, 1])).unwrap(), expect);
    }

    #[test]
    fn unit_and_degree_one() {
        for n in 1..=3 {
            let ring = OdotRing::new(n, None).unwrap();
            for l in partitions_of(n) {
                assert_eq!(ring.odot(&ring.unit(), &s(l.parts())).unwrap(), s(l.parts()));
            }
        }
        let t = odot_table(1, Basis::P, None).unwrap();
        assert_eq!(t.get(&[1].into(), &[1].into()), &p(&[1]));
    }

    #[test]
    fn routes_agree() {
        let ring = OdotRing::new(3, None).unwrap();
        for a in partitions_of(3) {
            for b in partitions_of(3) {
                let x = s(a.parts()) + p(b.parts()).convert(Basis::S);
                let y = p(a.parts());
                assert_eq!(ring.odot(&x, &y).unwrap(), ring.odot_p_route(&x, &y).unwrap());
            }
        }
    }

    #[test]
    fn adams_first_power_is_e() {
        for n in 1..=3 {
            assert_eq!(adams_operator(n, 1, None).unwrap(), op_e(n));
        }
        for j in 0..=3 {
            assert_eq!(adams_operator(1, j, None).unwrap(), LinOperator::identity(1, Basis::P));
        }
        let zero = adams_operator(3, 0, None).unwrap();
        assert_eq!(zero, LinOperator::identity(3, Basis::P).scale(&rat(3)));
    }

    #[test]
    fn transfer_needs_calibration() {
        let ring = OdotRing::new(2, None).unwrap();
        let r = gamma_transfer_check(&ring, &CupProduct::uncalibrated(2));
        assert!(matches!(r, Err(Error::CalibrationMissing(2))));
    }

    #[test]
    fn retry_moves_to_next_curve() {
        let start = Specialization::new(2, 3).unwrap();
        let got = with_retry(start, |spec| {
            if spec.a() < 5 {
                Err(Error::DegenerateSpecialization {
                    a: spec.a(),
                    reason: "test".into(),
                })
            } else {
                Ok(spec.a())
            }
        });
        assert_eq!(got, Ok(5));
        let gave_up: Result<()> = with_retry(start, |_| {
            Err(Error::PoleAtOne {
                row: Partition::row(2),
                col: Partition::row(2),
            })
        });
        assert!(gave_up.is_err());
    }
}
