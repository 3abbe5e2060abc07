//! The operator Δ, the modified Macdonald basis `H̃_μ` under the one-variable
//! specialization `q = t^A`, and identities it must satisfy.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::characters::character_table;
use crate::error::{Error, Result};
use crate::exactring::{ExactDiv, Poly, Rat, RationalFunction};
use crate::linalg::{fraction_free_inverse, fraction_free_kernel, LinOperator, Matrix};
use crate::partitions::{b_weight, index_of, partitions_of, Partition};
use crate::symfunc::{Basis, SymFunc};

/// The curve `q = t^A` through `(1, 1)`. Requires `A > n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Specialization {
    n: usize,
    a: u32,
}

impl Specialization {
    pub fn new(n: usize, a: u32) -> Result<Specialization> {
        if (a as usize) <= n {
            return Err(Error::InvalidSpecialization { n, a });
        }
        Ok(Specialization { n, a })
    }

    /// `A = n + 2`.
    pub fn default_for(n: usize) -> Specialization {
        Specialization { n, a: n as u32 + 2 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    /// The next curve, used when a computation degenerates.
    pub fn bumped(&self) -> Specialization {
        Specialization {
            n: self.n,
            a: self.a + 1,
        }
    }

    /// `q^i t^j` as a power of `t`.
    pub fn exponent(&self, q_pow: i64, t_pow: i64) -> i64 {
        q_pow * self.a as i64 + t_pow
    }

    /// `(1 - t^k)(1 - q^k)`.
    pub fn hook_factor(&self, k: usize) -> Poly {
        Poly::one_minus_t_pow(k) * Poly::one_minus_t_pow(self.a as usize * k)
    }

    /// Δ-eigenvalue `1 - (1-q)(1-t) B_μ` of `H̃_μ`.
    pub fn eigenvalue(&self, mu: &Partition) -> Poly {
        Poly::one() - self.hook_factor(1) * b_weight(mu, 1, self.a)
    }
}

fn sign(k: usize) -> Rat {
    if k.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Matrix of Δ on `Λⁿ` in the p-basis.
///
/// `Δ p_λ = Σ_{I ⊆ parts} Π_{i∈I} c_{λ_i} · (-1)^m e_m · p_{λ∖I}` with
/// `m = |λ_I|`, `c_k = (1-t^k)(1-q^k)` and
/// `(-1)^m e_m = Σ_{ρ ⊢ m} (-1)^{l(ρ)} p_ρ / z_ρ`.
pub fn delta_matrix(n: usize, spec: Specialization) -> LinOperator<Poly> {
    let factors: Vec<Poly> = (0..=n).map(|k| spec.hook_factor(k)).collect();
    let signed_e: Vec<Vec<(Partition, Rat)>> = (0..=n)
        .map(|m| {
            partitions_of(m)
                .into_iter()
                .map(|rho| {
                    let c = sign(rho.len()) / Rat::from_integer(rho.z());
                    (rho, c)
                })
                .collect()
        })
        .collect();
    LinOperator::from_columns(n, Basis::P, |lambda| {
        let parts = lambda.parts();
        let mut out = SymFunc::zero(n, Basis::P);
        for mask in 0u32..(1 << parts.len()) {
            let mut coeff = Poly::one();
            let mut m = 0;
            let mut rest = Vec::new();
            for (i, &k) in parts.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    coeff = coeff * &factors[k];
                    m += k;
                } else {
                    rest.push(k);
                }
            }
            let rest = Partition::new(rest);
            for (rho, c) in &signed_e[m] {
                out.add_term(rest.union(rho), coeff.scale(c));
            }
        }
        out
    })
}

/// Modified Macdonald polynomials at `q = t^A`, stored through their Schur
/// expansion `H̃_μ = Σ_λ K̃_{λμ} s_λ`.
///
/// Invariant: every entry of `K` is a polynomial and row `(n)` is all ones.
pub struct MacdonaldBasis {
    spec: Specialization,
    parts: Vec<Partition>,
    kostka: Matrix<Poly>,
    inverse: OnceLock<Result<(Matrix<Poly>, Poly)>>,
}

impl std::fmt::Debug for MacdonaldBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MacdonaldBasis(n={}, A={}) {:?}",
            self.spec.n, self.spec.a, self.kostka
        )
    }
}

fn eigenvector(delta: &Matrix<Poly>, spec: Specialization, mu: &Partition, scale: &Rat) -> Result<Vec<Poly>> {
    let d = delta.rows();
    let eta = spec.eigenvalue(mu).scale(scale);
    let mut m = delta.clone();
    for i in 0..d {
        m[(i, i)] = m[(i, i)].clone() - eta.clone();
    }
    let ker = fraction_free_kernel(&m).map_err(|_| Error::DegenerateSpecialization {
        a: spec.a,
        reason: format!("elimination for {mu} hit an inexact division"),
    })?;
    if ker.len() != 1 {
        return Err(Error::KernelDimension {
            mu: mu.clone(),
            dim: ker.len(),
        });
    }
    Ok(ker.into_iter().next().unwrap())
}

/// Solves the `p(n)` eigenproblems of Δ and normalizes each eigenvector so
/// that its `s_(n)` coefficient is 1.
pub fn macdonald_basis(n: usize, spec: Specialization) -> Result<MacdonaldBasis> {
    if spec.n != n {
        return Err(Error::InvalidSpecialization { n, a: spec.a });
    }
    Specialization::new(n, spec.a)?;
    let parts = partitions_of(n);
    let etas: Vec<Poly> = parts.iter().map(|m| spec.eigenvalue(m)).collect();
    for i in 0..parts.len() {
        for j in 0..i {
            if etas[i] == etas[j] {
                return Err(Error::DegenerateEigenvalue(parts[j].clone(), parts[i].clone()));
            }
        }
    }
    // n! clears every z_ρ denominator in Δ
    let fact = Rat::from_integer((1..=n).map(BigInt::from).product());
    let delta = delta_matrix(n, spec).matrix.map(|p| p.scale(&fact));
    let table = character_table(n);
    let columns: Vec<Vec<Poly>> = parts
        .par_iter()
        .map(|mu| {
            let v = eigenvector(&delta, spec, mu, &fact)?;
            // s-coefficients: K_λ = Σ_ρ χ^λ_ρ v_ρ
            let k: Vec<Poly> = (0..parts.len())
                .map(|l| {
                    let mut acc = Poly::zero();
                    for (r, vr) in v.iter().enumerate() {
                        let chi = table.chi[l][r];
                        if chi != 0 && !vr.is_zero() {
                            acc = acc + vr.scale(&Rat::from_integer(chi.into()));
                        }
                    }
                    acc
                })
                .collect();
            let lead = k[0].clone();
            if lead.is_zero() {
                return Err(Error::DegenerateSpecialization {
                    a: spec.a,
                    reason: format!("eigenvector of {mu} has no s_(n) component"),
                });
            }
            k.iter()
                .enumerate()
                .map(|(l, x)| {
                    x.exact_div(&lead).ok_or_else(|| Error::NonPolynomialKostka {
                        lambda: parts[l].clone(),
                        mu: mu.clone(),
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let d = parts.len();
    let kostka = Matrix::from_fn(d, d, |i, j| columns[j][i].clone());
    Ok(MacdonaldBasis {
        spec,
        parts,
        kostka,
        inverse: OnceLock::new(),
    })
}

impl MacdonaldBasis {
    pub fn spec(&self) -> Specialization {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    /// `K̃_{λμ}` at `q = t^A`, rows `λ` (Schur), columns `μ` (Macdonald).
    pub fn kostka_matrix(&self) -> &Matrix<Poly> {
        &self.kostka
    }

    pub fn kostka(&self, lambda: &Partition, mu: &Partition) -> &Poly {
        &self.kostka[(index_of(&self.parts, lambda), index_of(&self.parts, mu))]
    }

    /// `(X, d)` with `K^{-1} = X / d`, computed once.
    pub fn scaled_inverse(&self) -> Result<&(Matrix<Poly>, Poly)> {
        self.inverse
            .get_or_init(|| fraction_free_inverse(&self.kostka))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `H̃_μ` in the Schur basis.
    pub fn h_tilde(&self, mu: &Partition) -> SymFunc<Poly> {
        let j = index_of(&self.parts, mu);
        SymFunc::from_vector(self.n(), Basis::S, &self.kostka.column(j))
    }

    /// `Δ H̃_μ = η_μ H̃_μ` for every `μ`, checked in the p-basis.
    pub fn eigen_relation_holds(&self) -> bool {
        let delta = delta_matrix(self.n(), self.spec);
        self.parts.par_iter().all(|mu| {
            let h = self.h_tilde(mu).convert(Basis::P);
            delta.apply(&h) == h.scale(&self.spec.eigenvalue(mu))
        })
    }

    /// Row `(n)` is all ones and row `(1ⁿ)` is `t^{n(μ) + A n(μ')}`.
    pub fn normalization_holds(&self) -> bool {
        let last = self.parts.len() - 1;
        self.parts.iter().enumerate().all(|(j, mu)| {
            let e = mu.n_stat() + self.spec.a as usize * mu.conjugate().n_stat();
            self.kostka[(0, j)].is_one() && self.kostka[(last, j)] == Poly::monomial(Rat::one(), e)
        })
    }

    /// Every specialized Kostka entry has non-negative integer coefficients.
    pub fn kostka_nonnegative(&self) -> bool {
        (0..self.parts.len()).all(|i| (0..self.parts.len()).all(|j| self.kostka[(i, j)].has_nonneg_integer_coeffs()))
    }

    /// Gram matrix `G[μ][λ] = ⟨H̃_μ, ω H̃_λ[X(1-q)(1-t)]⟩`.
    pub fn duality_matrix(&self) -> Matrix<Poly> {
        let hs: Vec<SymFunc<Poly>> = self.parts.iter().map(|m| self.h_tilde(m).convert(Basis::P)).collect();
        let twisted: Vec<SymFunc<Poly>> = hs
            .iter()
            .map(|h| h.pleth_scale(|k| self.spec.hook_factor(k)).omega())
            .collect();
        let d = self.parts.len();
        let entries: Vec<Poly> = (0..d * d)
            .into_par_iter()
            .map(|ij| hs[ij / d].hall(&twisted[ij % d]).expect("equal weights"))
            .collect();
        Matrix::from_fn(d, d, |i, j| entries[i * d + j].clone())
    }

    /// Off-diagonal pairings vanish and diagonal ones do not.
    pub fn duality_holds(&self) -> bool {
        let g = self.duality_matrix();
        (0..g.rows()).all(|i| (0..g.cols()).all(|j| g[(i, j)].is_zero() == (i != j)))
    }
}

/// `1 - t^e` for any nonzero integer `e`.
fn one_minus_t_pow_signed(e: i64) -> RationalFunction {
    if e > 0 {
        RationalFunction::from_poly(Poly::one_minus_t_pow(e as usize))
    } else {
        let k = (-e) as usize;
        RationalFunction::new(-Poly::one_minus_t_pow(k), Poly::one(), e).expect("nonzero denominator")
    }
}

/// One p-coefficient on which the two sides of the fixed-point identity differ.
#[derive(Clone, Debug, PartialEq)]
pub struct BottMismatch {
    pub partition: Partition,
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BottReport {
    pub n: usize,
    pub a: u32,
    pub mismatches: Vec<BottMismatch>,
}

impl BottReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks, in the p-basis over `ℚ(t)`,
/// `Σ_μ H̃_μ / Π_{x∈μ} (1 - t^{1+l} q^{-a})(1 - t^{-l} q^{1+a})
///   = Σ_λ z_λ^{-1} Π_i p_{λ_i} / ((1-t^{λ_i})(1-q^{λ_i}))`.
pub fn bott_identity_check(mb: &MacdonaldBasis) -> BottReport {
    let spec = mb.spec;
    let n = spec.n;
    let parts = partitions_of(n);
    let mut lhs: Vec<RationalFunction> = vec![RationalFunction::zero(); parts.len()];
    for mu in &parts {
        let mut weight = RationalFunction::one();
        for c in mu.cells() {
            let (a, l) = (c.arm as i64, c.leg as i64);
            weight = weight * one_minus_t_pow_signed(spec.exponent(-a, 1 + l));
            weight = weight * one_minus_t_pow_signed(spec.exponent(1 + a, -l));
        }
        let weight = weight.recip().expect("fixed-point weights are nonzero");
        let h = mb.h_tilde(mu).convert(Basis::P);
        for (i, lam) in parts.iter().enumerate() {
            let c = h.coeff(lam);
            if !c.is_zero() {
                lhs[i] = lhs[i].clone() + RationalFunction::from_poly(c) * &weight;
            }
        }
    }
    let mut mismatches = Vec::new();
    for (i, lam) in parts.iter().enumerate() {
        let mut den = Poly::one();
        for &k in lam.parts() {
            den = den * spec.hook_factor(k);
        }
        let z = Poly::constant(Rat::from_integer(lam.z()));
        let rhs = RationalFunction::new(Poly::one(), den * z, 0).expect("nonzero denominator");
        if lhs[i] != rhs {
            mismatches.push(BottMismatch {
                partition: lam.clone(),
                lhs: lhs[i].clone(),
                rhs,
            });
        }
    }
    BottReport {
        n,
        a: spec.a,
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    fn poly(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn specialization_bounds() {
        assert!(Specialization::new(3, 3).is_err());
        assert_eq!(Specialization::new(3, 4).unwrap().a(), 4);
        assert_eq!(Specialization::default_for(4).a(), 6);
    }

    #[test]
    fn delta_in_degree_one() {
        let spec = Specialization::new(1, 3).unwrap();
        let d = delta_matrix(1, spec);
        assert_eq!(d.matrix[(0, 0)], Poly::one() - spec.hook_factor(1));
        assert_eq!(d.matrix[(0, 0)], spec.eigenvalue(&[1].into()));
    }

    #[test]
    fn delta_eigenvalues_in_degree_two() {
        let spec = Specialization::new(2, 3).unwrap();
        let d = delta_matrix(2, spec).matrix;
        let tr = d[(0, 0)].clone() + d[(1, 1)].clone();
        let det = d[(0, 0)].clone() * &d[(1, 1)] - d[(0, 1)].clone() * &d[(1, 0)];
        let base = poly(&[1, -1]) * poly(&[1, 0, 0, -1]);
        let e1 = Poly::one() - base.clone() * poly(&[1, 0, 0, 1]);
        let e2 = Poly::one() - base * poly(&[1, 1]);
        assert_eq!(tr, e1.clone() + e2.clone());
        assert_eq!(det, e1 * e2);
    }

    #[test]
    fn basis_in_degree_two() {
        let mb = macdonald_basis(2, Specialization::new(2, 3).unwrap()).unwrap();
        assert_eq!(mb.kostka(&[2].into(), &[2].into()), &Poly::one());
        assert_eq!(mb.kostka(&[1, 1].into(), &[2].into()), &poly(&[0, 0, 0, 1]));
        assert_eq!(mb.kostka(&[2].into(), &[1, 1].into()), &Poly::one());
        assert_eq!(mb.kostka(&[1, 1].into(), &[1, 1].into()), &Poly::t());
        let one = macdonald_basis(1, Specialization::default_for(1)).unwrap();
        assert_eq!(one.kostka_matrix()[(0, 0)], Poly::one());
    }

    #[test]
    fn basis_invariants_small() {
        for n in 1..=4 {
            let mb = macdonald_basis(n, Specialization::default_for(n)).unwrap();
            assert!(mb.eigen_relation_holds(), "n={n}");
            assert!(mb.normalization_holds(), "n={n}");
            assert!(mb.kostka_nonnegative(), "n={n}");
        }
    }

    #[test]
    fn kostka_at_one_counts_tableaux() {
        // at q = t = 1 every column is the Frobenius image of the regular representation
        for n in 1..=4 {
            let mb = macdonald_basis(n, Specialization::default_for(n)).unwrap();
            let t = character_table(n);
            for j in 0..mb.partitions().len() {
                for (i, lam) in mb.partitions().iter().enumerate() {
                    assert_eq!(mb.kostka_matrix()[(i, j)].eval(&rat(1)), rat(t.degree(lam)));
                }
            }
        }
    }

    #[test]
    fn duality_pattern_small() {
        for n in 1..=3 {
            let mb = macdonald_basis(n, Specialization::default_for(n)).unwrap();
            assert!(mb.duality_holds(), "n={n}");
        }
    }

    #[test]
    fn bott_identity_small() {
        for (n, a) in [(1, 2), (2, 3), (3, 4)] {
            let mb = macdonald_basis(n, Specialization::new(n, a).unwrap()).unwrap();
            let report = bott_identity_check(&mb);
            assert!(report.holds(), "{report:?}");
        }
    }

    #[test]
    fn scaled_inverse_is_inverse() {
        let mb = macdonald_basis(3, Specialization::default_for(3)).unwrap();
        let (x, d) = mb.scaled_inverse().unwrap();
        let prod = mb.kostka_matrix().mul(x);
        assert_eq!(prod, Matrix::identity(3).scale(d));
    }
}
