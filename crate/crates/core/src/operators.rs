//! Closed-form operators on `Λⁿ` and the transport of fixed-point weights to
//! operators at `q = t = 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::characters::character_table;
use crate::error::{Error, Result};
use crate::exactring::{series_divide, ExactDiv, Poly, Rat, RationalFunction, TruncSeries};
use crate::linalg::{LinOperator, Matrix};
use crate::macdonald::{MacdonaldBasis, Specialization};
use crate::partitions::{b_weight, partitions_of, Partition};
use crate::symfunc::{Basis, OmegaConvention, SymFunc};

/// Subset expansion shared by 𝒟 and 𝓔: `p_λ ↦ Σ_{I≠∅} w(λ_I) p_{|λ_I|} p_{λ∖I}`.
fn subset_operator(n: usize, weight: impl Fn(&[usize]) -> Rat + Sync) -> LinOperator<Rat> {
    LinOperator::from_columns(n, Basis::P, |lambda| {
        let parts = lambda.parts();
        let mut out = SymFunc::zero(n, Basis::P);
        for mask in 1u32..(1 << parts.len()) {
            let mut chosen = Vec::new();
            let mut rest = Vec::new();
            for (i, &k) in parts.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    chosen.push(k);
                } else {
                    rest.push(k);
                }
            }
            rest.push(chosen.iter().sum());
            out.add_term(Partition::new(rest), weight(&chosen));
        }
        out
    })
}

/// `𝒟(p_λ) = Σ_{I≠∅} (-1)^{|I|-1} ⟨λ_I⟩ p_{|λ_I|} p_{λ∖I}`.
pub fn op_d(n: usize) -> LinOperator<Rat> {
    subset_operator(n, |chosen| {
        let prod: u64 = chosen.iter().map(|&k| k as u64).product();
        let v = Rat::from_integer(BigInt::from(prod));
        if chosen.len() % 2 == 1 {
            v
        } else {
            -v
        }
    })
}

/// `𝓔(p_λ) = Σ_{I≠∅} |λ_I| p_{|λ_I|} p_{λ∖I}`: tensoring by the tautological bundle.
pub fn op_e(n: usize) -> LinOperator<Rat> {
    subset_operator(n, |chosen| {
        Rat::from_integer(BigInt::from(chosen.iter().sum::<usize>()))
    })
}

/// `Π`: `p_λ ↦ (-1)^{l(λ)} p_λ / ⟨λ⟩`.
pub fn op_pi(n: usize) -> LinOperator<Rat> {
    LinOperator::from_columns(n, Basis::P, |l| SymFunc::p(l.clone()).pi_iso())
}

/// The change of basis Γ between the Chern-character and power-sum pictures:
///
/// `Γ(p_μ) = Σ_ν z_ν^{-1} Σ_λ h(λ)^{-1} χ^λ_ν χ^λ_μ [t^{n-l(ν)}] P_{λμ}(t)` with
/// `P_{λμ} = e^{-n(λ)t} Π_{x∈λ} (1 - e^{h(x)t}) / Π_i (1 - e^{μ_i t})`.
///
/// Each factor `1 - e^{ht}` is stored as `t` times a unit, so
/// `P_{λμ} = t^{n-l(μ)} U_{λμ}` and the wanted coefficient is
/// `[t^{l(μ)-l(ν)}] U_{λμ}`.
pub fn op_gamma(n: usize) -> LinOperator<Rat> {
    let table = character_table(n);
    let parts = table.parts.clone();
    let order = n + 1;
    let numerators: Vec<TruncSeries> = parts
        .iter()
        .map(|lam| {
            let shift = -Rat::from_integer(BigInt::from(lam.n_stat()));
            let mut s = TruncSeries::exp_linear(&shift, order);
            for c in lam.cells() {
                let h = Rat::from_integer(BigInt::from(c.hook));
                s = s.mul(&TruncSeries::one_minus_exp_over_t(&h, order));
            }
            s
        })
        .collect();
    let hook_products: Vec<Rat> = parts
        .iter()
        .map(|l| Rat::from_integer(BigInt::from(l.hook_product())))
        .collect();
    let columns: Vec<Vec<Rat>> = parts
        .par_iter()
        .enumerate()
        .map(|(mi, mu)| {
            let mut den = TruncSeries::one(order);
            for &k in mu.parts() {
                let h = Rat::from_integer(BigInt::from(k));
                den = den.mul(&TruncSeries::one_minus_exp_over_t(&h, order));
            }
            let units: Vec<TruncSeries> = numerators
                .iter()
                .map(|num| series_divide(num, &den, 0).expect("denominator is a unit"))
                .collect();
            parts
                .iter()
                .enumerate()
                .map(|(ni, nu)| {
                    if nu.len() > mu.len() {
                        return Rat::zero();
                    }
                    let k = mu.len() - nu.len();
                    let mut acc = Rat::zero();
                    for (li, unit) in units.iter().enumerate() {
                        let chi = table.chi[li][ni] * table.chi[li][mi];
                        if chi != 0 {
                            acc += unit.coeff(k) * Rat::from_integer(BigInt::from(chi)) / &hook_products[li];
                        }
                    }
                    acc / Rat::from_integer(nu.z())
                })
                .collect()
        })
        .collect();
    let d = parts.len();
    LinOperator::new(n, Basis::P, Matrix::from_fn(d, d, |i, j| columns[j][i].clone()))
}

/// Matrix of ω in the given basis and convention.
pub fn op_omega(n: usize, basis: Basis, conv: OmegaConvention) -> LinOperator<Rat> {
    LinOperator::from_columns(n, basis, |l| SymFunc::basis_element(basis, l.clone()).omega_with(conv))
}

/// Keeps the entries whose row age minus column age equals `k`. Works in the p-basis.
pub fn graded_component(op: &LinOperator<Rat>, k: i64) -> LinOperator<Rat> {
    let op = op.change_basis(Basis::P);
    let parts = partitions_of(op.n);
    let d = parts.len();
    let m = Matrix::from_fn(d, d, |i, j| {
        if parts[i].age() as i64 - parts[j].age() as i64 == k {
            op.matrix[(i, j)].clone()
        } else {
            Rat::zero()
        }
    });
    LinOperator::new(op.n, Basis::P, m)
}

/// Weight `F_μ` of a class at each torus-fixed point `ξ_μ`, under `q = t^A`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointWeights {
    pub n: usize,
    pub spec: Specialization,
    /// Indexed by `partitions_of(n)` in canonical order.
    pub w: Vec<RationalFunction>,
}

impl FixedPointWeights {
    pub fn from_fn(spec: Specialization, f: impl Fn(&Partition) -> RationalFunction) -> Self {
        let n = spec.n();
        FixedPointWeights {
            n,
            spec,
            w: partitions_of(n).iter().map(f).collect(),
        }
    }

    /// The trivial bundle: all ones.
    pub fn trivial(spec: Specialization) -> Self {
        FixedPointWeights::from_fn(spec, |_| RationalFunction::one())
    }

    /// The tautological bundle: `B_μ(q, t)`.
    pub fn tautological(spec: Specialization) -> Self {
        FixedPointWeights::adams(spec, 1)
    }

    /// Adams power `ψ^j` of the tautological bundle: `B_μ(q^j, t^j)`.
    /// At `j = 0` every weight is the rank `n`.
    pub fn adams(spec: Specialization, j: usize) -> Self {
        FixedPointWeights::from_fn(spec, |mu| RationalFunction::from_poly(b_weight(mu, j, spec.a())))
    }

    /// Δ-eigenvalues `1 - (1-q)(1-t) B_μ`.
    pub fn delta_eigenvalues(spec: Specialization) -> Self {
        FixedPointWeights::from_fn(spec, |mu| RationalFunction::from_poly(spec.eigenvalue(mu)))
    }

    /// `K̃_{λμ}(q^{-1}, t^{-1})`: the weights whose transported operator is
    /// multiplication by `s_λ`.
    pub fn dual_kostka(mb: &MacdonaldBasis, lambda: &Partition) -> Self {
        FixedPointWeights::from_fn(mb.spec(), |mu| {
            RationalFunction::from_poly(mb.kostka(lambda, mu).clone()).invert_variable()
        })
    }
}

/// `∇_F = K diag(F) K^{-1}` in the Schur basis.
pub fn nabla_f(weights: &FixedPointWeights, mb: &MacdonaldBasis) -> Result<LinOperator<RationalFunction>> {
    if weights.spec != mb.spec() {
        return Err(Error::Usage(format!(
            "weights use A = {} but the Macdonald basis uses A = {}",
            weights.spec.a(),
            mb.spec().a()
        )));
    }
    let (x, d) = mb.scaled_inverse()?;
    let k = mb.kostka_matrix();
    let dim = k.rows();
    // F_μ = t^{s_μ} f_μ / g_μ; bring all weights over one denominator G
    let mut common = Poly::one();
    for w in &weights.w {
        let g = w.denominator();
        if !g.is_one() {
            let gcd = common.gcd(g);
            common = (common * g).exact_div(&gcd).expect("gcd divides");
        }
    }
    let s_min = weights.w.iter().map(|w| w.shift()).min().unwrap_or(0);
    let scaled: Vec<Poly> = weights
        .w
        .iter()
        .map(|w| {
            let cofactor = common.exact_div(w.denominator()).expect("common multiple");
            (w.numerator().clone() * cofactor).shift((w.shift() - s_min) as usize)
        })
        .collect();
    let den = common * d;
    let entries: Vec<RationalFunction> = (0..dim * dim)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / dim, ij % dim);
            let mut num = Poly::zero();
            for mu in 0..dim {
                if k[(i, mu)].is_zero() || x[(mu, j)].is_zero() || scaled[mu].is_zero() {
                    continue;
                }
                num = num + k[(i, mu)].clone() * &scaled[mu] * &x[(mu, j)];
            }
            RationalFunction::new(num, den.clone(), s_min)
        })
        .collect::<Result<_>>()?;
    Ok(LinOperator::new(
        mb.n(),
        Basis::S,
        Matrix::from_fn(dim, dim, |i, j| entries[i * dim + j].clone()),
    ))
}

/// `(ω ∇^* ω)` at `t = 1`, where `∇^*` is the transpose in the orthonormal
/// Schur basis. Fails with `PoleAtOne` on an entry singular at `t = 1`.
pub fn bkr_transport(nabla: &LinOperator<RationalFunction>, conv: OmegaConvention) -> Result<LinOperator<Rat>> {
    let nabla = nabla.change_basis(Basis::S);
    let n = nabla.n;
    let w = op_omega(n, Basis::S, conv)
        .matrix
        .map(|c| RationalFunction::constant(c.clone()));
    let sandwich = w.mul(&nabla.matrix.transpose()).mul(&w);
    let parts = partitions_of(n);
    let one = Rat::one();
    let m = sandwich.try_map(|i, j, e| {
        e.eval(&one).map_err(|_| Error::PoleAtOne {
            row: parts[i].clone(),
            col: parts[j].clone(),
        })
    })?;
    Ok(LinOperator::new(n, Basis::S, m))
}

/// `𝓔_F` for the given weights: [`nabla_f`] followed by [`bkr_transport`].
pub fn transport(weights: &FixedPointWeights, mb: &MacdonaldBasis) -> Result<LinOperator<Rat>> {
    bkr_transport(&nabla_f(weights, mb)?, OmegaConvention::Negate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rat, ratio};
    use crate::macdonald::{delta_matrix, macdonald_basis};

    fn p(parts: &[usize]) -> SymFunc {
        SymFunc::p(parts.into())
    }

    #[test]
    fn subset_operator_examples() {
        let d = op_d(2);
        assert_eq!(d.apply(&p(&[1, 1])), p(&[1, 1]).scale(&rat(2)) - p(&[2]));
        assert_eq!(d.apply(&p(&[2])), p(&[2]).scale(&rat(2)));
        assert_eq!(op_d(1).apply(&p(&[1])), p(&[1]));
        let e = op_e(2);
        assert_eq!(e.apply(&p(&[1, 1])), (p(&[1, 1]) + p(&[2])).scale(&rat(2)));
        assert_eq!(e.apply(&p(&[2])), p(&[2]).scale(&rat(2)));
        assert_eq!(op_e(1).apply(&p(&[1])), p(&[1]));
    }

    #[test]
    fn gamma_examples() {
        let g = op_gamma(2);
        assert_eq!(g.apply(&p(&[2])), p(&[2]).scale(&ratio(-1, 2)));
        assert_eq!(g.apply(&p(&[1, 1])), p(&[1, 1]) + p(&[2]).scale(&ratio(1, 2)));
        assert_eq!(op_gamma(1).apply(&p(&[1])), p(&[1]));
    }

    #[test]
    fn gamma_diagonal_shape() {
        for n in 1..=6 {
            let g = op_gamma(n);
            for mu in partitions_of(n) {
                let sign = if mu.age() % 2 == 0 { 1 } else { -1 };
                assert_eq!(g.entry(&mu, &mu), ratio(sign, mu.part_product() as i64));
            }
        }
    }

    #[test]
    fn graded_examples() {
        for n in 1..=5 {
            let nid = LinOperator::identity(n, Basis::P).scale(&rat(n as i64));
            assert_eq!(graded_component(&op_e(n), 0), nid);
            let sign = rat(if n % 2 == 0 { 1 } else { -1 });
            assert_eq!(graded_component(&op_gamma(n), 0), op_pi(n).scale(&sign));
            assert!(graded_component(&op_e(n), n as i64).matrix.is_zero());
        }
    }

    #[test]
    fn transport_of_trivial_weights_is_identity() {
        for n in 1..=3 {
            let mb = macdonald_basis(n, Specialization::default_for(n)).unwrap();
            let nab = nabla_f(&FixedPointWeights::trivial(mb.spec()), &mb).unwrap();
            assert_eq!(nab, LinOperator::identity(n, Basis::S));
            let e = bkr_transport(&nab, OmegaConvention::Negate).unwrap();
            assert_eq!(e, LinOperator::identity(n, Basis::S));
        }
    }

    #[test]
    fn nabla_of_delta_eigenvalues_is_delta() {
        for n in 1..=3 {
            let mb = macdonald_basis(n, Specialization::default_for(n)).unwrap();
            let nab = nabla_f(&FixedPointWeights::delta_eigenvalues(mb.spec()), &mb).unwrap();
            let delta = delta_matrix(n, mb.spec()).map(|p| RationalFunction::from_poly(p.clone()));
            assert_eq!(nab, delta.change_basis(Basis::S));
        }
    }

    #[test]
    fn tautological_transport_is_e_small() {
        for n in 1..=3 {
            let mb = macdonald_basis(n, Specialization::default_for(n)).unwrap();
            let e = transport(&FixedPointWeights::tautological(mb.spec()), &mb).unwrap();
            assert_eq!(e.change_basis(Basis::P), op_e(n));
        }
    }

    #[test]
    fn mismatched_specializations_are_rejected() {
        let mb = macdonald_basis(2, Specialization::new(2, 3).unwrap()).unwrap();
        let w = FixedPointWeights::trivial(Specialization::new(2, 4).unwrap());
        assert!(nabla_f(&w, &mb).is_err());
    }
}
