//! Irreducible characters of `S_n` (Murnaghan–Nakayama), structure constants
//! of the class algebra, and the age-graded class-algebra product.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactring::{rat, Rat};
use crate::partitions::{index_of, partitions_of, Partition};
use crate::symfunc::{Basis, SymFunc};

/// Character table of `S_n`: `chi[λ][μ]` is the value of the irreducible
/// character `χ^λ` on the class of cycle type `μ`, both indexed in canonical
/// partition order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub n: usize,
    pub parts: Vec<Partition>,
    pub chi: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn value(&self, lambda: &Partition, mu: &Partition) -> i64 {
        self.chi[index_of(&self.parts, lambda)][index_of(&self.parts, mu)]
    }

    /// Dimension of the irreducible representation `V^λ`.
    pub fn degree(&self, lambda: &Partition) -> i64 {
        self.value(lambda, &Partition::column(self.n))
    }

    /// CSV with the class partitions as column headers and one row per irreducible.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("chi");
        for mu in &self.parts {
            out.push_str(&format!(",\"{mu}\""));
        }
        out.push('\n');
        for (i, lambda) in self.parts.iter().enumerate() {
            out.push_str(&format!("\"{lambda}\""));
            for v in &self.chi[i] {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

fn mn_value(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // beta-set: strictly decreasing first-column hook lengths
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let k = mu[0];
    let rest = &mu[1..];
    let mut total = 0i64;
    for &b in &beta {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        // removing a rim hook of size k: move bead b to b - k; height = beads strictly between
        let height = beta.iter().filter(|&&c| c > b - k && c < b).count();
        let mut nb: Vec<usize> = beta.iter().map(|&c| if c == b { b - k } else { c }).collect();
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let smaller: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_value(&smaller, rest, memo);
    }
    memo.insert(key, total);
    total
}

fn build_table(n: usize) -> CharacterTable {
    let parts = partitions_of(n);
    let mut memo = HashMap::new();
    let chi = parts
        .iter()
        .map(|l| {
            parts
                .iter()
                .map(|m| mn_value(l.parts(), m.parts(), &mut memo))
                .collect()
        })
        .collect();
    CharacterTable { n, parts, chi }
}

/// Character table of `S_n`, built once per `n` and shared afterwards.
pub fn character_table(n: usize) -> Arc<CharacterTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(build_table(n));
    cache.lock().unwrap().entry(n).or_insert(t).clone()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Size of the conjugacy class of cycle type `λ`: `n!/z_λ`.
pub fn class_size(lambda: &Partition) -> BigInt {
    factorial(lambda.weight()) / lambda.z()
}

/// Structure constants `a^ν_{λμ}` with `C_λ C_μ = Σ_ν a^ν_{λμ} C_ν` for the
/// class sums of `S_n`, via the character formula. Zero constants are omitted.
pub fn class_constants(lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, Rat> {
    let n = lambda.weight();
    assert_eq!(n, mu.weight(), "class constants need partitions of equal weight");
    let table = character_table(n);
    let li = index_of(&table.parts, lambda);
    let mi = index_of(&table.parts, mu);
    let col1 = table.parts.len() - 1;
    let pre = Rat::new(class_size(lambda) * class_size(mu), factorial(n));
    let mut out = BTreeMap::new();
    for (ni, nu) in table.parts.iter().enumerate() {
        let mut s = Rat::zero();
        for k in 0..table.parts.len() {
            let num = table.chi[k][li] * table.chi[k][mi] * table.chi[k][ni];
            if num != 0 {
                s += Rat::new(BigInt::from(num), BigInt::from(table.chi[k][col1]));
            }
        }
        let a = &pre * s;
        if !a.is_zero() {
            out.insert(nu.clone(), a);
        }
    }
    out
}

/// Identification `p_λ ↔ c(λ) C_λ` between power sums and class sums, with
/// `c(λ) = ε^{age λ} z_λ^{e_z} ⟨λ⟩^{e_p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Normalization {
    pub eps: i8,
    pub z_exp: i8,
    pub prod_exp: i8,
}

impl Normalization {
    /// The 18 candidates `ε ∈ {±1}`, `e_z, e_p ∈ {-1, 0, 1}`.
    pub fn family() -> Vec<Normalization> {
        let mut out = Vec::new();
        for eps in [1, -1] {
            for z_exp in [-1, 0, 1] {
                for prod_exp in [-1, 0, 1] {
                    out.push(Normalization { eps, z_exp, prod_exp });
                }
            }
        }
        out
    }

    pub fn factor(&self, lambda: &Partition) -> Rat {
        let signed = if self.eps < 0 && lambda.age() % 2 == 1 {
            rat(-1)
        } else {
            rat(1)
        };
        let z = Rat::from_integer(lambda.z());
        let pp = Rat::from_integer(BigInt::from(lambda.part_product()));
        signed * int_pow(&z, self.z_exp) * int_pow(&pp, self.prod_exp)
    }
}

fn int_pow(x: &Rat, e: i8) -> Rat {
    match e {
        0 => Rat::one(),
        1 => x.clone(),
        -1 => x.recip(),
        _ => unreachable!("exponents are restricted to -1, 0, 1"),
    }
}

/// The graded class-algebra product on `Λⁿ`, transported to power sums
/// through a [`Normalization`].
#[derive(Clone, Debug)]
pub struct CupProduct {
    pub n: usize,
    normalization: Option<Normalization>,
}

impl CupProduct {
    pub fn uncalibrated(n: usize) -> CupProduct {
        CupProduct { n, normalization: None }
    }

    pub fn calibrated(n: usize, normalization: Normalization) -> CupProduct {
        CupProduct {
            n,
            normalization: Some(normalization),
        }
    }

    pub fn normalization(&self) -> Option<Normalization> {
        self.normalization
    }

    /// `p_λ ∪ p_μ`, keeping only targets with `age ν = age λ + age μ`.
    pub fn basis_product(&self, lambda: &Partition, mu: &Partition) -> Result<SymFunc<Rat>> {
        self.transported(lambda, mu, true)
    }

    fn transported(&self, lambda: &Partition, mu: &Partition, graded: bool) -> Result<SymFunc<Rat>> {
        let norm = self.normalization.ok_or(Error::CalibrationMissing(self.n))?;
        let target_age = lambda.age() + mu.age();
        let scale = norm.factor(lambda) * norm.factor(mu);
        let mut out = SymFunc::zero(self.n, Basis::P);
        for (nu, a) in class_constants(lambda, mu) {
            if !graded || nu.age() == target_age {
                out.add_term(nu.clone(), &scale * a / norm.factor(&nu));
            }
        }
        Ok(out)
    }

    /// Bilinear extension of [`CupProduct::basis_product`].
    pub fn cup_graded(&self, x: &SymFunc<Rat>, y: &SymFunc<Rat>) -> Result<SymFunc<Rat>> {
        self.bilinear(x, y, true)
    }

    /// The whole class-algebra product transported by the normalization, with
    /// no age truncation.
    pub fn class_product(&self, x: &SymFunc<Rat>, y: &SymFunc<Rat>) -> Result<SymFunc<Rat>> {
        self.bilinear(x, y, false)
    }

    fn bilinear(&self, x: &SymFunc<Rat>, y: &SymFunc<Rat>, graded: bool) -> Result<SymFunc<Rat>> {
        if x.n() != self.n || y.n() != self.n {
            return Err(Error::WeightMismatch(x.n(), y.n()));
        }
        let x = x.convert(Basis::P);
        let y = y.convert(Basis::P);
        let mut out = SymFunc::zero(self.n, Basis::P);
        for (l, a) in x.terms() {
            for (m, b) in y.terms() {
                let prod = self.transported(l, m, graded)?;
                out = out + prod.scale(&(a * b));
            }
        }
        Ok(out)
    }
}
