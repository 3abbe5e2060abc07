//! Integer partitions, Young diagrams and hook statistics.
//!
//! Diagrams follow the matrix convention: cell `(i, j)` is in row `i`
//! (counted downward from 0) and column `j`. The arm of a cell counts the
//! cells to its right, the leg the cells below it.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exactring::{Poly, Rat};

/// A partition: non-increasing sequence of positive parts.
///
/// `Ord` is the canonical order used to index every matrix in the crate:
/// reverse lexicographic, so `(4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellData {
    pub row: usize,
    pub col: usize,
    pub arm: usize,
    pub leg: usize,
    pub hook: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub z: Rat,
    pub n_stat: usize,
    pub age: usize,
    pub part_product: u64,
    pub length: usize,
    pub conjugate: Partition,
    pub hook_product: u64,
}

impl Partition {
    /// Builds a partition, sorting the parts and dropping zeros.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Partition {
        Partition::new(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Partition {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `n - l(λ)`.
    pub fn age(&self) -> usize {
        self.weight() - self.len()
    }

    /// Product of the parts, written `⟨λ⟩`.
    pub fn part_product(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).product()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Multiplicity of each part size: `multiplicities()[k]` is the number of parts equal to `k`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.0.first().copied().unwrap_or(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// `z_λ = Π_r α_r! r^α_r`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (r, &a) in self.multiplicities().iter().enumerate().skip(1) {
            for k in 1..=a {
                z *= BigInt::from(k) * BigInt::from(r);
            }
        }
        z
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((0..first).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Cells of the diagram with their arm, leg and hook lengths, row by row.
    pub fn cells(&self) -> Vec<CellData> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.weight());
        for (i, &len) in self.0.iter().enumerate() {
            for j in 0..len {
                let arm = len - j - 1;
                let leg = conj.0[j] - i - 1;
                out.push(CellData {
                    row: i,
                    col: j,
                    arm,
                    leg,
                    hook: 1 + arm + leg,
                });
            }
        }
        out
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<CellData> {
        self.cells().into_iter().find(|c| c.row == row && c.col == col)
    }

    /// Product of all hook lengths.
    pub fn hook_product(&self) -> u64 {
        self.cells().iter().map(|c| c.hook as u64).product()
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            z: Rat::from_integer(self.z()),
            n_stat: self.n_stat(),
            age: self.age(),
            part_product: self.part_product(),
            length: self.len(),
            conjugate: self.conjugate(),
            hook_product: self.hook_product(),
        }
    }

    /// Union of the parts of both partitions.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    /// Removes one part equal to `k`, if present.
    pub fn remove_part(&self, k: usize) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == k)?;
        let mut parts = self.0.clone();
        parts.remove(pos);
        Some(Partition(parts))
    }

    /// Subscript form used in tables: `2,1,1`, or `4` for a single part.
    pub fn subscript(&self) -> String {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        s.join(",")
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.subscript())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&[usize]> for Partition {
    fn from(parts: &[usize]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for Partition {
    fn from(parts: [usize; N]) -> Self {
        Partition::new(parts.to_vec())
    }
}

/// All partitions of `n` in canonical (reverse lexicographic) order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for k in (1..=rest.min(max)).rev() {
        cur.push(k);
        fill(rest - k, k, cur, out);
        cur.pop();
    }
}

/// Position of each partition of `n` in canonical order.
pub fn index_of(parts: &[Partition], p: &Partition) -> usize {
    parts
        .binary_search(p)
        .unwrap_or_else(|_| panic!("{p} is not a partition of the expected weight"))
}

/// `B_μ(q^j, t^j)` under `q = t^A`: `Σ_{(i,c) ∈ D(μ)} t^{j(i + A c)}`.
pub fn b_weight(mu: &Partition, j: usize, a: u32) -> Poly {
    let mut coeffs = vec![0i64; 1];
    for cell in mu.cells() {
        let e = j * (cell.row + a as usize * cell.col);
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] += 1;
    }
    Poly::from_ints(&coeffs)
}
