//! Dense matrices over exact rings, fraction-free elimination, and linear
//! operators on `Λⁿ`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::characters::character_table;
use crate::error::{Error, Result};
use crate::exactring::{ExactDiv, Rat, Ring};
use crate::partitions::{partitions_of, Partition};
use crate::symfunc::{Basis, SymFunc};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(usize, usize, &R) -> Result<S>) -> Result<Matrix<S>> {
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                data.push(f(i, j, &self[(i, j)])?);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c)
    }

    pub fn mul(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out: Matrix<R> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<R> std::ops::Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> std::ops::IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Result of fraction-free Gauss–Jordan elimination.
///
/// Every pivot row has the common value `pivot` in its own pivot column and
/// zero in the other pivot columns.
struct Reduced<R> {
    m: Matrix<R>,
    pivot_cols: Vec<usize>,
    pivot: R,
}

fn gauss_jordan<R: ExactDiv>(mut m: Matrix<R>, stop_col: usize) -> Result<Reduced<R>> {
    let mut prev = R::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..stop_col {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let piv = m[(r, c)].clone();
        let pivot_row: Vec<R> = m.row(r).to_vec();
        let cols = m.cols;
        let updated: Vec<(usize, Vec<R>)> = (0..m.rows)
            .into_par_iter()
            .filter(|&i| i != r)
            .map(|i| {
                let row = &m.data[i * cols..(i + 1) * cols];
                let factor = row[c].clone();
                let mut out = Vec::with_capacity(cols);
                for j in 0..cols {
                    if j == c {
                        out.push(R::zero());
                        continue;
                    }
                    let v = piv.clone() * &row[j] - factor.clone() * &pivot_row[j];
                    out.push(v.exact_div(&prev).ok_or(Error::ZeroDivision)?);
                }
                Ok((i, out))
            })
            .collect::<Result<_>>()?;
        for (i, row) in updated {
            m.data[i * cols..(i + 1) * cols].clone_from_slice(&row);
        }
        prev = piv;
        pivot_cols.push(c);
        r += 1;
    }
    Ok(Reduced {
        m,
        pivot_cols,
        pivot: prev,
    })
}

/// Basis of the right kernel, computed without fractions: each vector has the
/// final pivot at its free index and minus the reduced column entries at the
/// pivot indices.
pub fn fraction_free_kernel<R: ExactDiv>(m: &Matrix<R>) -> Result<Vec<Vec<R>>> {
    let red = gauss_jordan(m.clone(), m.cols)?;
    let free: Vec<usize> = (0..m.cols).filter(|c| !red.pivot_cols.contains(c)).collect();
    Ok(free
        .into_iter()
        .map(|f| {
            let mut v = vec![R::zero(); m.cols];
            v[f] = red.pivot.clone();
            for (row, &pc) in red.pivot_cols.iter().enumerate() {
                v[pc] = -red.m[(row, f)].clone();
            }
            v
        })
        .collect())
}

/// `(X, d)` with `M^{-1} = X / d`, by fraction-free Gauss–Jordan on `[M | I]`.
/// `d` equals `±det M`.
pub fn fraction_free_inverse<R: ExactDiv>(m: &Matrix<R>) -> Result<(Matrix<R>, R)> {
    assert_eq!(m.rows, m.cols, "inverse of a non-square matrix");
    let n = m.rows;
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            R::one()
        } else {
            R::zero()
        }
    });
    let red = gauss_jordan(aug, n)?;
    if red.pivot_cols.len() < n {
        return Err(Error::SingularK);
    }
    let x = Matrix::from_fn(n, n, |i, j| red.m[(i, n + j)].clone());
    Ok((x, red.pivot))
}

/// Linear operator on `Λⁿ`: column `j` holds the coefficients of the image of
/// the `j`-th basis element, rows and columns in canonical partition order.
#[derive(Clone, PartialEq)]
pub struct LinOperator<R: Ring = Rat> {
    pub n: usize,
    pub basis: Basis,
    pub matrix: Matrix<R>,
}

impl<R: Ring> LinOperator<R> {
    pub fn new(n: usize, basis: Basis, matrix: Matrix<R>) -> Self {
        let d = partitions_of(n).len();
        assert_eq!(
            (matrix.rows(), matrix.cols()),
            (d, d),
            "operator matrix must be p(n) × p(n)"
        );
        LinOperator { n, basis, matrix }
    }

    pub fn identity(n: usize, basis: Basis) -> Self {
        LinOperator::new(n, basis, Matrix::identity(partitions_of(n).len()))
    }

    pub fn zero(n: usize, basis: Basis) -> Self {
        let d = partitions_of(n).len();
        LinOperator::new(n, basis, Matrix::zeros(d, d))
    }

    /// Operator whose image of each basis element is given by `f`.
    pub fn from_columns(n: usize, basis: Basis, f: impl Fn(&Partition) -> SymFunc<R> + Sync) -> Self
    where
        R: Send,
    {
        let parts = partitions_of(n);
        let cols: Vec<Vec<R>> = parts.par_iter().map(|p| f(p).convert(basis).to_vector()).collect();
        let d = parts.len();
        LinOperator::new(n, basis, Matrix::from_fn(d, d, |i, j| cols[j][i].clone()))
    }

    pub fn partitions(&self) -> Vec<Partition> {
        partitions_of(self.n)
    }

    pub fn entry(&self, row: &Partition, col: &Partition) -> R {
        let parts = self.partitions();
        let i = crate::partitions::index_of(&parts, row);
        let j = crate::partitions::index_of(&parts, col);
        self.matrix[(i, j)].clone()
    }

    pub fn apply(&self, f: &SymFunc<R>) -> SymFunc<R> {
        let v = f.convert(self.basis).to_vector();
        SymFunc::from_vector(self.n, self.basis, &self.matrix.apply(&v)).convert(f.basis())
    }

    /// Image of a basis element.
    pub fn image(&self, lambda: &Partition) -> SymFunc<R> {
        let j = crate::partitions::index_of(&self.partitions(), lambda);
        SymFunc::from_vector(self.n, self.basis, &self.matrix.column(j))
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &LinOperator<R>) -> Self {
        assert_eq!(self.n, rhs.n);
        let rhs = rhs.change_basis(self.basis);
        LinOperator::new(self.n, self.basis, self.matrix.mul(&rhs.matrix))
    }

    pub fn add(&self, rhs: &LinOperator<R>) -> Self {
        let rhs = rhs.change_basis(self.basis);
        LinOperator::new(self.n, self.basis, self.matrix.add(&rhs.matrix))
    }

    pub fn sub(&self, rhs: &LinOperator<R>) -> Self {
        let rhs = rhs.change_basis(self.basis);
        LinOperator::new(self.n, self.basis, self.matrix.sub(&rhs.matrix))
    }

    pub fn scale(&self, c: &R) -> Self {
        LinOperator::new(self.n, self.basis, self.matrix.scale(c))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> LinOperator<S> {
        LinOperator::new(self.n, self.basis, self.matrix.map(f))
    }

    /// Same operator expressed in another basis.
    pub fn change_basis(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let (to, from) = match (self.basis, target) {
            (Basis::P, Basis::S) => (p_to_s(self.n), s_to_p(self.n)),
            _ => (s_to_p(self.n), p_to_s(self.n)),
        };
        let to = to.map(|x| R::from_rat(x));
        let from = from.map(|x| R::from_rat(x));
        LinOperator::new(self.n, target, to.mul(&self.matrix).mul(&from))
    }
}

/// Column `μ` holds the s-coefficients of `p_μ`.
pub fn p_to_s(n: usize) -> Matrix<Rat> {
    let t = character_table(n);
    let d = t.parts.len();
    Matrix::from_fn(d, d, |i, j| Rat::from_integer(BigInt::from(t.chi[i][j])))
}

/// Column `λ` holds the p-coefficients of `s_λ`.
pub fn s_to_p(n: usize) -> Matrix<Rat> {
    let t = character_table(n);
    let d = t.parts.len();
    Matrix::from_fn(d, d, |i, j| Rat::new(BigInt::from(t.chi[j][i]), t.parts[i].z()))
}

impl<R: Ring> fmt::Debug for LinOperator<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinOperator(n={}, {:?}) {:?}", self.n, self.basis, self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rat, Poly};
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix<Rat> {
        Matrix::from_fn(r, c, |_, _| rat(rng.gen_range(-4..=4)))
    }

    #[test]
    fn inverse_of_random_rational_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            for _ in 0..10 {
                let m = random_matrix(&mut rng, n, n);
                match fraction_free_inverse(&m) {
                    Ok((x, d)) => {
                        let inv = x.scale(&d.recip());
                        assert_eq!(m.mul(&inv), Matrix::identity(n));
                    }
                    Err(Error::SingularK) => assert!(!fraction_free_kernel(&m).unwrap().is_empty()),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let r = rng.gen_range(1..5);
            let c = rng.gen_range(1..7);
            // low rank: product of thin factors
            let k = rng.gen_range(1..=r.min(c));
            let m = random_matrix(&mut rng, r, k).mul(&random_matrix(&mut rng, k, c));
            let ker = fraction_free_kernel(&m).unwrap();
            for v in &ker {
                assert!(v.iter().any(|x| !x.is_zero()));
                assert!(m.apply(v).iter().all(Zero::is_zero));
            }
            assert!(ker.len() >= c - k);
        }
    }

    #[test]
    fn polynomial_kernel() {
        // rows (t, -1), (t^2, -t): kernel spanned by (1, t)
        let t = Poly::t();
        let m = Matrix::from_rows(vec![vec![t.clone(), -Poly::one()], vec![t.clone() * &t, -t.clone()]]);
        let ker = fraction_free_kernel(&m).unwrap();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert_eq!(v[1].clone(), v[0].clone() * &t);
    }

    #[test]
    fn change_of_basis_round_trip() {
        for n in 1..=6 {
            let a = p_to_s(n).mul(&s_to_p(n));
            assert_eq!(a, Matrix::identity(partitions_of(n).len()));
        }
        let op = LinOperator::<Rat>::from_columns(3, Basis::P, |p| SymFunc::p(p.clone()).pi_iso());
        let back = op.change_basis(Basis::S).change_basis(Basis::P);
        assert_eq!(back, op);
        let x = SymFunc::s([2, 1].into());
        assert_eq!(op.change_basis(Basis::S).apply(&x), x.pi_iso());
    }
}
