//! Dense exact linear algebra over finite fields, the rationals and the integers.

mod integer;
pub mod support;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Felem, Field, Rationals};

pub use integer::{
    bareiss_rank, hnf_integer_kernel, integerize_rows, row_hnf, solve_integer_combination, solve_rational,
};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

pub type MatFq = Matrix<Felem>;
pub type MatQ = Matrix<BigRational>;
pub type MatZ = Matrix<BigInt>;

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<E>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, got: entries.len() });
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, entries: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, entries })
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Result<Self> {
        let cols = columns.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for col in columns {
            if col.len() != rows {
                return Err(Error::LengthMismatch { expected: rows, got: col.len() });
            }
        }
        for i in 0..rows {
            for col in columns {
                entries.push(col[i].clone());
            }
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, entries }
    }

    /// The column submatrix on `support`, in the listed order.
    pub fn select_columns(&self, support: &[usize]) -> Result<Self> {
        if let Some(&bad) = support.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange { index: bad, len: self.cols });
        }
        let mut entries = Vec::with_capacity(self.rows * support.len());
        for i in 0..self.rows {
            for &j in support {
                entries.push(self.get(i, j).clone());
            }
        }
        Ok(Matrix { rows: self.rows, cols: support.len(), entries })
    }

    /// First `k` columns.
    pub fn leading_columns(&self, k: usize) -> Result<Self> {
        let support: Vec<usize> = (0..k).collect();
        self.select_columns(&support)
    }

    pub fn map<T>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("vstack {} vs {} columns", self.cols, other.cols)));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, entries })
    }
}

impl<E: Clone> Matrix<E> {
    pub fn identity_with(n: usize, zero: E, one: E) -> Self {
        let mut m = Matrix::filled(n, n, zero);
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::identity_with(n, f.zero(), f.one())
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    let mut out = Matrix::filled(a.rows, b.cols, f.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let t = f.mul(aik, b.get(k, j));
                let cur = f.add(out.get(i, j), &t);
                out.set(i, j, cur);
            }
        }
    }
    Ok(out)
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if a.cols != x.len() {
        return Err(Error::LengthMismatch { expected: a.cols, got: x.len() });
    }
    Ok((0..a.rows)
        .map(|i| {
            a.row(i).iter().zip(x).fold(f.zero(), |acc, (aij, xj)| {
                if f.is_zero(aij) || f.is_zero(xj) {
                    acc
                } else {
                    f.add(&acc, &f.mul(aij, xj))
                }
            })
        })
        .collect())
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<E> {
    pub matrix: Matrix<E>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form by Gauss-Jordan elimination in exact arithmetic.
pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Rref<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(piv) = (row..a.rows).find(|&i| !f.is_zero(a.get(i, col))) else {
            continue;
        };
        if piv != row {
            for j in 0..a.cols {
                a.entries.swap(piv * a.cols + j, row * a.cols + j);
            }
        }
        let inv = f.inv(a.get(row, col)).expect("pivot is nonzero");
        for j in col..a.cols {
            let v = f.mul(a.get(row, j), &inv);
            a.set(row, j, v);
        }
        for i in 0..a.rows {
            if i == row || f.is_zero(a.get(i, col)) {
                continue;
            }
            let factor = a.get(i, col).clone();
            for j in col..a.cols {
                let t = f.mul(&factor, a.get(row, j));
                let v = f.sub(a.get(i, j), &t);
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    Rref { matrix: a, pivots, rank }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).rank
}

/// Columns spanning `ker(M)`; each basis vector has a 1 in its own free column
/// and 0 in every other free column.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let r = rref(f, m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut basis = Matrix::filled(n, free.len(), f.zero());
    for (k, &fc) in free.iter().enumerate() {
        basis.set(fc, k, f.one());
        for (i, &pc) in r.pivots.iter().enumerate() {
            let v = f.neg(r.matrix.get(i, fc));
            basis.set(pc, k, v);
        }
    }
    basis
}

/// Kronecker product with entries combined by `mul`.
pub fn kronecker_with<E: Clone>(a: &Matrix<E>, b: &Matrix<E>, mul: impl Fn(&E, &E) -> E) -> Matrix<E> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut entries = Vec::with_capacity(rows * cols);
    for ia in 0..a.rows {
        for ib in 0..b.rows {
            for ja in 0..a.cols {
                let x = a.get(ia, ja);
                for jb in 0..b.cols {
                    entries.push(mul(x, b.get(ib, jb)));
                }
            }
        }
    }
    Matrix { rows, cols, entries }
}

pub fn kronecker<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    kronecker_with(a, b, |x, y| f.mul(x, y))
}

pub fn kronecker_z(a: &MatZ, b: &MatZ) -> MatZ {
    kronecker_with(a, b, |x, y| x * y)
}

/// Kronecker product of two vectors.
pub fn kron_vec<E: Clone>(a: &[E], b: &[E], mul: impl Fn(&E, &E) -> E) -> Vec<E> {
    a.iter().flat_map(|x| b.iter().map(|y| mul(x, y)).collect::<Vec<_>>()).collect()
}

fn check_support(cols: usize, support: &[usize]) -> Result<()> {
    match support.iter().find(|&&j| j >= cols) {
        Some(&bad) => Err(Error::IndexOutOfRange { index: bad, len: cols }),
        None => Ok(()),
    }
}

/// Rank of the column submatrix of a finite-field matrix.
pub fn restricted_rank_fq<F: Field>(f: &F, m: &Matrix<F::Elem>, support: &[usize]) -> Result<usize> {
    check_support(m.cols, support)?;
    if support.is_empty() {
        return Ok(0);
    }
    Ok(rank(f, &m.select_columns(support)?))
}

/// Rank of the column submatrix of a rational matrix, by fraction-free
/// elimination after clearing row denominators.
pub fn restricted_rank_q(m: &MatQ, support: &[usize]) -> Result<usize> {
    check_support(m.cols, support)?;
    if support.is_empty() {
        return Ok(0);
    }
    let sub = m.select_columns(support)?;
    Ok(bareiss_rank(&integerize_rows(&sub)))
}

/// Rank of the column submatrix of an integer matrix.
pub fn restricted_rank_z(m: &MatZ, support: &[usize]) -> Result<usize> {
    check_support(m.cols, support)?;
    if support.is_empty() {
        return Ok(0);
    }
    Ok(bareiss_rank(&m.select_columns(support)?))
}

pub fn to_rational(m: &MatZ) -> MatQ {
    m.map(|x| BigRational::from_integer(x.clone()))
}

/// Kernel basis of an integer matrix over the rationals.
pub fn kernel_basis_q(m: &MatZ) -> MatQ {
    kernel_basis(&Rationals, &to_rational(m))
}
