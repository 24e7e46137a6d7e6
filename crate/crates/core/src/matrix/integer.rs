//! Integer-specific routines: fraction-free rank, Hermite normal form and
//! saturated integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{kernel_basis, rref, Matrix, MatQ, MatZ};
use crate::error::{Error, Result};
use crate::field::Rationals;

/// Rank by Bareiss fraction-free elimination.
pub fn bareiss_rank(m: &MatZ) -> usize {
    let mut a = m.row_vecs();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Scales each row by the lcm of its denominators, giving an integer matrix
/// with the same row space and the same column dependencies.
pub fn integerize_rows(m: &MatQ) -> MatZ {
    let mut out = Matrix::filled(m.rows(), m.cols(), BigInt::zero());
    for i in 0..m.rows() {
        let l = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for j in 0..m.cols() {
            let x = m.get(i, j);
            out.set(i, j, x.numer() * (&l / x.denom()));
        }
    }
    out
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Row-style Hermite normal form: returns `(H, U, rank)` with `H = U * A`,
/// `U` unimodular, nonzero rows of `H` first, positive pivots, and entries
/// above each pivot reduced into `[0, pivot)`.
/// `m[dst] -= q * m[src]` for distinct rows.
fn row_sub(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (d, s) = if dst < src {
        let (a, b) = m.split_at_mut(src);
        (&mut a[dst], &b[0])
    } else {
        let (a, b) = m.split_at_mut(dst);
        (&mut b[0], &a[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        *x -= q * y;
    }
}

pub fn row_hnf(a: &MatZ) -> (MatZ, MatZ, usize) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut h = a.row_vecs();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let piv = (r..rows).filter(|&i| !h[i][c].is_zero()).min_by(|&x, &y| h[x][c].abs().cmp(&h[y][c].abs()));
            let Some(piv) = piv else { break };
            h.swap(r, piv);
            u.swap(r, piv);
            let mut done = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let qt = floor_div(&h[i][c], &h[r][c]);
                row_sub(&mut h, i, r, &qt);
                row_sub(&mut u, i, r, &qt);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let qt = floor_div(&h[i][c], &h[r][c]);
            if qt.is_zero() {
                continue;
            }
            row_sub(&mut h, i, r, &qt);
            row_sub(&mut u, i, r, &qt);
        }
        r += 1;
    }
    let h = if rows == 0 { Matrix::filled(0, cols, BigInt::zero()) } else { Matrix::from_rows(h).expect("rectangular") };
    let u = if rows == 0 { Matrix::filled(0, 0, BigInt::zero()) } else { Matrix::from_rows(u).expect("rectangular") };
    (h, u, r)
}

/// Basis (as columns) of the integer kernel lattice `{x in Z^n : Mx = 0}`,
/// in column-style Hermite normal form.
pub fn hnf_integer_kernel(m: &MatZ) -> MatZ {
    let n = m.cols();
    if m.rows() == 0 {
        return Matrix::identity_with(n, BigInt::zero(), BigInt::one());
    }
    let (_, u, rank) = row_hnf(&m.transpose());
    let kernel_rows: Vec<Vec<BigInt>> = (rank..n).map(|i| u.row(i).to_vec()).collect();
    if kernel_rows.is_empty() {
        return Matrix::filled(n, 0, BigInt::zero());
    }
    let (h, _, _) = row_hnf(&Matrix::from_rows(kernel_rows).expect("rectangular"));
    h.transpose()
}

/// Solves `basis * c = x` over the rationals; `None` when `x` is outside the
/// column span.
pub fn solve_rational(basis: &MatQ, x: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    if x.len() != basis.rows() {
        return Err(Error::LengthMismatch { expected: basis.rows(), got: x.len() });
    }
    let k = basis.cols();
    let mut cols = basis.columns();
    cols.push(x.to_vec());
    let aug = Matrix::from_columns(basis.rows(), &cols)?;
    let r = rref(&Rationals, &aug);
    if r.pivots.contains(&k) {
        return Ok(None);
    }
    let mut c = vec![BigRational::zero(); k];
    for (i, &p) in r.pivots.iter().enumerate() {
        c[p] = r.matrix.get(i, k).clone();
    }
    Ok(Some(c))
}

/// Solves `basis * c = x` for an integer coefficient vector `c`; `None` when
/// no integer solution exists.
pub fn solve_integer_combination(basis: &MatZ, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let bq = super::to_rational(basis);
    let xq: Vec<BigRational> = x.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    // Columns of a lattice basis are independent, so the rational solution is unique.
    if kernel_basis(&Rationals, &bq).cols() != 0 {
        return Err(Error::InvalidInput("basis columns are linearly dependent".into()));
    }
    Ok(solve_rational(&bq, &xq)?.and_then(|c| {
        c.iter().all(|v| v.is_integer()).then(|| c.into_iter().map(|v| v.to_integer()).collect())
    }))
}
