//! Dense linear algebra over an exact field.
//!
//! Everything here is generic over [`Field`], which is implemented for
//! rationals, cyclotomic numbers, rational functions and radical numbers.
//! Matrices are plain row-major `Vec<Vec<F>>`.

use crate::error::{Error, Result};

/// Exact field operations. Zero and one are produced from an existing
/// element because some fields (radical towers) carry context.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize, like: &F) -> Matrix<F> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { like.one_like() } else { like.zero_like() })
                .collect()
        })
        .collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    let inner = b.len();
    if a.iter().any(|row| row.len() != inner) || inner == 0 {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x?",
            a.len(),
            a.first().map_or(0, Vec::len),
            inner
        )));
    }
    let cols = b[0].len();
    let zero = b[0][0].zero_like();
    let mut out = vec![vec![zero; cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add(&aik.mul(&b[k][j]));
                }
            }
        }
    }
    Ok(out)
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Result<Vec<F>> {
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        if row.len() != v.len() {
            return Err(Error::DimensionMismatch("matrix-vector".into()));
        }
        let mut acc = v[0].zero_like();
        for (x, y) in row.iter().zip(v) {
            if !x.is_zero() && !y.is_zero() {
                acc = acc.add(&x.mul(y));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

pub fn transpose<F: Clone>(a: &Matrix<F>) -> Matrix<F> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot is invertible");
        for j in c..cols {
            if !m[r][j].is_zero() {
                m[r][j] = m[r][j].mul(&inv);
            }
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !m[r][j].is_zero() {
                        m[i][j] = m[i][j].sub(&f.mul(&m[r][j]));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the right kernel `{x : m x = 0}`, in canonical (rref-derived) form.
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize, like: &F) -> Vec<Vec<F>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![like.zero_like(); cols];
            v[f] = like.one_like();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = work[row][f].neg();
            }
            v
        })
        .collect()
}

/// Canonical form of the row span: nonzero rows of the rref.
pub fn row_space_canonical<F: Field>(rows: &Matrix<F>) -> Matrix<F> {
    let mut work = rows.clone();
    let n = rref(&mut work).len();
    work.truncate(n);
    work
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Result<Matrix<F>> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
    }
    let like = a[0][0].clone();
    let mut aug: Matrix<F> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { like.one_like() } else { like.zero_like() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `a x = b` for square invertible `a`.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Vec<F>> {
    let n = a.len();
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Is `v` in the row span of the rows already in rref `basis` with `pivots`?
pub fn in_row_span<F: Field>(basis: &Matrix<F>, pivots: &[usize], v: &[F]) -> bool {
    let mut r = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if !r[p].is_zero() {
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
    }
    r.iter().all(Field::is_zero)
}
