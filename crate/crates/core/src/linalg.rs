//! Exact linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Leading principal minors `d_1, d_2, ...` of a square integer matrix by
/// Bareiss fraction-free elimination without pivoting.
///
/// At step `k` the pivot equals the leading minor of order `k + 1`. A zero
/// pivot stops the elimination, so the returned vector is either complete
/// (length `n`) or ends with the first vanishing minor.
pub fn leading_principal_minors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &pivot - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = num / &prev;
            }
        }
        prev = pivot;
    }
    minors
}

/// Determinant via the Bareiss recursion, with row swaps on a zero pivot.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination over the rationals.
/// Returns `None` when `A` is singular.
pub fn solve(matrix: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "right-hand side has the wrong length");
    let mut aug: Vec<Vec<BigRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), n, "matrix is not square");
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot_row);
        let inv = aug[col][col].recip();
        for x in aug[col][col..].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            let pivot_row = aug[col].clone();
            for (x, p) in aug[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
        }
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}
