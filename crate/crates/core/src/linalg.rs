//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Q;

/// Solves `A x = b` for square nonsingular `A` by Gauss-Jordan elimination.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Result<Vec<Q>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch { basis: a.first().map_or(0, Vec::len), constraints: n });
    }
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::SingularSystem(n))?;
        m.swap(col, pivot);
        let inv = Q::one() / m[col][col].clone();
        for v in m[col].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v -= &f * p;
            }
        }
    }
    Ok(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square nonsingular matrix.
pub fn inverse(a: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let e: Vec<Q> = (0..n).map(|i| if i == k { Q::one() } else { Q::zero() }).collect();
        cols.push(solve(a, &e)?);
    }
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qr};

    #[test]
    fn small_system() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![qr(4, 5), qr(7, 5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], qr(3, 5));
    }

    #[test]
    fn singular_detected() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(solve(&a, &[q(1), q(1)]), Err(Error::SingularSystem(2)));
    }
}
