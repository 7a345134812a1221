//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalar::ExactScalar;

/// Solves `A c = b` where `A` is given column by column (each column a dense
/// vector of the same length as `b`). Returns one solution, with free
/// variables set to zero, or `None` if the system is inconsistent.
pub fn solve(columns: &[Vec<ExactScalar>], rhs: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut m: Vec<Vec<ExactScalar>> = (0..rows)
        .map(|r| {
            let mut row: Vec<ExactScalar> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = ExactScalar::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (dst, src) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *dst -= src * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![ExactScalar::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][cols].clone();
    }
    Some(sol)
}

/// Rank of the matrix with the given columns.
pub fn rank(columns: &[Vec<ExactScalar>]) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let rows = columns[0].len();
    let mut m: Vec<Vec<ExactScalar>> = (0..rows)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut r = 0;
    for c in 0..columns.len() {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in rest.iter_mut() {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (dst, src) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *dst -= src * &f;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
