//! Small dense exact linear algebra over the rationals.

use num::{Signed, Zero};

use crate::rational::Rational;

/// Row-reduces `rows` in place and returns the rank.
fn eliminate(rows: &mut [Vec<Rational>], ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x /= &lead;
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in col..rows[i].len() {
                    let delta = &factor * &rows[rank][j];
                    rows[i][j] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let ncols = first.len();
    let mut work = rows.to_vec();
    eliminate(&mut work, ncols)
}

/// Solves `sum_j x_j * columns[j] = target` for a unique `x`.
///
/// Returns `None` when the columns are linearly dependent or the system is
/// inconsistent.
pub fn solve_columns(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = columns.len();
    let m = target.len();
    let mut rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let r = eliminate(&mut rows, n);
    if r < n {
        return None;
    }
    // inconsistent rows would have a nonzero right-hand side below the pivots
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some(rows[..n].iter().map(|row| row[n].clone()).collect())
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(square: &[Vec<Rational>]) -> Rational {
    let n = square.len();
    let mut rows = square.to_vec();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&i| !rows[i][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            rows.swap(col, pivot);
            det = -det;
        }
        let lead = rows[col][col].clone();
        det *= &lead;
        for i in col + 1..n {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &lead;
            for j in col..n {
                let delta = &factor * &rows[col][j];
                rows[i][j] -= delta;
            }
        }
    }
    det
}

pub fn is_unimodular(square: &[Vec<Rational>]) -> bool {
    let det = determinant(square);
    det.is_integer() && det.abs() == Rational::from_integer(1.into())
}
