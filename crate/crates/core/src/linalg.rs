//! Exact dense linear algebra on small blocks: row reduction, rank, and
//! least-structure solves (free variables pinned to zero).

use crate::scalar::Scalar;

/// Rank of a dense matrix by exact Gaussian elimination.
pub fn rank<S: Scalar>(mut rows: Vec<Vec<S>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = S::one() / rows[rank][col].clone();
        for c in col..ncols {
            rows[rank][c] = rows[rank][c].clone() * inv.clone();
        }
        for r in 0..nrows {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let delta = factor.clone() * rows[rank][c].clone();
                    rows[r][c] = rows[r][c].clone() - delta;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Solve `A x = b` exactly, eliminating columns in the given order and
/// setting the free variables to zero. Returns `None` when inconsistent.
pub fn solve_least_structure<S: Scalar>(
    rows: &[Vec<S>],
    rhs: &[S],
    col_order: &[usize],
) -> Option<Vec<S>> {
    let nrows = rows.len();
    assert_eq!(rhs.len(), nrows);
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut a: Vec<Vec<S>> = rows.to_vec();
    let mut b: Vec<S> = rhs.to_vec();

    let mut pivot_of_row: Vec<usize> = Vec::new();
    let mut row = 0;
    for &col in col_order {
        let Some(p) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = S::one() / a[row][col].clone();
        for c in 0..ncols {
            a[row][c] = a[row][c].clone() * inv.clone();
        }
        b[row] = b[row].clone() * inv;
        for r in 0..nrows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..ncols {
                    let delta = factor.clone() * a[row][c].clone();
                    a[r][c] = a[r][c].clone() - delta;
                }
                let delta = factor * b[row].clone();
                b[r] = b[r].clone() - delta;
            }
        }
        pivot_of_row.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }

    // consistency: zero rows must have zero rhs
    for r in row..nrows {
        if !b[r].is_zero() {
            return None;
        }
    }

    let mut x = vec![S::zero(); ncols];
    for (r, &col) in pivot_of_row.iter().enumerate() {
        // reduced echelon form: pivot rows are fully reduced, free
        // variables are zero, so x[col] is just the rhs entry
        debug_assert!(a[r][col].is_one());
        x[col] = b[r].clone();
    }

    // with free variables at zero, verify the non-pivot columns do not
    // interfere (they multiply zeros); nothing else to do
    Some(x)
}
