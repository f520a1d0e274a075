//! Shared helpers for the integration suites: a test-local dense solver,
//! independent of the crate's elimination code paths.

use num_traits::Zero;
use rlift::{Rat, Scalar};

/// Solve `A x = b` by plain dense Gauss-Jordan elimination. Returns the
/// solution only when the system is consistent *and* has full column rank
/// (unique solution); `None` otherwise.
pub fn dense_solve_unique(rows: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&rr| !aug[rr][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, p);
        let inv = Rat::from_ratio(1, 1) / aug[rank][col].clone();
        for cc in 0..=ncols {
            aug[rank][cc] = aug[rank][cc].clone() * inv.clone();
        }
        for rr in 0..nrows {
            if rr != rank && !aug[rr][col].is_zero() {
                let f = aug[rr][col].clone();
                for cc in 0..=ncols {
                    let delta = f.clone() * aug[rank][cc].clone();
                    aug[rr][cc] = aug[rr][cc].clone() - delta;
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
    }
    if rank != ncols {
        return None;
    }
    if (rank..nrows).any(|rr| !aug[rr][ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &col) in pivot_col_of_row.iter().enumerate() {
        x[col] = aug[row][ncols].clone();
    }
    Some(x)
}
