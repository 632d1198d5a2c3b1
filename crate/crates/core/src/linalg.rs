//! Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::Rat;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (src, dst) = if r < row {
                    let (a, b) = m.split_at_mut(row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[row], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rat>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let ncols = first.len();
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

pub(crate) enum Solution {
    Inconsistent,
    Unique(Vec<Rat>),
    /// A particular solution with every free variable set to zero.
    Many(Vec<Rat>),
}

pub(crate) fn solve(a: &[Vec<Rat>], b: &[Rat], nvars: usize) -> Solution {
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, nvars + 1);
    if pivots.last() == Some(&nvars) {
        return Solution::Inconsistent;
    }
    let mut x = vec![Rat::zero(); nvars];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][nvars].clone();
    }
    if pivots.len() == nvars {
        Solution::Unique(x)
    } else {
        Solution::Many(x)
    }
}

pub(crate) fn solve_unique(a: &[Vec<Rat>], b: &[Rat], nvars: usize) -> Option<Vec<Rat>> {
    match solve(a, b, nvars) {
        Solution::Unique(x) => Some(x),
        _ => None,
    }
}

pub(crate) fn solve_any(a: &[Vec<Rat>], b: &[Rat], nvars: usize) -> Option<Vec<Rat>> {
    match solve(a, b, nvars) {
        Solution::Unique(x) | Solution::Many(x) => Some(x),
        Solution::Inconsistent => None,
    }
}

/// Basis of `{x : a x = 0}`.
pub(crate) fn nullspace(a: &[Vec<Rat>], nvars: usize) -> Vec<Vec<Rat>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, nvars);
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); nvars];
            x[f] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

pub(crate) fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        d *= &m[col][col];
        let pivot = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            let src = m[col].clone();
            for (x, s) in m[r].iter_mut().zip(src.iter()) {
                *x -= &f * s;
            }
        }
    }
    d
}
