//! Exact integer and rational kernels.
//!
//! Generic over the integer scalar. The geometry layer uses
//! [`num_bigint::BigInt`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer scalars the lattice kernels accept.
pub trait Integral: Integer + Signed + Clone + Debug + Display + Hash {}

impl<T> Integral for T where T: Integer + Signed + Clone + Debug + Display + Hash {}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<I> {
    rows: usize,
    cols: usize,
    data: Vec<I>,
}

impl<I: Integral> Matrix<I> {
    pub fn new(rows: usize, cols: usize, data: Vec<I>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty("matrix must have at least one row and one column"));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<I>]) -> Result<Self> {
        let first = rows.first().ok_or(Error::Empty("matrix rows"))?;
        let cols = first.len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Matrix::new(rows.len(), cols, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = I::one();
        }
        m
    }

    fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![I::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[I] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix<I>) -> Result<Matrix<I>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out: Matrix<I> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[I]) -> Vec<I> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(I::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &I) {
        for j in 0..self.cols {
            let v = self[(src, j)].clone() * factor.clone();
            self[(dst, j)] = self[(dst, j)].clone() + v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &I) {
        for i in 0..self.rows {
            let v = self[(i, src)].clone() * factor.clone();
            self[(i, dst)] = self[(i, dst)].clone() + v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)].clone();
        }
    }
}

impl<I> Index<(usize, usize)> for Matrix<I> {
    type Output = I;
    fn index(&self, (r, c): (usize, usize)) -> &I {
        &self.data[r * self.cols + c]
    }
}

impl<I> IndexMut<(usize, usize)> for Matrix<I> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut I {
        &mut self.data[r * self.cols + c]
    }
}

/// Smith decomposition `left * m * right = diag(diag)`, with both transforms
/// unimodular. `right_inv` is kept in step so saturations can be read off.
#[derive(Clone, Debug)]
pub struct Smith<I> {
    pub diag: Vec<I>,
    pub left: Matrix<I>,
    pub right: Matrix<I>,
    pub right_inv: Matrix<I>,
}

impl<I: Integral> Smith<I> {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }
}

fn min_nonzero<I: Integral>(
    a: &Matrix<I>,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), I)> = None;
    for (i, j) in cells {
        let v = a[(i, j)].abs();
        if v.is_zero() {
            continue;
        }
        match &best {
            Some((_, b)) if *b <= v => {}
            _ => best = Some(((i, j), v)),
        }
    }
    best.map(|(p, _)| p)
}

/// Smith normal form by elementary row/column reduction, always pivoting on
/// the entry of least nonzero absolute value.
pub fn smith<I: Integral>(m: &Matrix<I>) -> Smith<I> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = Matrix::identity(rows);
    let mut right = Matrix::identity(cols);
    let mut right_inv = Matrix::identity(cols);
    let k = rows.min(cols);

    let move_pivot = |a: &mut Matrix<I>,
                      left: &mut Matrix<I>,
                      right: &mut Matrix<I>,
                      right_inv: &mut Matrix<I>,
                      t: usize,
                      (pi, pj): (usize, usize)| {
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);
        right_inv.swap_rows(t, pj);
    };

    for t in 0..k {
        let cells = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some(p) = min_nonzero(&a, cells) else { break };
        move_pivot(&mut a, &mut left, &mut right, &mut right_inv, t, p);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                let neg = -q;
                a.add_row(i, t, &neg);
                left.add_row(i, t, &neg);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                let neg = -q.clone();
                a.add_col(j, t, &neg);
                right.add_col(j, t, &neg);
                right_inv.add_row(t, j, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                let cells = (t..rows)
                    .map(|i| (i, t))
                    .chain((t + 1..cols).map(|j| (t, j)));
                let p = min_nonzero(&a, cells).expect("pivot row/column is nonzero");
                move_pivot(&mut a, &mut left, &mut right, &mut right_inv, t, p);
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let one = I::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diag = (0..k).map(|t| a[(t, t)].clone()).collect();
    Smith {
        diag,
        left,
        right,
        right_inv,
    }
}

/// Smith-form diagonal `d1 | d2 | ...`, length `min(rows, cols)`.
pub fn invariant_factors<I: Integral>(m: &Matrix<I>) -> Vec<I> {
    smith(m).diag
}

/// Whether the given integer vectors extend to a basis of `Z^m`.
///
/// Fails with [`Error::NotAffinelyIndependent`] when the vectors are
/// linearly dependent over the rationals.
pub fn extends_to_basis<I: Integral>(rows: &[Vec<I>]) -> Result<bool> {
    let m = Matrix::from_rows(rows)?;
    if m.rows() > m.cols() {
        return Err(Error::NotAffinelyIndependent);
    }
    let factors = invariant_factors(&m);
    if factors.iter().any(Zero::is_zero) {
        return Err(Error::NotAffinelyIndependent);
    }
    Ok(factors.iter().all(One::is_one))
}

/// A Z-basis of the saturation `span_Q(rows) ∩ Z^m` of the row lattice.
pub fn saturation_basis<I: Integral>(rows: &[Vec<I>]) -> Result<Vec<Vec<I>>> {
    let m = Matrix::from_rows(rows)?;
    let s = smith(&m);
    Ok((0..s.rank()).map(|i| s.right_inv.row(i).to_vec()).collect())
}

/// An integer solution `z` of `a z = b`, if one exists.
pub fn solve_integer<I: Integral>(a: &Matrix<I>, b: &[I]) -> Option<Vec<I>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    let s = smith(a);
    let ub = s.left.mul_vec(b);
    let mut y = vec![I::zero(); a.cols()];
    for (i, rhs) in ub.iter().enumerate() {
        match s.diag.get(i) {
            Some(d) if !d.is_zero() => {
                if !rhs.is_multiple_of(d) {
                    return None;
                }
                y[i] = rhs.div_floor(d);
            }
            _ => {
                if !rhs.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(s.right.mul_vec(&y))
}

/// Lowest common denominator of a list of rationals.
pub fn lcd<I: Integral>(xs: &[Ratio<I>]) -> I {
    xs.iter().fold(I::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_all<'a, I: Integral + 'a>(xs: impl IntoIterator<Item = &'a I>) -> I {
    xs.into_iter().fold(I::zero(), |acc, x| acc.gcd(x))
}

/// Prints a rational as `p/q` in lowest terms, or `p` when integral.
pub fn format_rational<I: Integral>(x: &Ratio<I>) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or `p`; rejects zero or negative denominators and fractions
/// not in lowest terms.
pub fn parse_rational<I: Integral + Num>(s: &str) -> std::result::Result<Ratio<I>, String> {
    let parse_int = |t: &str| -> std::result::Result<I, String> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid integer {t:?}"));
        }
        I::from_str_radix(t, 10).map_err(|_| format!("invalid integer {t:?}"))
    };
    match s.split_once('/') {
        None => Ok(Ratio::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            if q.starts_with('-') {
                return Err(format!("{s:?}: denominator must be positive"));
            }
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(format!("{s:?}: zero denominator"));
            }
            if !num.gcd(&den).is_one() {
                return Err(format!("{s:?}: not in lowest terms"));
            }
            Ok(Ratio::new_raw(num, den))
        }
    }
}
