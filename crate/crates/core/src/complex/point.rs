use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, lcd};
use crate::{Int, Rat};

/// A point of `Q^n` with exact coordinates. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RPoint {
    coords: Vec<Rat>,
}

impl RPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("point must have at least one coordinate"));
        }
        Ok(RPoint { coords })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(coords: &[(i64, i64)]) -> Self {
        assert!(!coords.is_empty(), "point must have at least one coordinate");
        RPoint {
            coords: coords
                .iter()
                .map(|&(p, q)| Rat::new(Int::from(p), Int::from(q)))
                .collect(),
        }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RPoint::from_fractions(&coords.iter().map(|&c| (c, 1)).collect::<Vec<_>>())
    }

    pub fn origin(dim: usize) -> Self {
        RPoint {
            coords: vec![Rat::zero(); dim],
        }
    }

    /// `e_i / weight` in `Q^dim`.
    pub fn scaled_basis(dim: usize, i: usize, weight: &Int) -> Self {
        let mut p = RPoint::origin(dim);
        p.coords[i] = Rat::new(Int::one(), weight.clone());
        p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    /// Lowest common denominator of the coordinates.
    pub fn den(&self) -> Int {
        lcd(&self.coords)
    }

    pub fn is_lattice(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// The homogeneous correspondent `den(v) * (v, 1)`.
    pub fn homog(&self) -> Vec<Int> {
        let d = self.den();
        let mut out: Vec<Int> = self
            .coords
            .iter()
            .map(|c| (c * Rat::from_integer(d.clone())).to_integer())
            .collect();
        out.push(d);
        out
    }

    /// Inverse of [`RPoint::homog`] up to positive scaling: divides through
    /// by the last entry, which must be positive.
    pub fn from_homog(h: &[Int]) -> Result<Self> {
        let (last, head) = h.split_last().ok_or(Error::Empty("homogeneous vector"))?;
        if !last.is_positive() {
            return Err(Error::Precondition(
                "homogeneous vector needs a positive last entry".into(),
            ));
        }
        RPoint::new(
            head.iter()
                .map(|x| Rat::new(x.clone(), last.clone()))
                .collect(),
        )
    }

    pub fn sub(&self, other: &RPoint) -> Vec<Rat> {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect()
    }

    /// `self + t * dir`
    pub fn offset(&self, dir: &[Rat], t: &Rat) -> RPoint {
        RPoint {
            coords: self
                .coords
                .iter()
                .zip(dir)
                .map(|(a, d)| a + t * d)
                .collect(),
        }
    }

    /// `sum_i weights[i] * points[i]`
    pub fn combination<'a>(
        points: impl IntoIterator<Item = &'a RPoint>,
        weights: &[Rat],
    ) -> RPoint {
        let mut it = points.into_iter().peekable();
        let dim = it.peek().map(|p| p.dim()).unwrap_or(0);
        let mut coords = vec![Rat::zero(); dim];
        for (p, w) in it.zip(weights) {
            if w.is_zero() {
                continue;
            }
            for (c, x) in coords.iter_mut().zip(&p.coords) {
                *c += w * x;
            }
        }
        RPoint { coords }
    }

    pub fn barycenter<'a>(points: impl IntoIterator<Item = &'a RPoint>) -> RPoint {
        let pts: Vec<&RPoint> = points.into_iter().collect();
        let w = Rat::new(Int::one(), Int::from(pts.len()));
        RPoint::combination(pts.iter().copied(), &vec![w; pts.len()])
    }

    pub(crate) fn coprime_den(&self, k: &Int) -> bool {
        self.den().gcd(k).is_one()
    }
}

impl fmt::Display for RPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn den_examples() {
        assert_eq!(RPoint::from_fractions(&[(1, 2), (1, 3)]).den(), Int::from(6));
        assert_eq!(RPoint::from_ints(&[0, 1]).den(), Int::from(1));
        assert_eq!(RPoint::from_fractions(&[(3, 4), (1, 6)]).den(), Int::from(12));
    }

    #[test]
    fn homog_examples() {
        let ints = |v: &[i64]| v.iter().map(|&x| Int::from(x)).collect::<Vec<_>>();
        assert_eq!(RPoint::from_fractions(&[(1, 2), (1, 3)]).homog(), ints(&[3, 2, 6]));
        assert_eq!(RPoint::from_ints(&[1, 1]).homog(), ints(&[1, 1, 1]));
        assert_eq!(RPoint::from_fractions(&[(1, 2)]).homog(), ints(&[1, 2]));
        let p = RPoint::from_fractions(&[(1, 2), (1, 3)]);
        assert_eq!(RPoint::from_homog(&p.homog()).unwrap(), p);
    }

    #[test]
    fn display() {
        assert_eq!(RPoint::from_fractions(&[(1, 3)]).to_string(), "1/3");
        assert_eq!(RPoint::from_fractions(&[(1, 2), (0, 1)]).to_string(), "(1/2,0)");
    }
}
