use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::affine::AffineFn;
use crate::complex::RPoint;
use crate::error::{Error, Result};
use crate::linalg;
use crate::{Int, Rat};

/// `conv(v0, ..., vk)` for affinely independent rational points, vertices
/// kept in lexicographic order so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeoSimplex {
    vertices: Vec<RPoint>,
}

/// Barycentric functionals of a simplex extended to the ambient space, plus
/// the equations of its affine hull.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub barycentric: Vec<AffineFn>,
    pub hull: Vec<AffineFn>,
}

pub(crate) fn affinely_independent(points: &[RPoint]) -> bool {
    let Some((first, rest)) = points.split_first() else {
        return false;
    };
    let diffs: Vec<Vec<Rat>> = rest.iter().map(|p| p.sub(first)).collect();
    linalg::rank(&diffs) == rest.len()
}

pub(crate) fn affine_dim(points: &[&RPoint]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rat>> = rest.iter().map(|p| p.sub(first)).collect();
    linalg::rank(&diffs)
}

impl GeoSimplex {
    pub fn new(mut vertices: Vec<RPoint>) -> Result<Self> {
        let dim = vertices
            .first()
            .ok_or(Error::Empty("simplex needs at least one vertex"))?
            .dim();
        if let Some(bad) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) || !affinely_independent(&vertices) {
            return Err(Error::NotAffinelyIndependent);
        }
        Ok(GeoSimplex { vertices })
    }

    /// Caller guarantees sorted, distinct, affinely independent vertices.
    pub(crate) fn from_sorted_unchecked(vertices: Vec<RPoint>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        GeoSimplex { vertices }
    }

    pub(crate) fn from_unsorted_unchecked(mut vertices: Vec<RPoint>) -> Self {
        vertices.sort();
        vertices.dedup();
        GeoSimplex { vertices }
    }

    pub fn vertex(p: RPoint) -> Self {
        GeoSimplex { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[RPoint] {
        &self.vertices
    }

    /// Simplex dimension `k` for `k + 1` vertices.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn has_vertex(&self, p: &RPoint) -> bool {
        self.vertices.binary_search(p).is_ok()
    }

    pub fn is_face_of(&self, other: &GeoSimplex) -> bool {
        self.vertices.iter().all(|v| other.has_vertex(v))
    }

    /// All nonempty faces, the simplex itself included.
    pub fn faces(&self) -> impl Iterator<Item = GeoSimplex> + '_ {
        (1..=self.vertices.len()).flat_map(move |k| {
            self.vertices
                .iter()
                .cloned()
                .combinations(k)
                .map(GeoSimplex::from_sorted_unchecked)
        })
    }

    pub fn facets(&self) -> Vec<GeoSimplex> {
        if self.vertices.len() == 1 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|i| self.without_vertex(i))
            .collect()
    }

    pub(crate) fn without_vertex(&self, i: usize) -> GeoSimplex {
        let mut v = self.vertices.clone();
        v.remove(i);
        GeoSimplex::from_sorted_unchecked(v)
    }

    /// Barycentric coordinates of `p` when `p` lies in the affine hull.
    pub fn barycentric(&self, p: &RPoint) -> Option<Vec<Rat>> {
        if p.dim() != self.ambient_dim() {
            return None;
        }
        let n = self.ambient_dim();
        let k = self.vertices.len();
        let mut rows: Vec<Vec<Rat>> = (0..n)
            .map(|i| self.vertices.iter().map(|v| v.coords()[i].clone()).collect())
            .collect();
        rows.push(vec![Rat::one(); k]);
        let mut rhs: Vec<Rat> = p.coords().to_vec();
        rhs.push(Rat::one());
        linalg::solve_unique(&rows, &rhs, k)
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        if !self.bbox_contains(p) {
            return false;
        }
        self.barycentric(p)
            .is_some_and(|l| l.iter().all(|x| !x.is_negative()))
    }

    /// Vertices carrying positive barycentric weight: the face whose
    /// relative interior contains `p`.
    pub fn carrier_face(&self, p: &RPoint) -> Option<GeoSimplex> {
        let l = self.barycentric(p)?;
        if l.iter().any(Signed::is_negative) {
            return None;
        }
        Some(GeoSimplex::from_sorted_unchecked(
            self.vertices
                .iter()
                .zip(&l)
                .filter(|(_, x)| x.is_positive())
                .map(|(v, _)| v.clone())
                .collect(),
        ))
    }

    pub fn in_relative_interior(&self, p: &RPoint) -> bool {
        self.barycentric(p)
            .is_some_and(|l| l.iter().all(Signed::is_positive))
    }

    pub fn point_at(&self, weights: &[Rat]) -> RPoint {
        RPoint::combination(&self.vertices, weights)
    }

    pub fn barycenter(&self) -> RPoint {
        RPoint::barycenter(&self.vertices)
    }

    /// Homogeneous correspondents of the vertices, one row each.
    pub fn homog_rows(&self) -> Vec<Vec<Int>> {
        self.vertices.iter().map(RPoint::homog).collect()
    }

    pub fn vertex_dens(&self) -> Vec<Int> {
        self.vertices.iter().map(RPoint::den).collect()
    }

    pub(crate) fn bbox(&self) -> (Vec<Rat>, Vec<Rat>) {
        let n = self.ambient_dim();
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for i in 0..n {
                let c = &v.coords()[i];
                if *c < lo[i] {
                    lo[i] = c.clone();
                }
                if *c > hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
        (lo, hi)
    }

    fn bbox_contains(&self, p: &RPoint) -> bool {
        let (lo, hi) = self.bbox();
        p.coords()
            .iter()
            .zip(lo.iter().zip(&hi))
            .all(|(c, (l, h))| l <= c && c <= h)
    }

    pub(crate) fn frame(&self) -> Frame {
        let n = self.ambient_dim();
        let rows: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut r = v.coords().to_vec();
                r.push(Rat::one());
                r
            })
            .collect();
        let to_fn = |z: Vec<Rat>| {
            let mut coeffs = z;
            let constant = coeffs.pop().expect("n + 1 unknowns");
            AffineFn { coeffs, constant }
        };
        let barycentric = (0..self.vertices.len())
            .map(|i| {
                let rhs: Vec<Rat> = (0..self.vertices.len())
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect();
                let z = linalg::solve_any(&rows, &rhs, n + 1)
                    .expect("affinely independent vertices");
                to_fn(z)
            })
            .collect();
        let hull = linalg::nullspace(&rows, n + 1)
            .into_iter()
            .map(to_fn)
            .collect();
        Frame { barycentric, hull }
    }

    /// Volume of `inner` relative to `self`, both of dimension `dim()` and
    /// `inner` inside the affine hull of `self`.
    pub(crate) fn relative_volume(&self, inner: &GeoSimplex) -> Rat {
        let d = self.dim();
        if d == 0 {
            return Rat::one();
        }
        let bary: Vec<Vec<Rat>> = inner
            .vertices
            .iter()
            .map(|v| self.barycentric(v).expect("inner simplex lies in the hull"))
            .collect();
        let m: Vec<Vec<Rat>> = bary[1..]
            .iter()
            .map(|b| (1..=d).map(|i| &b[i] - &bary[0][i]).collect())
            .collect();
        linalg::det(m).abs()
    }
}

impl fmt::Display for GeoSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv({})", self.vertices.iter().join(","))
    }
}
