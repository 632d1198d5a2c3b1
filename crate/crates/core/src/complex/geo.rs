use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;

use crate::cell::{bboxes_overlap, Cell};
use crate::complex::{AbsComplex, GeoSimplex, RPoint};
use crate::error::{Error, Result};

/// A finite geometric simplicial complex in `Q^n`, storing every nonempty
/// face explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeoComplex {
    dim: usize,
    simplexes: BTreeSet<GeoSimplex>,
}

impl GeoComplex {
    /// Face closure of the given simplexes, validated: any two simplexes
    /// must meet in a common face.
    pub fn from_maximal(dim: usize, simplexes: Vec<GeoSimplex>) -> Result<Self> {
        if let Some(bad) = simplexes.iter().find(|s| s.ambient_dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.ambient_dim(),
            });
        }
        let c = GeoComplex::closure(dim, simplexes);
        c.validate()?;
        Ok(c)
    }

    /// Face closure without the pairwise intersection check; for results of
    /// constructions that produce complexes by design.
    pub(crate) fn closure(dim: usize, simplexes: impl IntoIterator<Item = GeoSimplex>) -> Self {
        let mut all = BTreeSet::new();
        for s in simplexes {
            if all.contains(&s) {
                continue;
            }
            for f in s.faces() {
                all.insert(f);
            }
        }
        GeoComplex {
            dim,
            simplexes: all,
        }
    }

    pub fn empty(dim: usize) -> Self {
        GeoComplex {
            dim,
            simplexes: BTreeSet::new(),
        }
    }

    /// Checks that any two maximal simplexes intersect in their common face.
    pub fn validate(&self) -> Result<()> {
        let maximal = self.maximal();
        let boxes: Vec<_> = maximal.iter().map(GeoSimplex::bbox).collect();
        let cells: Vec<Cell> = maximal.iter().map(Cell::from_simplex).collect();
        for (i, j) in (0..maximal.len()).tuple_combinations() {
            if !bboxes_overlap(&boxes[i], &boxes[j]) {
                continue;
            }
            let Some(meet) = cells[i].intersect(&cells[j]) else {
                continue;
            };
            let (s, t) = (&maximal[i], &maximal[j]);
            let common: Vec<RPoint> = s
                .vertices()
                .iter()
                .filter(|v| t.has_vertex(v))
                .cloned()
                .collect();
            let ok = !common.is_empty() && {
                let face = GeoSimplex::from_sorted_unchecked(common);
                meet.vertices().iter().all(|v| face.contains(v))
            };
            if !ok {
                return Err(Error::NotSimplicialComplex(format!(
                    "{s} and {t} meet outside a common face"
                )));
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn simplexes(&self) -> &BTreeSet<GeoSimplex> {
        &self.simplexes
    }

    pub fn len(&self) -> usize {
        self.simplexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplexes.is_empty()
    }

    pub fn contains_simplex(&self, s: &GeoSimplex) -> bool {
        self.simplexes.contains(s)
    }

    /// Largest simplex dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplexes.iter().map(GeoSimplex::dim).max()
    }

    pub fn maximal(&self) -> Vec<GeoSimplex> {
        let mut non_maximal: HashSet<GeoSimplex> = HashSet::new();
        for s in &self.simplexes {
            for f in s.facets() {
                non_maximal.insert(f);
            }
        }
        self.simplexes
            .iter()
            .filter(|s| !non_maximal.contains(*s))
            .cloned()
            .collect()
    }

    pub fn vertices(&self) -> BTreeSet<RPoint> {
        self.simplexes
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.vertices()[0].clone())
            .collect()
    }

    pub fn contains_point(&self, p: &RPoint) -> bool {
        p.dim() == self.dim && self.maximal().iter().any(|s| s.contains(p))
    }

    /// The minimal simplex containing `p`, if `p` is in the support.
    pub fn carrier(&self, p: &RPoint) -> Option<GeoSimplex> {
        if p.dim() != self.dim {
            return None;
        }
        self.maximal().iter().find_map(|s| s.carrier_face(p))
    }

    /// Simplexes strictly containing `s`.
    pub fn cofaces<'a>(&'a self, s: &'a GeoSimplex) -> impl Iterator<Item = &'a GeoSimplex> + 'a {
        self.simplexes
            .iter()
            .filter(move |t| t.dim() > s.dim() && s.is_face_of(t))
    }

    pub(crate) fn with_simplexes(dim: usize, simplexes: BTreeSet<GeoSimplex>) -> Self {
        GeoComplex { dim, simplexes }
    }

    /// Standard triangulation of `[0,1]^n`: one simplex per maximal chain of
    /// `{0,1}^n` under the product order.
    pub fn standard_cube(n: usize) -> Self {
        assert!(n >= 1, "cube dimension must be positive");
        let simplexes = (0..n).permutations(n).map(|order| {
            let mut coords = vec![0i64; n];
            let mut chain = vec![RPoint::from_ints(&coords)];
            for i in order {
                coords[i] = 1;
                chain.push(RPoint::from_ints(&coords));
            }
            GeoSimplex::from_unsorted_unchecked(chain)
        });
        GeoComplex::closure(n, simplexes)
    }

    /// Skeleton with vertices labelled by their points, in lexicographic order.
    pub fn skeleton(&self) -> AbsComplex<RPoint> {
        let verts: Vec<RPoint> = self.vertices().into_iter().collect();
        let index: BTreeMap<&RPoint, usize> =
            verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let faces = self
            .simplexes
            .iter()
            .map(|s| s.vertices().iter().map(|v| index[v]).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        AbsComplex::from_index_faces(verts.clone(), faces)
    }

    /// A vertex bijection witnessing that the skeletons are isomorphic.
    pub fn simplicially_isomorphic(&self, other: &GeoComplex) -> Option<BTreeMap<RPoint, RPoint>> {
        let a = self.skeleton();
        let b = other.skeleton();
        let map = a.isomorphism(&b)?;
        Some(
            map.into_iter()
                .enumerate()
                .map(|(i, j)| (a.vertices()[i].clone(), b.vertices()[j].clone()))
                .collect(),
        )
    }

    /// Simplexes of `self` lying inside `|region|`.
    pub fn subcomplex_within(&self, region: &GeoComplex) -> GeoComplex {
        let inside = self
            .maximal()
            .into_iter()
            .flat_map(|m| m.faces().collect::<Vec<_>>())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|s| crate::cell::covers(region, s))
            .collect();
        GeoComplex {
            dim: self.dim,
            simplexes: inside,
        }
    }

    /// Whether `|other| ⊆ |self|`.
    pub fn support_contains(&self, other: &GeoComplex) -> bool {
        other
            .maximal()
            .iter()
            .all(|s| crate::cell::covers(self, s))
    }

    pub fn same_support(&self, other: &GeoComplex) -> bool {
        self.dim == other.dim && self.support_contains(other) && other.support_contains(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[(i64, i64)]) -> RPoint {
        RPoint::from_fractions(c)
    }

    fn simplex(vs: &[&[(i64, i64)]]) -> GeoSimplex {
        GeoSimplex::new(vs.iter().map(|c| p(c)).collect()).unwrap()
    }

    #[test]
    fn segment_closure() {
        let c = GeoComplex::from_maximal(1, vec![simplex(&[&[(0, 1)], &[(1, 1)]])]).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn two_triangle_square() {
        let c = GeoComplex::from_maximal(
            2,
            vec![
                simplex(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(1, 1), (1, 1)]]),
                simplex(&[&[(0, 1), (0, 1)], &[(0, 1), (1, 1)], &[(1, 1), (1, 1)]]),
            ],
        )
        .unwrap();
        let count = |d| c.simplexes().iter().filter(|s| s.dim() == d).count();
        assert_eq!((count(0), count(1), count(2)), (4, 5, 2));
        assert_eq!(c, GeoComplex::standard_cube(2));
    }

    #[test]
    fn overlapping_segments_rejected() {
        let e = GeoComplex::from_maximal(
            1,
            vec![simplex(&[&[(0, 1)], &[(1, 1)]]), simplex(&[&[(1, 2)], &[(3, 2)]])],
        );
        assert!(matches!(e, Err(Error::NotSimplicialComplex(_))));
    }

    #[test]
    fn crossing_diagonals_rejected() {
        let e = GeoComplex::from_maximal(
            2,
            vec![
                simplex(&[&[(0, 1), (0, 1)], &[(1, 1), (1, 1)]]),
                simplex(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]),
            ],
        );
        assert!(e.is_err());
    }

    #[test]
    fn from_maximal_is_idempotent() {
        let c = GeoComplex::standard_cube(3);
        let again = GeoComplex::from_maximal(3, c.maximal()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn standard_cube_counts() {
        assert_eq!(GeoComplex::standard_cube(1).maximal(), vec![simplex(&[&[(0, 1)], &[(1, 1)]])]);
        assert_eq!(
            GeoComplex::standard_cube(2).maximal(),
            vec![
                simplex(&[&[(0, 1), (0, 1)], &[(0, 1), (1, 1)], &[(1, 1), (1, 1)]]),
                simplex(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(1, 1), (1, 1)]]),
            ]
        );
        let c3 = GeoComplex::standard_cube(3);
        assert_eq!(c3.maximal().len(), 6);
        assert!(c3.maximal().iter().all(|s| s.dim() == 3));
    }

    #[test]
    fn standard_cube_support_on_quarter_grid() {
        for n in 1..=3usize {
            let c = GeoComplex::standard_cube(n);
            let grid: Vec<Vec<i64>> = (0..n).map(|_| -1i64..=5).multi_cartesian_product().collect();
            for g in grid {
                let q = p(&g.iter().map(|&x| (x, 4)).collect::<Vec<_>>());
                let inside = g.iter().all(|&x| (0..=4).contains(&x));
                assert_eq!(c.contains_point(&q), inside, "{q}");
            }
        }
    }

    #[test]
    fn carrier_examples() {
        let c = GeoComplex::standard_cube(2);
        assert_eq!(
            c.carrier(&p(&[(1, 2), (1, 2)])),
            Some(simplex(&[&[(0, 1), (0, 1)], &[(1, 1), (1, 1)]]))
        );
        assert_eq!(c.carrier(&p(&[(1, 1), (0, 1)])), Some(GeoSimplex::vertex(p(&[(1, 1), (0, 1)]))));
        assert_eq!(c.carrier(&p(&[(2, 1), (2, 1)])), None);
    }

    #[test]
    fn carrier_is_minimal_on_grid() {
        let c = GeoComplex::standard_cube(2);
        for x in 0..=8 {
            for y in 0..=8 {
                let q = p(&[(x, 8), (y, 8)]);
                let carrier = c.carrier(&q).unwrap();
                assert!(carrier.contains(&q));
                for s in c.simplexes().iter().filter(|s| s.contains(&q)) {
                    assert!(carrier.is_face_of(s));
                }
            }
        }
    }

    #[test]
    fn skeleton_of_square() {
        let sk = GeoComplex::standard_cube(2).skeleton();
        assert_eq!(sk.vertices().len(), 4);
        assert_eq!(sk.faces().iter().filter(|f| f.len() == 3).count(), 2);
    }

    #[test]
    fn isomorphism_examples() {
        let c = GeoComplex::standard_cube(2);
        let id = c.simplicially_isomorphic(&c).unwrap();
        assert_eq!(id.len(), 4);
        let path = |pts: [(i64, i64); 3]| {
            GeoComplex::from_maximal(
                1,
                vec![
                    simplex(&[&[pts[0]], &[pts[1]]]),
                    simplex(&[&[pts[1]], &[pts[2]]]),
                ],
            )
            .unwrap()
        };
        let a = path([(0, 1), (1, 2), (1, 1)]);
        let b = path([(0, 1), (1, 3), (1, 1)]);
        assert!(a.simplicially_isomorphic(&b).is_some());
        let edges = GeoComplex::from_maximal(
            2,
            vec![
                simplex(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)]]),
                simplex(&[&[(1, 1), (0, 1)], &[(1, 1), (1, 1)]]),
                simplex(&[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]]),
            ],
        )
        .unwrap();
        assert!(c.simplicially_isomorphic(&edges).is_none());
    }
}
