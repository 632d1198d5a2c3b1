//! Stellar subdivision, subdivision checks, common refinement, restriction
//! to a subpolyhedron and refinement compatible with a PL map.

use std::collections::BTreeSet;

use crate::affine::AffineFn;
use crate::cell::{bboxes_overlap, covers, overlay, pieces_cover, Cell};
use crate::complex::{GeoComplex, GeoSimplex, RPoint};
use crate::error::{Error, Result};
use crate::zmap::PLMap;
use crate::Rat;

use num_traits::{Signed, Zero};

/// The elementary stellar subdivision of `delta` at `p`.
pub fn stellar(delta: &GeoComplex, p: &RPoint) -> Result<GeoComplex> {
    if !delta.contains_point(p) {
        return Err(Error::PointNotInSupport(p.to_string()));
    }
    let mut out = Vec::new();
    for s in delta.maximal() {
        if s.dim() == 0 || !s.contains(p) {
            out.push(s);
            continue;
        }
        for f in s.facets() {
            if f.contains(p) {
                continue;
            }
            let mut vs = f.vertices().to_vec();
            vs.push(p.clone());
            out.push(GeoSimplex::from_unsorted_unchecked(vs));
        }
    }
    Ok(GeoComplex::closure(delta.ambient_dim(), out))
}

pub fn stellar_chain(delta: &GeoComplex, ps: &[RPoint]) -> Result<GeoComplex> {
    ps.iter()
        .try_fold(delta.clone(), |acc, p| stellar(&acc, p))
}

/// Whether `delta` subdivides `sigma`: equal supports and every simplex of
/// `delta` inside a simplex of `sigma`.
pub fn is_subdivision(delta: &GeoComplex, sigma: &GeoComplex) -> bool {
    if delta.ambient_dim() != sigma.ambient_dim() {
        return false;
    }
    let dmax = delta.maximal();
    let smax = sigma.maximal();
    let inside = |d: &GeoSimplex, t: &GeoSimplex| d.vertices().iter().all(|v| t.contains(v));
    if !dmax.iter().all(|d| smax.iter().any(|t| inside(d, t))) {
        return false;
    }
    smax.iter().all(|t| {
        let pieces: BTreeSet<GeoSimplex> = dmax
            .iter()
            .filter(|d| d.dim() == t.dim() && inside(d, t))
            .cloned()
            .collect();
        pieces_cover(t, &pieces)
    })
}

/// A triangulation subdividing both inputs, built from the cells `S ∩ T`.
/// Simplexes of `delta` lying inside a simplex of `sigma` survive.
pub fn common_refinement(delta: &GeoComplex, sigma: &GeoComplex) -> Result<GeoComplex> {
    if !delta.same_support(sigma) {
        return Err(Error::SupportMismatch(
            "common refinement needs triangulations of the same polyhedron".into(),
        ));
    }
    if delta == sigma {
        return Ok(delta.clone());
    }
    let pieces = overlay(&delta.maximal(), &sigma.maximal());
    Ok(GeoComplex::closure(delta.ambient_dim(), pieces))
}

/// Whether `h` separates two vertices of `s`.
fn splits(h: &AffineFn, s: &GeoSimplex) -> bool {
    let signs: Vec<Rat> = s.vertices().iter().map(|v| h.eval(v)).collect();
    signs.iter().any(Signed::is_positive) && signs.iter().any(Signed::is_negative)
}

/// Hyperplanes bounding the pieces of `p`: hull equations of every maximal
/// simplex and its facet hyperplanes. Facets shared by two maximal
/// simplexes spanning the same affine hull are optionally skipped. Facet
/// hyperplanes are free off the hull, so a variant missing the protected
/// simplexes is preferred.
fn arrangement(p: &GeoComplex, skip_interior: bool, protected: &[GeoSimplex]) -> Vec<AffineFn> {
    let maximal = p.maximal();
    let mut out = BTreeSet::new();
    let harmless = |h: &AffineFn| !protected.iter().any(|s| splits(h, s));
    for (i, q) in maximal.iter().enumerate() {
        let frame = q.frame();
        let on_hull = |v: &RPoint| frame.hull.iter().all(|h| h.eval(v).is_zero());
        for h in &frame.hull {
            if harmless(h) {
                out.extend(h.normalized_hyperplane());
            }
        }
        if q.dim() == 0 {
            continue;
        }
        for (k, lam) in frame.barycentric.iter().enumerate() {
            let facet = q.without_vertex(k);
            let interior = skip_interior
                && maximal.iter().enumerate().any(|(j, r)| {
                    j != i && r.dim() == q.dim() && facet.is_face_of(r) && r.vertices().iter().all(on_hull)
                });
            if interior {
                continue;
            }
            let variants = std::iter::once(lam.clone()).chain(frame.hull.iter().flat_map(|h| {
                [lam.add(h), lam.add(&h.negated())]
            }));
            let chosen = variants.clone().find(|v| harmless(v)).unwrap_or_else(|| lam.clone());
            out.extend(chosen.normalized_hyperplane());
        }
    }
    out.into_iter().collect()
}

fn cut_all(delta: &GeoComplex, hyperplanes: &[AffineFn]) -> GeoComplex {
    let mut pieces = Vec::new();
    for s in delta.maximal() {
        let mut cells = vec![Cell::from_simplex(&s)];
        for h in hyperplanes {
            cells = cells.iter().flat_map(|c| c.cut(h)).collect();
        }
        for c in cells {
            pieces.extend(c.triangulate());
        }
    }
    GeoComplex::closure(delta.ambient_dim(), pieces)
}

/// Simplexes of `delta` lying in `|p|`.
pub fn inside_part(delta: &GeoComplex, p: &GeoComplex) -> GeoComplex {
    let simplexes = delta
        .simplexes()
        .iter()
        .filter(|s| p.contains_point(&s.barycenter()) && covers(p, s))
        .cloned()
        .collect();
    GeoComplex::with_simplexes(delta.ambient_dim(), simplexes)
}

/// A subdivision of `delta` whose simplexes inside `|p|` triangulate `|p|`.
pub fn restrict(delta: &GeoComplex, p: &GeoComplex) -> Result<GeoComplex> {
    if delta.ambient_dim() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: delta.ambient_dim(),
            found: p.ambient_dim(),
        });
    }
    if !delta.support_contains(p) {
        return Err(Error::NotContained(
            "polyhedron is not inside the support of the triangulation".into(),
        ));
    }
    if p.maximal().iter().all(|q| delta.contains_simplex(q)) {
        return Ok(delta.clone());
    }
    let protected: Vec<GeoSimplex> = delta.maximal().into_iter().filter(|s| covers(p, s)).collect();
    for (skip_interior, protect) in [(true, true), (false, true), (true, false), (false, false)] {
        let guard: &[GeoSimplex] = if protect { &protected } else { &[] };
        let refined = cut_all(delta, &arrangement(p, skip_interior, guard));
        if inside_part(&refined, p).same_support(p) {
            return Ok(refined);
        }
    }
    Err(Error::Precondition(
        "restriction did not produce a triangulation of the polyhedron".into(),
    ))
}

/// A subdivision of `delta` on which `eta` maps each simplex into a single
/// simplex of `nabla`. Simplexes already mapped into one simplex survive.
pub fn refine_for_map(delta: &GeoComplex, eta: &PLMap, nabla: &GeoComplex) -> Result<GeoComplex> {
    let targets = nabla.maximal();
    let target_boxes: Vec<_> = targets.iter().map(GeoSimplex::bbox).collect();
    let target_cells: Vec<Cell> = targets.iter().map(Cell::from_simplex).collect();
    let mut out = Vec::new();
    for s in delta.maximal() {
        let map = eta.affine_on(&s)?;
        let images: Vec<RPoint> = s
            .vertices()
            .iter()
            .map(|v| eta.eval(v))
            .collect::<Result<_>>()?;
        if targets.iter().any(|t| images.iter().all(|y| t.contains(y))) {
            out.push(s);
            continue;
        }
        let image_box = GeoSimplex::from_unsorted_unchecked(images).bbox();
        let cell = Cell::from_simplex(&s);
        let mut pieces = BTreeSet::new();
        for (t, tb) in target_cells.iter().zip(&target_boxes) {
            if !bboxes_overlap(&image_box, tb) {
                continue;
            }
            if let Some(c) = cell.pullback_intersect(t, &map) {
                pieces.extend(c.triangulate());
            }
        }
        if !pieces_cover(&s, &pieces) {
            return Err(Error::NotContained(format!(
                "image of {s} is not inside the target triangulation"
            )));
        }
        out.extend(pieces);
    }
    Ok(GeoComplex::closure(delta.ambient_dim(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn p1(num: i64, den: i64) -> RPoint {
        RPoint::from_fractions(&[(num, den)])
    }

    fn p2(a: (i64, i64), b: (i64, i64)) -> RPoint {
        RPoint::from_fractions(&[a, b])
    }

    fn seg(a: RPoint, b: RPoint) -> GeoSimplex {
        GeoSimplex::new(vec![a, b]).unwrap()
    }

    fn interval_complex(cuts: &[(i64, i64)]) -> GeoComplex {
        let pts: Vec<RPoint> = cuts.iter().map(|&(a, b)| p1(a, b)).collect();
        GeoComplex::from_maximal(
            1,
            pts.windows(2).map(|w| seg(w[0].clone(), w[1].clone())).collect(),
        )
        .unwrap()
    }

    fn unit_triangle() -> GeoComplex {
        GeoComplex::from_maximal(
            2,
            vec![GeoSimplex::new(vec![p2((0, 1), (0, 1)), p2((1, 1), (0, 1)), p2((0, 1), (1, 1))]).unwrap()],
        )
        .unwrap()
    }

    fn anti_diagonal_square() -> GeoComplex {
        let v = |x, y| RPoint::from_ints(&[x, y]);
        GeoComplex::from_maximal(
            2,
            vec![
                GeoSimplex::new(vec![v(0, 0), v(1, 0), v(0, 1)]).unwrap(),
                GeoSimplex::new(vec![v(1, 0), v(0, 1), v(1, 1)]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn tent(peak: (i64, i64)) -> PLMap {
        PLMap::new(
            interval_complex(&[(0, 1), (1, 2), (1, 1)]),
            [(p1(0, 1), p1(0, 1)), (p1(1, 2), p1(peak.0, peak.1)), (p1(1, 1), p1(0, 1))].into(),
        )
        .unwrap()
    }

    #[test]
    fn stellar_examples() {
        let unit = GeoComplex::standard_cube(1);
        let halves = stellar(&unit, &p1(1, 2)).unwrap();
        assert_eq!(halves, interval_complex(&[(0, 1), (1, 2), (1, 1)]));

        let tri = unit_triangle();
        let b = tri.maximal()[0].barycenter();
        let fan = stellar(&tri, &b).unwrap();
        assert_eq!(fan.maximal().len(), 3);
        assert!(fan.maximal().iter().all(|s| s.has_vertex(&b)));

        assert_eq!(stellar(&unit, &p1(1, 1)).unwrap(), unit);
        assert!(matches!(stellar(&unit, &p1(3, 2)), Err(Error::PointNotInSupport(_))));
    }

    #[test]
    fn stellar_chain_examples() {
        let unit = GeoComplex::standard_cube(1);
        assert_eq!(stellar_chain(&unit, &[]).unwrap(), unit);
        assert_eq!(
            stellar_chain(&unit, &[p1(1, 2), p1(1, 4)]).unwrap(),
            interval_complex(&[(0, 1), (1, 4), (1, 2), (1, 1)])
        );
        let tri = unit_triangle();
        let b = tri.maximal()[0].barycenter();
        let c = stellar_chain(&tri, &[b, p2((1, 2), (0, 1))]).unwrap();
        assert_eq!(c.maximal().len(), 4);
    }

    #[test]
    fn subdivision_examples() {
        let tri = unit_triangle();
        let fine = stellar(&tri, &tri.maximal()[0].barycenter()).unwrap();
        assert!(is_subdivision(&fine, &tri));
        assert!(!is_subdivision(&tri, &fine));
        let sq = GeoComplex::standard_cube(2);
        assert!(!is_subdivision(&sq, &anti_diagonal_square()));
        assert!(!is_subdivision(&anti_diagonal_square(), &sq));
        assert!(!is_subdivision(&interval_complex(&[(0, 1), (1, 2)]), &GeoComplex::standard_cube(1)));
    }

    #[test]
    fn stellar_preserves_support_on_grid() {
        let sq = GeoComplex::standard_cube(2);
        let sub = stellar_chain(&sq, &[p2((1, 3), (1, 4)), p2((1, 2), (1, 2)), p2((1, 1), (3, 5))]).unwrap();
        assert!(is_subdivision(&sub, &sq));
        for (x, y) in (-1..=9).cartesian_product(-1..=9) {
            let q = p2((x, 8), (y, 8));
            assert_eq!(sq.contains_point(&q), sub.contains_point(&q));
        }
    }

    #[test]
    fn common_refinement_examples() {
        let sq = GeoComplex::standard_cube(2);
        assert_eq!(common_refinement(&sq, &sq).unwrap(), sq);

        let a = interval_complex(&[(0, 1), (1, 2), (1, 1)]);
        let b = interval_complex(&[(0, 1), (1, 3), (1, 1)]);
        assert_eq!(
            common_refinement(&a, &b).unwrap(),
            interval_complex(&[(0, 1), (1, 3), (1, 2), (1, 1)])
        );

        let r = common_refinement(&sq, &anti_diagonal_square()).unwrap();
        let center = p2((1, 2), (1, 2));
        assert_eq!(r.maximal().len(), 4);
        assert!(r.maximal().iter().all(|s| s.has_vertex(&center)));
        assert!(is_subdivision(&r, &sq) && is_subdivision(&r, &anti_diagonal_square()));

        let short = interval_complex(&[(0, 1), (1, 2)]);
        assert!(matches!(common_refinement(&short, &a), Err(Error::SupportMismatch(_))));
    }

    #[test]
    fn common_refinement_keeps_contained_simplexes() {
        let sq = GeoComplex::standard_cube(2);
        let other = stellar(&sq, &p2((1, 4), (3, 4))).unwrap();
        let r = common_refinement(&sq, &other).unwrap();
        for s in sq.simplexes() {
            let contained = other
                .maximal()
                .iter()
                .any(|t| s.vertices().iter().all(|v| t.contains(v)));
            if contained {
                assert!(r.contains_simplex(s), "{s}");
            }
        }
        assert!(r.contains_simplex(&sq.maximal()[1]));
    }

    #[test]
    fn restrict_examples() {
        let unit = GeoComplex::standard_cube(1);
        let point = GeoComplex::from_maximal(1, vec![GeoSimplex::vertex(p1(1, 3))]).unwrap();
        assert_eq!(restrict(&unit, &point).unwrap(), interval_complex(&[(0, 1), (1, 3), (1, 1)]));
        assert_eq!(restrict(&unit, &unit).unwrap(), unit);

        let sq = GeoComplex::standard_cube(2);
        let bottom = GeoComplex::from_maximal(
            2,
            vec![seg(RPoint::from_ints(&[0, 0]), RPoint::from_ints(&[1, 0]))],
        )
        .unwrap();
        assert_eq!(restrict(&sq, &bottom).unwrap(), sq);

        let outside = GeoComplex::from_maximal(1, vec![seg(p1(1, 2), p1(3, 2))]).unwrap();
        assert!(matches!(restrict(&unit, &outside), Err(Error::NotContained(_))));
    }

    #[test]
    fn restrict_triangulates_a_slanted_segment() {
        let sq = GeoComplex::standard_cube(2);
        let slant = GeoComplex::from_maximal(2, vec![seg(p2((1, 2), (0, 1)), p2((0, 1), (1, 2)))]).unwrap();
        let r = restrict(&sq, &slant).unwrap();
        assert!(is_subdivision(&r, &sq));
        assert!(inside_part(&r, &slant).same_support(&slant));
    }

    #[test]
    fn restrict_keeps_pieces_already_inside() {
        let sq = GeoComplex::standard_cube(2);
        let p = GeoComplex::from_maximal(
            2,
            vec![
                GeoSimplex::new(vec![RPoint::from_ints(&[0, 0]), RPoint::from_ints(&[1, 0]), RPoint::from_ints(&[1, 1])]).unwrap(),
                seg(RPoint::from_ints(&[0, 0]), p2((1, 2), (1, 1))),
            ],
        )
        .unwrap();
        let r = restrict(&sq, &p).unwrap();
        assert!(r.contains_simplex(&p.maximal()[0]) || r.contains_simplex(&p.maximal()[1]));
        for s in sq.simplexes() {
            if covers(&p, s) {
                assert!(r.contains_simplex(s), "{s}");
            }
        }
        assert!(inside_part(&r, &p).same_support(&p));
    }

    #[test]
    fn refine_for_map_examples() {
        let halves = interval_complex(&[(0, 1), (1, 2), (1, 1)]);
        let id = PLMap::identity(halves.clone());
        assert_eq!(refine_for_map(&halves, &id, &halves).unwrap(), halves);

        let full = tent((1, 1));
        let r = refine_for_map(full.domain(), &full, &halves).unwrap();
        assert_eq!(r, interval_complex(&[(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)]));

        let constant = PLMap::constant(halves.clone(), p1(1, 3));
        assert_eq!(refine_for_map(&halves, &constant, &halves).unwrap(), halves);

        let outside = PLMap::constant(halves.clone(), p1(2, 1));
        assert!(refine_for_map(&halves, &outside, &halves).is_err());
    }

    #[test]
    fn refined_simplexes_map_into_one_target() {
        let sq = GeoComplex::standard_cube(2);
        let fold = PLMap::from_fn(sq.clone(), |v| {
            let c = v.coords();
            RPoint::new(vec![c[0].clone() + c[1].clone() - Rat::from_integer(1.into())]).unwrap()
        })
        .unwrap();
        let target = interval_complex(&[(-1, 1), (-1, 3), (0, 1), (1, 2), (1, 1)]);
        let r = refine_for_map(&sq, &fold, &target).unwrap();
        assert!(is_subdivision(&r, &sq));
        for s in r.maximal() {
            let imgs: Vec<RPoint> = s.vertices().iter().map(|v| fold.eval(v).unwrap()).collect();
            assert!(target.maximal().iter().any(|t| imgs.iter().all(|y| t.contains(y))), "{s}");
        }
    }
}
