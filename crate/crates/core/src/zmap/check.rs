use std::collections::BTreeSet;

use num_integer::Integer;

use crate::cell::overlay;
use crate::complex::{GeoComplex, RPoint};
use crate::error::{Error, Result};
use crate::exactnum::{solve_integer, Matrix};
use crate::regular::{desingularize, is_regular_complex};
use crate::subdivide::refine_for_map;
use crate::zmap::PLMap;
use crate::Int;

/// Whether `eta` is piecewise affine with integer coefficients. On a regular
/// domain this is the vertex condition `den(eta(v)) | den(v)`; otherwise the
/// domain is desingularized first.
pub fn is_zmap(eta: &PLMap) -> Result<bool> {
    if is_regular_complex(eta.domain()) {
        return Ok(divisibility_holds(eta));
    }
    let fine = eta.with_domain(desingularize(eta.domain())?)?;
    Ok(divisibility_holds(&fine))
}

fn divisibility_holds(eta: &PLMap) -> bool {
    eta.images()
        .iter()
        .all(|(v, y)| v.den().is_multiple_of(&y.den()))
}

/// Whether on every maximal simplex of the domain `eta` agrees with an
/// affine map with integer coefficients, found by solving the integer
/// system on the homogeneous vertex vectors.
pub fn fits_integer_affine(eta: &PLMap) -> bool {
    eta.domain().maximal().iter().all(|s| {
        let rows = s.homog_rows();
        let h = Matrix::from_rows(&rows).expect("rows of equal length");
        let images = eta.simplex_images(s);
        (0..eta.target_dim()).all(|k| {
            let rhs: Option<Vec<Int>> = s
                .vertices()
                .iter()
                .zip(&images)
                .map(|(v, y)| {
                    let scaled = &y.coords()[k] * crate::Rat::from_integer(v.den());
                    scaled.is_integer().then(|| scaled.to_integer())
                })
                .collect();
            rhs.is_some_and(|b| solve_integer(&h, &b).is_some())
        })
    })
}

/// `theta ∘ eta` on a refinement of the domain of `eta`.
pub fn compose(eta: &PLMap, theta: &PLMap) -> Result<PLMap> {
    if eta.target_dim() != theta.domain().ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: theta.domain().ambient_dim(),
            found: eta.target_dim(),
        });
    }
    let refined = refine_for_map(eta.domain(), eta, theta.domain())?;
    PLMap::from_fn_fallible(refined, |v| theta.eval(&eta.eval(v)?))
}

/// Whether `eta(|dom eta|) ⊆ |p|`.
pub fn image_inside(eta: &PLMap, p: &GeoComplex) -> Result<bool> {
    if eta.target_dim() != p.ambient_dim() {
        return Ok(false);
    }
    match refine_for_map(eta.domain(), eta, p) {
        Ok(_) => Ok(true),
        Err(Error::NotContained(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Whether `eta` is the identity on `|p|`, decided on the vertices of the
/// overlay of the domain with `p`.
pub fn fixes_pointwise(eta: &PLMap, p: &GeoComplex) -> Result<bool> {
    if p.ambient_dim() != eta.domain().ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: eta.domain().ambient_dim(),
            found: p.ambient_dim(),
        });
    }
    if !eta.domain().support_contains(p) {
        return Err(Error::NotContained(
            "polyhedron is not inside the map domain".into(),
        ));
    }
    if eta.target_dim() != p.ambient_dim() {
        return Ok(false);
    }
    let pieces = overlay(&eta.domain().maximal(), &p.maximal());
    let points: BTreeSet<&RPoint> = pieces.iter().flat_map(|s| s.vertices()).collect();
    for v in points {
        if eta.eval(v)? != *v {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that `eta` is a Z-map from `[0,1]^n` onto `|p|` fixing `|p|`.
pub fn verify_zretract(p: &GeoComplex, eta: &PLMap) -> Result<bool> {
    let n = eta.domain().ambient_dim();
    if !eta.domain().same_support(&GeoComplex::standard_cube(n)) {
        return Err(Error::SupportMismatch("map domain is not the unit cube".into()));
    }
    Ok(is_zmap(eta)? && image_inside(eta, p)? && fixes_pointwise(eta, p)?)
}

/// Checks that `nu` (on `|p|`) and `mu` are Z-maps with `mu ∘ nu` the
/// identity on `|p|`.
pub fn verify_section_retraction(p: &GeoComplex, mu: &PLMap, nu: &PLMap) -> Result<bool> {
    if !nu.domain().same_support(p) {
        return Err(Error::Incompatible("section must be defined on the polyhedron".into()));
    }
    if nu.target_dim() != mu.domain().ambient_dim() || mu.target_dim() != p.ambient_dim() {
        return Err(Error::Incompatible("map dimensions do not chain".into()));
    }
    if !is_zmap(mu)? || !is_zmap(nu)? {
        return Ok(false);
    }
    let round_trip = match compose(nu, mu) {
        Ok(m) => m,
        Err(Error::NotContained(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    fixes_pointwise(&round_trip, p)
}

/// Replaces the image of every vertex failing `keep` by the least vertex of
/// the carrier of that image in `nabla`.
pub fn retarget_to_carrier_vertices(
    eta: &PLMap,
    nabla: &GeoComplex,
    keep: impl Fn(&RPoint) -> bool,
) -> Result<PLMap> {
    let lands_in_one_simplex = |m: &PLMap| {
        m.domain().maximal().iter().all(|s| {
            let images = m.simplex_images(s);
            nabla
                .carrier(&RPoint::barycenter(&images))
                .is_some_and(|t| images.iter().all(|y| t.contains(y)))
        })
    };
    if !lands_in_one_simplex(eta) {
        return Err(Error::Precondition(
            "some simplex is not mapped into a single target simplex".into(),
        ));
    }
    let out = PLMap::from_fn_fallible(eta.domain().clone(), |v| {
        let y = eta.image_of_vertex(v).expect("domain vertex");
        if keep(v) {
            return Ok(y.clone());
        }
        let carrier = nabla.carrier(y).ok_or_else(|| Error::PointNotInSupport(y.to_string()))?;
        Ok(carrier.vertices()[0].clone())
    })?;
    if !lands_in_one_simplex(&out) {
        return Err(Error::Precondition("retargeted image left the target".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::GeoSimplex;

    fn p1(num: i64, den: i64) -> RPoint {
        RPoint::from_fractions(&[(num, den)])
    }

    fn intervals(cuts: &[(i64, i64)]) -> GeoComplex {
        let pts: Vec<RPoint> = cuts.iter().map(|&(a, b)| p1(a, b)).collect();
        GeoComplex::from_maximal(
            1,
            pts.windows(2)
                .map(|w| GeoSimplex::new(w.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn map(cuts: &[(i64, i64)], images: &[(i64, i64)]) -> PLMap {
        PLMap::new(
            intervals(cuts),
            cuts.iter()
                .zip(images)
                .map(|(&(a, b), &(c, d))| (p1(a, b), p1(c, d)))
                .collect(),
        )
        .unwrap()
    }

    fn half_tent() -> PLMap {
        map(&[(0, 1), (1, 2), (1, 1)], &[(0, 1), (1, 2), (0, 1)])
    }

    fn full_tent() -> PLMap {
        map(&[(0, 1), (1, 2), (1, 1)], &[(0, 1), (1, 1), (0, 1)])
    }

    #[test]
    fn zmap_examples() {
        assert!(is_zmap(&half_tent()).unwrap());
        assert!(!is_zmap(&map(&[(0, 1), (1, 2), (1, 1)], &[(0, 1), (1, 3), (0, 1)])).unwrap());
        assert!(is_zmap(&PLMap::identity(GeoComplex::standard_cube(2))).unwrap());
        assert!(fits_integer_affine(&half_tent()));
        assert!(!fits_integer_affine(&map(&[(0, 1), (1, 2), (1, 1)], &[(0, 1), (1, 3), (0, 1)])));
    }

    #[test]
    fn zmap_on_irregular_domain() {
        let doubled = map(&[(0, 1), (1, 3), (2, 3), (1, 1)], &[(0, 1), (2, 3), (4, 3), (2, 1)]);
        assert!(!is_regular_complex(doubled.domain()));
        assert!(is_zmap(&doubled).unwrap());
        let bad = map(&[(0, 1), (1, 3), (2, 3), (1, 1)], &[(0, 1), (1, 6), (1, 3), (1, 2)]);
        assert!(!is_zmap(&bad).unwrap());
    }

    #[test]
    fn compose_examples() {
        let id = PLMap::identity(half_tent().domain().clone());
        let c = compose(&id, &half_tent()).unwrap();
        for k in 0..=8 {
            let x = p1(k, 8);
            assert_eq!(c.eval(&x).unwrap(), half_tent().eval(&x).unwrap());
        }
        let tt = compose(&full_tent(), &half_tent()).unwrap();
        let expected = map(
            &[(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)],
            &[(0, 1), (1, 2), (0, 1), (1, 2), (0, 1)],
        );
        assert_eq!(tt, expected);
        assert!(is_zmap(&tt).unwrap());
    }

    #[test]
    fn fixity_examples() {
        let lower = intervals(&[(0, 1), (1, 2)]);
        assert!(fixes_pointwise(&half_tent(), &lower).unwrap());
        assert!(!fixes_pointwise(&half_tent(), &GeoComplex::standard_cube(1)).unwrap());
        let id = PLMap::identity(GeoComplex::standard_cube(1));
        assert!(fixes_pointwise(&id, &intervals(&[(1, 5), (2, 3)])).unwrap());
        assert!(fixes_pointwise(&id, &intervals(&[(0, 1), (3, 2)])).is_err());
    }

    #[test]
    fn zretract_examples() {
        let lower = intervals(&[(0, 1), (1, 2)]);
        assert!(verify_zretract(&lower, &half_tent()).unwrap());
        let middle = intervals(&[(1, 3), (2, 3)]);
        let squash = map(&[(0, 1), (1, 3), (2, 3), (1, 1)], &[(1, 3), (1, 3), (2, 3), (2, 3)]);
        assert!(!verify_zretract(&middle, &squash).unwrap());
        let id = PLMap::identity(GeoComplex::standard_cube(2));
        assert!(verify_zretract(&GeoComplex::standard_cube(2), &id).unwrap());
        assert!(verify_zretract(&lower, &PLMap::identity(lower.clone())).is_err());
    }

    #[test]
    fn retarget_examples() {
        let nabla = intervals(&[(0, 1), (1, 3), (1, 2), (1, 1)]);
        let eta = map(&[(0, 1), (1, 2), (1, 1)], &[(1, 3), (5, 12), (1, 2)]);
        assert_eq!(retarget_to_carrier_vertices(&eta, &nabla, |_| true).unwrap(), eta);
        let moved = retarget_to_carrier_vertices(&eta, &nabla, |v| *v != p1(1, 2)).unwrap();
        assert_eq!(moved.image_of_vertex(&p1(1, 2)), Some(&p1(1, 3)));
        let straddling = map(&[(0, 1), (1, 1)], &[(1, 4), (3, 4)]);
        assert!(retarget_to_carrier_vertices(&straddling, &nabla, |_| false).is_err());
    }
}
