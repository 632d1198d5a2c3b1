use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::One;

use crate::collapse::{find_collapse_sequence, CollapseSequence, DEFAULT_COLLAPSE_BUDGET};
use crate::complex::{GeoComplex, GeoSimplex, RPoint, WeightedComplex};
use crate::error::{Error, PropertyLabel, Result};
use crate::regular::{
    coprime_point, den_gcd, desingularize_relative_with_budget, has_strongly_regular_triangulation_with_budget,
    is_regular_complex, is_strongly_regular, lcm_all, DEFAULT_DESINGULARIZE_BUDGET,
};
use crate::subdivide::{common_refinement, inside_part, refine_for_map, restrict, stellar_chain};
use crate::zmap::{fixes_pointwise, image_inside, retarget_to_carrier_vertices, verify_section_retraction, PLMap};
use crate::Int;

#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub desingularize: usize,
    pub collapse: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            desingularize: DEFAULT_DESINGULARIZE_BUDGET,
            collapse: DEFAULT_COLLAPSE_BUDGET,
        }
    }
}

/// A map and triangulation of the cube meeting properties (a) to (h), with
/// the collapse witness when one was found.
#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub eta: PLMap,
    pub delta: GeoComplex,
    pub collapse: Option<CollapseSequence>,
}

/// Points of `{0,1}^n` inside `|p|`, in lexicographic order.
pub fn cube_corners_in(p: &GeoComplex) -> Vec<RPoint> {
    let n = p.ambient_dim();
    (0..n)
        .map(|_| 0i64..=1)
        .multi_cartesian_product()
        .map(|c| RPoint::from_ints(&c))
        .filter(|c| p.contains_point(c))
        .collect()
}

fn require_retraction(eta_b: &PLMap, p: &GeoComplex) -> Result<()> {
    let n = p.ambient_dim();
    if eta_b.domain().ambient_dim() != n || eta_b.target_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: eta_b.domain().ambient_dim(),
        });
    }
    if !eta_b.domain().same_support(&GeoComplex::standard_cube(n)) {
        return Err(Error::Precondition("the map must be defined on the unit cube".into()));
    }
    if !image_inside(eta_b, p)? || !fixes_pointwise(eta_b, p)? {
        return Err(Error::Precondition("the map is not a retraction onto the polyhedron".into()));
    }
    Ok(())
}

/// Turns a PL retraction of `[0,1]^n` onto `|p|` into a map and triangulation
/// satisfying (a) to (h).
pub fn pipeline_dh(eta_b: &PLMap, p: &GeoComplex, budgets: Budgets) -> Result<PipelineResult> {
    let n = p.ambient_dim();
    require_retraction(eta_b, p)?;
    if cube_corners_in(p).is_empty() {
        return Err(Error::Condition {
            condition: "ii",
            detail: "the polyhedron contains no vertex of the unit cube".into(),
        });
    }
    if !has_strongly_regular_triangulation_with_budget(p, budgets.desingularize)? {
        return Err(Error::Condition {
            condition: "iii",
            detail: "the polyhedron has no strongly regular triangulation".into(),
        });
    }

    let delta_c = GeoComplex::standard_cube(n);
    let delta_d = common_refinement(&delta_c, eta_b.domain())?;
    let delta_e = restrict(&delta_d, p)?;
    let delta_f = desingularize_relative_with_budget(&delta_e, p, budgets.desingularize)?;
    let part_f = inside_part(&delta_f, p);

    let eta_f = PLMap::from_fn_fallible(delta_f.clone(), |v| {
        if p.contains_point(v) {
            Ok(v.clone())
        } else {
            eta_b.eval(v)
        }
    })?;
    let delta_g = refine_for_map(&delta_f, &eta_f, &part_f)?;
    let eta_g = retarget_to_carrier_vertices(&eta_f.with_domain(delta_g.clone())?, &part_f, |_| true)?;

    let offenders: Vec<GeoSimplex> = delta_g
        .maximal()
        .into_iter()
        .filter(|s| s.dim() == n && !den_gcd(&GeoSimplex::from_unsorted_unchecked(eta_g.simplex_images(s))).is_one())
        .collect();
    let mut targets = BTreeMap::new();
    for s in &offenders {
        let images = eta_g.simplex_images(s);
        let carrier = part_f
            .carrier(&RPoint::barycenter(&images))
            .ok_or_else(|| Error::Precondition(format!("image of {s} is outside the polyhedron")))?;
        let t = part_f
            .maximal()
            .into_iter()
            .find(|t| carrier.is_face_of(t))
            .expect("carrier lies in a maximal simplex");
        let k = lcm_all(&images.iter().map(RPoint::den).collect::<Vec<Int>>());
        targets.insert(s.barycenter(), coprime_point(&t, &k)?);
    }
    let centers: Vec<RPoint> = targets.keys().cloned().collect();
    let delta_h = stellar_chain(&delta_g, &centers)?;
    let eta = PLMap::from_fn_fallible(delta_h.clone(), |v| match targets.get(v) {
        Some(x) => Ok(x.clone()),
        None => Ok(eta_g.image_of_vertex(v).expect("vertex of the previous step").clone()),
    })?;
    let collapse = find_collapse_sequence(&delta_h, budgets.collapse);
    Ok(PipelineResult {
        eta,
        delta: delta_h,
        collapse,
    })
}

/// Weighted skeleton and the pair of Z-maps through its realization.
#[derive(Clone, Debug)]
pub struct Part2 {
    pub weighted: WeightedComplex<RPoint>,
    pub realization: GeoComplex,
    pub xi: PLMap,
    pub mu: PLMap,
}

fn property(label: PropertyLabel, detail: impl Into<String>) -> Error {
    Error::Property {
        label,
        detail: detail.into(),
    }
}

/// Builds `W = (skeleton(delta), den ∘ eta)`, `xi: v_i -> e_i/w_i` on
/// `delta_P` and `mu: e_i/w_i -> eta(v_i)`, after checking (a) to (h).
pub fn part2_reduce(eta: &PLMap, delta: &GeoComplex, p: &GeoComplex, budgets: Budgets) -> Result<Part2> {
    let n = p.ambient_dim();
    if delta.ambient_dim() != n || eta.target_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: delta.ambient_dim(),
        });
    }
    if !delta.same_support(&GeoComplex::standard_cube(n)) {
        return Err(Error::Precondition("the triangulation must cover the unit cube".into()));
    }
    for s in delta.maximal() {
        if eta.simplex_containing(&s).is_err() {
            return Err(property(PropertyLabel::D, format!("map is not affine on {s}")));
        }
    }
    let eta = eta.with_domain(delta.clone())?;
    if !image_inside(&eta, p)? || !fixes_pointwise(&eta, p)? {
        return Err(property(PropertyLabel::A, "map is not a retraction onto the polyhedron"));
    }
    if find_collapse_sequence(delta, budgets.collapse).is_none() {
        return Err(property(PropertyLabel::C, "no collapse sequence found within budget"));
    }
    let part = inside_part(delta, p);
    if !part.same_support(p) {
        return Err(property(PropertyLabel::E, "simplexes inside the polyhedron do not triangulate it"));
    }
    if !is_regular_complex(&part) {
        return Err(property(PropertyLabel::F, "triangulation of the polyhedron is not regular"));
    }
    for s in delta.maximal().iter().filter(|s| s.dim() == n) {
        let images = GeoSimplex::from_unsorted_unchecked(eta.simplex_images(s));
        if !den_gcd(&images).is_one() {
            return Err(property(
                PropertyLabel::H,
                format!("image denominators of {s} have a common factor"),
            ));
        }
    }

    let skeleton = delta.skeleton();
    let omega: Vec<Int> = skeleton
        .vertices()
        .iter()
        .map(|v| eta.image_of_vertex(v).expect("domain vertex").den())
        .collect();
    let weighted = WeightedComplex::new(skeleton, omega)?;
    let realization = weighted.realize();
    if !is_strongly_regular(&realization) {
        return Err(property(PropertyLabel::H, "weighted realization is not strongly regular"));
    }
    let corners: BTreeMap<RPoint, RPoint> = weighted
        .base()
        .vertices()
        .iter()
        .cloned()
        .zip(weighted.realized_vertices())
        .collect();
    let xi = PLMap::from_fn(part, |v| corners[v].clone())?;
    let mu = PLMap::new(
        realization.clone(),
        corners
            .iter()
            .map(|(v, e)| (e.clone(), eta.image_of_vertex(v).expect("domain vertex").clone()))
            .collect(),
    )?;
    if !verify_section_retraction(p, &mu, &xi)? {
        return Err(Error::Precondition("the section and retraction do not compose to the identity".into()));
    }
    Ok(Part2 {
        weighted,
        realization,
        xi,
        mu,
    })
}
