//! Denominators, regular and strongly regular simplexes, desingularization,
//! coprime points and anchor segments.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::{GeoComplex, GeoSimplex, RPoint};
use crate::error::{Error, Result};
use crate::exactnum::{gcd_all, invariant_factors, saturation_basis, smith, solve_integer, Matrix};
use crate::subdivide::{inside_part, stellar};
use crate::{linalg, Int, Rat};

/// Default number of stellar steps allowed in a desingularization.
pub const DEFAULT_DESINGULARIZE_BUDGET: usize = 10_000;

pub fn den(v: &RPoint) -> Int {
    v.den()
}

/// `den(v) * (v, 1)`
pub fn homog(v: &RPoint) -> Vec<Int> {
    v.homog()
}

fn homog_matrix(s: &GeoSimplex) -> Matrix<Int> {
    Matrix::from_rows(&s.homog_rows()).expect("rows of equal length")
}

/// Invariant factors of the homogeneous correspondents, when they do not
/// extend to a basis.
pub fn irregularity(s: &GeoSimplex) -> Option<Vec<Int>> {
    let factors = invariant_factors(&homog_matrix(s));
    if factors.iter().all(One::is_one) {
        None
    } else {
        Some(factors)
    }
}

pub fn is_regular(s: &GeoSimplex) -> bool {
    irregularity(s).is_none()
}

pub fn is_strongly_regular_simplex(s: &GeoSimplex) -> bool {
    is_regular(s) && gcd_all(&s.vertex_dens()).is_one()
}

/// Every simplex regular and every maximal simplex strongly regular.
pub fn is_strongly_regular(delta: &GeoComplex) -> bool {
    is_regular_complex(delta)
        && delta
            .maximal()
            .iter()
            .all(|s| gcd_all(&s.vertex_dens()).is_one())
}

pub fn is_regular_complex(delta: &GeoComplex) -> bool {
    delta.simplexes().iter().all(is_regular)
}

/// A point in the relative interior of a non-regular simplex whose stellar
/// subdivision strictly lowers the index of the pieces. Faces of `s` must be
/// regular.
fn blow_up_point(s: &GeoSimplex) -> RPoint {
    let rows = s.homog_rows();
    let m = Matrix::from_rows(&rows).expect("rows of equal length");
    let snf = smith(&m);
    let j = snf
        .diag
        .iter()
        .position(|d| !d.is_one())
        .expect("simplex is not regular");
    let w: Vec<Rat> = snf.right_inv.row(j).iter().cloned().map(Rat::from_integer).collect();
    let cols = rows[0].len();
    let transposed: Vec<Vec<Rat>> = (0..cols)
        .map(|c| rows.iter().map(|r| Rat::from_integer(r[c].clone())).collect())
        .collect();
    let lambda = linalg::solve_unique(&transposed, &w, rows.len()).expect("w lies in the span");
    let order = snf.diag[j].to_usize().expect("index fits in memory");
    let mut best: Option<(Int, RPoint)> = None;
    for t in 1..order.max(2) {
        let t = Rat::from_integer(Int::from(t));
        let coeffs: Vec<Rat> = lambda.iter().map(|l| (l * &t).fract()).collect();
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| if c.is_negative() { c + Rat::one() } else { c })
            .collect::<Vec<_>>();
        let total: Vec<Rat> = (0..cols)
            .map(|c| {
                rows.iter()
                    .zip(&coeffs)
                    .fold(Rat::zero(), |acc, (r, l)| acc + l * Rat::from_integer(r[c].clone()))
            })
            .collect();
        let (last, head) = total.split_last().expect("homogeneous coordinate");
        let p = RPoint::new(head.iter().map(|x| x / last).collect()).expect("positive dimension");
        let d = p.den();
        let better = match &best {
            None => true,
            Some((bd, bp)) => d < *bd || (d == *bd && p < *bp),
        };
        if better {
            best = Some((d, p));
        }
    }
    best.expect("a nonzero class exists").1
}

/// Stellar subdivision of `delta` in which every simplex is regular.
pub fn desingularize(delta: &GeoComplex) -> Result<GeoComplex> {
    desingularize_with_budget(delta, DEFAULT_DESINGULARIZE_BUDGET)
}

pub fn desingularize_with_budget(delta: &GeoComplex, budget: usize) -> Result<GeoComplex> {
    run_desingularize(delta.clone(), None, budget)
}

/// Stellar subdivision of `delta` whose part inside `|p|` is a regular
/// triangulation of `|p|`.
pub fn desingularize_relative(delta: &GeoComplex, p: &GeoComplex) -> Result<GeoComplex> {
    desingularize_relative_with_budget(delta, p, DEFAULT_DESINGULARIZE_BUDGET)
}

pub fn desingularize_relative_with_budget(
    delta: &GeoComplex,
    p: &GeoComplex,
    budget: usize,
) -> Result<GeoComplex> {
    let inside = inside_part(delta, p);
    if !inside.same_support(p) {
        return Err(Error::Precondition(
            "the simplexes inside the polyhedron do not triangulate it".into(),
        ));
    }
    run_desingularize(delta.clone(), Some(inside.simplexes().clone()), budget)
}

fn run_desingularize(
    mut delta: GeoComplex,
    mut inside: Option<BTreeSet<GeoSimplex>>,
    budget: usize,
) -> Result<GeoComplex> {
    let mut regular: HashSet<GeoSimplex> = HashSet::new();
    let mut steps = 0;
    loop {
        let mut worst: Option<&GeoSimplex> = None;
        for s in delta.simplexes() {
            if inside.as_ref().is_some_and(|set| !set.contains(s)) {
                continue;
            }
            if worst.is_some_and(|w| w.dim() <= s.dim()) || regular.contains(s) {
                continue;
            }
            if is_regular(s) {
                regular.insert(s.clone());
            } else {
                worst = Some(s);
            }
        }
        let Some(s) = worst else {
            return Ok(delta);
        };
        if steps == budget {
            return Err(Error::BudgetExhausted {
                what: "desingularization",
                steps,
            });
        }
        steps += 1;
        let x = blow_up_point(s);
        let next = stellar(&delta, &x)?;
        if let Some(set) = inside.as_mut() {
            let fresh: Vec<GeoSimplex> = next
                .simplexes()
                .iter()
                .filter(|t| t.has_vertex(&x))
                .filter(|t| {
                    delta
                        .carrier(&t.barycenter())
                        .is_some_and(|c| set.contains(&c))
                })
                .cloned()
                .collect();
            set.retain(|t| next.contains_simplex(t));
            set.extend(fresh);
        }
        delta = next;
    }
}

/// A point of `s` with denominator coprime to `k`: nonnegative integer
/// combinations of the homogeneous vertex vectors, by increasing total
/// weight, vertices first.
pub fn coprime_point(s: &GeoSimplex, k: &Int) -> Result<RPoint> {
    if !is_strongly_regular_simplex(s) {
        return Err(Error::Precondition(format!("{s} is not strongly regular")));
    }
    if !k.is_positive() {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let rows = s.homog_rows();
    let m = rows.len();
    for total in 1usize.. {
        let mut found = None;
        for_each_composition(total, m, &mut |a| {
            let mut h = vec![Int::zero(); rows[0].len()];
            for (ai, r) in a.iter().zip(&rows) {
                for (x, y) in h.iter_mut().zip(r) {
                    *x += Int::from(*ai) * y;
                }
            }
            let p = RPoint::from_homog(&h).expect("positive last entry");
            if p.coprime_den(k) {
                found = Some(p);
                true
            } else {
                false
            }
        });
        if let Some(p) = found {
            return Ok(p);
        }
    }
    unreachable!("the search terminates for strongly regular simplexes")
}

/// Calls `f` on the length-`parts` nonnegative compositions of `total` in
/// reverse lexicographic order until it returns true.
fn for_each_composition(total: usize, parts: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(rest: usize, buf: &mut Vec<usize>, parts: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if buf.len() + 1 == parts {
            buf.push(rest);
            let stop = f(buf);
            buf.pop();
            return stop;
        }
        for a in (0..=rest).rev() {
            buf.push(a);
            let stop = go(rest - a, buf, parts, f);
            buf.pop();
            if stop {
                return true;
            }
        }
        false
    }
    go(total, &mut Vec::with_capacity(parts), parts, f)
}

/// A lattice point in the affine hull of `s`, if there is one.
pub fn lattice_point_in_hull(s: &GeoSimplex) -> Option<Vec<Int>> {
    let basis = saturation_basis(&s.homog_rows()).expect("rows of equal length");
    let lasts: Vec<Int> = basis.iter().map(|b| b.last().expect("nonempty").clone()).collect();
    let a = Matrix::from_rows(&[lasts]).expect("one row");
    let c = solve_integer(&a, &[Int::one()])?;
    let n = s.ambient_dim();
    let mut z = vec![Int::zero(); n];
    for (ci, b) in c.iter().zip(&basis) {
        for (zi, bi) in z.iter_mut().zip(b) {
            *zi += ci * bi;
        }
    }
    Some(z)
}

/// An integer point `w` and `eps > 0` with `conv(v, v + eps (w - v))`
/// inside `|p|`, or `None` when no such pair exists.
pub fn anchor(p: &GeoComplex, v: &RPoint) -> Result<Option<(Vec<Int>, Rat)>> {
    if !p.contains_point(v) {
        return Err(Error::PointNotInSupport(v.to_string()));
    }
    if v.is_lattice() {
        let w = v.coords().iter().map(|c| c.to_integer()).collect();
        return Ok(Some((w, Rat::one())));
    }
    for s in p.maximal().iter().filter(|s| s.contains(v)) {
        let Some(z) = lattice_point_in_hull(s) else {
            continue;
        };
        return Ok(Some(anchor_in(s, v, &z)));
    }
    Ok(None)
}

fn anchor_in(s: &GeoSimplex, v: &RPoint, z: &[Int]) -> (Vec<Int>, Rat) {
    let lambda = s.barycentric(v).expect("v lies in s");
    let frame = s.frame();
    let linear = |i: usize, d: &[Rat]| -> Rat {
        frame.barycentric[i]
            .coeffs
            .iter()
            .zip(d)
            .fold(Rat::zero(), |acc, (a, x)| acc + a * x)
    };
    let zr = RPoint::new(z.iter().cloned().map(Rat::from_integer).collect()).expect("positive dimension");
    let to_z = zr.sub(v);
    let to_center = s.barycenter().sub(v);
    let scale = RPoint::new(to_center.clone()).expect("positive dimension").den();
    let g: Vec<Int> = to_center
        .iter()
        .map(|x| (x * Rat::from_integer(scale.clone())).to_integer())
        .collect();
    let gr: Vec<Rat> = g.iter().cloned().map(Rat::from_integer).collect();
    let tight: Vec<usize> = (0..lambda.len()).filter(|&i| lambda[i].is_zero()).collect();
    let mut big_n = Int::zero();
    for &i in &tight {
        let a = linear(i, &to_z);
        let b = linear(i, &gr);
        if !(a.clone() + b.clone() * Rat::from_integer(big_n.clone())).is_positive() {
            let needed = (-a / b).floor().to_integer() + Int::one();
            big_n = big_n.max(needed);
        }
    }
    let w: Vec<Int> = z.iter().zip(&g).map(|(zi, gi)| zi + &big_n * gi).collect();
    let wr = RPoint::new(w.iter().cloned().map(Rat::from_integer).collect()).expect("positive dimension");
    let dir = wr.sub(v);
    let mut eps = Rat::one();
    for (i, l) in lambda.iter().enumerate() {
        let rate = linear(i, &dir);
        if rate.is_negative() {
            let exit = l / -rate;
            if exit < eps {
                eps = exit;
            }
        }
    }
    (w, eps)
}

/// Whether the segment `conv(v, v + eps (w - v))` lies in `|p|`.
pub fn anchor_is_valid(p: &GeoComplex, v: &RPoint, w: &[Int], eps: &Rat) -> bool {
    if !eps.is_positive() {
        return false;
    }
    let wr = RPoint::new(w.iter().cloned().map(Rat::from_integer).collect()).expect("positive dimension");
    let end = v.offset(&wr.sub(v), eps);
    if &end == v {
        return p.contains_point(v);
    }
    let seg = GeoSimplex::new(vec![v.clone(), end]).expect("distinct endpoints");
    crate::cell::covers(p, &seg)
}

pub fn has_strongly_regular_triangulation(p: &GeoComplex) -> Result<bool> {
    has_strongly_regular_triangulation_with_budget(p, DEFAULT_DESINGULARIZE_BUDGET)
}

pub fn has_strongly_regular_triangulation_with_budget(p: &GeoComplex, budget: usize) -> Result<bool> {
    Ok(is_strongly_regular(&desingularize_with_budget(p, budget)?))
}

/// Number of simplexes whose index exceeds one.
pub fn count_irregular(delta: &GeoComplex) -> usize {
    delta.simplexes().iter().filter(|s| !is_regular(s)).count()
}

/// Greatest common divisor of the vertex denominators of `s`.
pub fn den_gcd(s: &GeoSimplex) -> Int {
    gcd_all(&s.vertex_dens())
}

/// Least common multiple of a list of denominators.
pub fn lcm_all(xs: &[Int]) -> Int {
    xs.iter().fold(Int::one(), |acc, x| acc.lcm(x))
}
