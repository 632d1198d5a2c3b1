//! Convex cells given by affine equations and inequalities, and the
//! machinery to intersect, cut and triangulate them.
//!
//! Triangulation pulls the lexicographically least vertex of every face.
//! Cells sharing a face triangulate it identically.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::affine::AffineFn;
use crate::complex::{affine_dim, GeoComplex, GeoSimplex, RPoint};
use crate::linalg;
use crate::Rat;

#[derive(Clone, Debug)]
pub(crate) struct Cell {
    dim: usize,
    eqs: Vec<AffineFn>,
    ineqs: Vec<AffineFn>,
    vertices: Vec<RPoint>,
}

fn rows_of(fns: &[&AffineFn]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let a = fns.iter().map(|f| f.coeffs.clone()).collect();
    let b = fns.iter().map(|f| -f.constant.clone()).collect();
    (a, b)
}

fn rank_of(fns: &[&AffineFn]) -> usize {
    let rows: Vec<Vec<Rat>> = fns.iter().map(|f| f.coeffs.clone()).collect();
    linalg::rank(&rows)
}

impl Cell {
    pub fn from_simplex(s: &GeoSimplex) -> Cell {
        let frame = s.frame();
        Cell {
            dim: s.ambient_dim(),
            eqs: frame.hull,
            ineqs: frame.barycentric,
            vertices: s.vertices().to_vec(),
        }
    }

    /// Cell `{x : eqs(x) = 0, ineqs(x) >= 0}`, or `None` when empty.
    /// The region must be bounded.
    pub fn from_constraints(dim: usize, eqs: Vec<AffineFn>, ineqs: Vec<AffineFn>) -> Option<Cell> {
        let mut cell = Cell {
            dim,
            eqs,
            ineqs,
            vertices: Vec::new(),
        };
        cell.simplify();
        cell.vertices = cell.enumerate_vertices()?;
        Some(cell)
    }

    fn simplify(&mut self) {
        let eq_refs: Vec<&AffineFn> = self.eqs.iter().collect();
        let (a, _) = rows_of(&eq_refs);
        if linalg::rank(&a) < self.eqs.len() {
            // keep an independent subset
            let mut kept: Vec<AffineFn> = Vec::new();
            for e in &self.eqs {
                let mut trial: Vec<&AffineFn> = kept.iter().collect();
                trial.push(e);
                if rank_of(&trial) == trial.len() {
                    kept.push(e.clone());
                } else {
                    // dependent coefficient row; still checked as a constraint
                    self.ineqs.push(e.clone());
                    self.ineqs.push(e.negated());
                }
            }
            self.eqs = kept;
        }
        self.ineqs.retain(|f| !(f.is_constant() && !f.constant.is_negative()));
        self.ineqs.sort();
        self.ineqs.dedup();
    }

    fn feasible(&self, p: &RPoint) -> bool {
        self.eqs.iter().all(|e| e.eval(p).is_zero())
            && self.ineqs.iter().all(|f| !f.eval(p).is_negative())
    }

    fn enumerate_vertices(&self) -> Option<Vec<RPoint>> {
        if self.ineqs.iter().any(|f| f.is_constant() && f.constant.is_negative()) {
            return None;
        }
        let eq_refs: Vec<&AffineFn> = self.eqs.iter().collect();
        let r_eq = rank_of(&eq_refs);
        let need = self.dim - r_eq;
        let mut found = BTreeSet::new();
        for combo in (0..self.ineqs.len()).combinations(need) {
            let mut fns = eq_refs.clone();
            fns.extend(combo.iter().map(|&i| &self.ineqs[i]));
            let (a, b) = rows_of(&fns);
            if let Some(x) = linalg::solve_unique(&a, &b, self.dim) {
                let p = RPoint::new(x).expect("positive dimension");
                if self.feasible(&p) {
                    found.insert(p);
                }
            }
        }
        if found.is_empty() {
            None
        } else {
            Some(found.into_iter().collect())
        }
    }

    pub fn vertices(&self) -> &[RPoint] {
        &self.vertices
    }

    pub fn intersect(&self, other: &Cell) -> Option<Cell> {
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.iter().cloned());
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        Cell::from_constraints(self.dim, eqs, ineqs)
    }

    /// Adds constraints given in another coordinate system pulled back
    /// through `map`.
    pub fn pullback_intersect(&self, other: &Cell, map: &[AffineFn]) -> Option<Cell> {
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.iter().map(|e| e.compose(map)));
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().map(|f| f.compose(map)));
        Cell::from_constraints(self.dim, eqs, ineqs)
    }

    fn tight(&self, p: &RPoint) -> Vec<usize> {
        (0..self.ineqs.len())
            .filter(|&i| self.ineqs[i].eval(p).is_zero())
            .collect()
    }

    /// Splits the cell by the hyperplane `h = 0`; returns the cell itself
    /// when the hyperplane does not pass through its relative interior.
    pub fn cut(&self, h: &AffineFn) -> Vec<Cell> {
        let vals: Vec<Rat> = self.vertices.iter().map(|v| h.eval(v)).collect();
        let has_pos = vals.iter().any(Signed::is_positive);
        let has_neg = vals.iter().any(Signed::is_negative);
        if !(has_pos && has_neg) {
            return vec![self.clone()];
        }
        let tights: Vec<Vec<usize>> = self.vertices.iter().map(|v| self.tight(v)).collect();
        let mut crossings = Vec::new();
        for (i, j) in (0..self.vertices.len()).tuple_combinations() {
            if !(vals[i].is_positive() && vals[j].is_negative()
                || vals[i].is_negative() && vals[j].is_positive())
            {
                continue;
            }
            let common: Vec<&AffineFn> = tights[i]
                .iter()
                .filter(|c| tights[j].contains(c))
                .map(|&c| &self.ineqs[c])
                .chain(self.eqs.iter())
                .collect();
            if rank_of(&common) + 1 != self.dim {
                continue;
            }
            let t = &vals[i] / (&vals[i] - &vals[j]);
            let dir = self.vertices[j].sub(&self.vertices[i]);
            crossings.push(self.vertices[i].offset(&dir, &t));
        }
        let side = |sign: bool| {
            let mut verts: BTreeSet<RPoint> = self
                .vertices
                .iter()
                .zip(&vals)
                .filter(|(_, v)| v.is_zero() || v.is_positive() == sign)
                .map(|(p, _)| p.clone())
                .collect();
            verts.extend(crossings.iter().cloned());
            let mut ineqs = self.ineqs.clone();
            ineqs.push(if sign { h.clone() } else { h.negated() });
            Cell {
                dim: self.dim,
                eqs: self.eqs.clone(),
                ineqs,
                vertices: verts.into_iter().collect(),
            }
        };
        vec![side(true), side(false)]
    }

    pub fn affine_dim(&self) -> usize {
        affine_dim(&self.vertices.iter().collect::<Vec<_>>())
    }

    /// Pulling triangulation: maximal simplexes as vertex lists.
    pub fn triangulate(&self) -> Vec<GeoSimplex> {
        let tight: Vec<Vec<bool>> = self
            .vertices
            .iter()
            .map(|v| self.ineqs.iter().map(|f| f.eval(v).is_zero()).collect())
            .collect();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let d = self.affine_dim();
        let mut memo = HashMap::new();
        let simplexes = pull(self, &tight, &all, d, &mut memo);
        simplexes
            .into_iter()
            .map(|idx| {
                GeoSimplex::from_unsorted_unchecked(
                    idx.into_iter().map(|i| self.vertices[i].clone()).collect(),
                )
            })
            .collect()
    }
}

fn pull(
    cell: &Cell,
    tight: &[Vec<bool>],
    face: &[usize],
    d: usize,
    memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![face[0]]];
    }
    if face.len() == d + 1 {
        return vec![face.to_vec()];
    }
    if let Some(r) = memo.get(face) {
        return r.clone();
    }
    let apex = face[0];
    let mut facets = BTreeSet::new();
    for (c, &apex_tight) in tight[apex].iter().enumerate() {
        if apex_tight {
            continue;
        }
        let sub: Vec<usize> = face.iter().copied().filter(|&v| tight[v][c]).collect();
        if sub.is_empty() || facets.contains(&sub) {
            continue;
        }
        let pts: Vec<&RPoint> = sub.iter().map(|&i| &cell.vertices[i]).collect();
        if affine_dim(&pts) + 1 == d {
            facets.insert(sub);
        }
    }
    let mut out = Vec::new();
    for f in facets {
        for mut s in pull(cell, tight, &f, d - 1, memo) {
            s.push(apex);
            out.push(s);
        }
    }
    memo.insert(face.to_vec(), out.clone());
    out
}

pub(crate) fn bboxes_overlap(a: &(Vec<Rat>, Vec<Rat>), b: &(Vec<Rat>, Vec<Rat>)) -> bool {
    (0..a.0.len()).all(|i| a.0[i] <= b.1[i] && b.0[i] <= a.1[i])
}

/// Maximal simplexes of a triangulation of `|a| ∩ |b|` refining both,
/// assembled from the cells `S ∩ T`.
pub(crate) fn overlay(a: &[GeoSimplex], b: &[GeoSimplex]) -> Vec<GeoSimplex> {
    let b_boxes: Vec<_> = b.iter().map(GeoSimplex::bbox).collect();
    let b_cells: Vec<Cell> = b.iter().map(Cell::from_simplex).collect();
    let mut out = BTreeSet::new();
    for s in a {
        let sb = s.bbox();
        let sc = Cell::from_simplex(s);
        for (j, tb) in b_boxes.iter().enumerate() {
            if !bboxes_overlap(&sb, tb) {
                continue;
            }
            if let Some(cell) = sc.intersect(&b_cells[j]) {
                out.extend(cell.triangulate());
            }
        }
    }
    out.into_iter().collect()
}

/// Whether the simplexes `pieces`, all lying in the affine hull of `s`,
/// cover `s`. Pieces of lower dimension are ignored; full-dimensional ones
/// must come from a simplicial complex.
pub(crate) fn pieces_cover(s: &GeoSimplex, pieces: &BTreeSet<GeoSimplex>) -> bool {
    let total = pieces
        .iter()
        .filter(|p| p.dim() == s.dim())
        .fold(Rat::zero(), |acc, p| acc + s.relative_volume(p));
    total == num_traits::One::one()
}

/// Whether `s ⊆ |k|`.
pub(crate) fn covers(k: &GeoComplex, s: &GeoSimplex) -> bool {
    if s.dim() == 0 {
        return k.contains_point(&s.vertices()[0]);
    }
    if k.maximal().iter().any(|t| s.is_face_of(t)) {
        return true;
    }
    let pieces: BTreeSet<GeoSimplex> = overlay(std::slice::from_ref(s), &k.maximal())
        .into_iter()
        .collect();
    pieces_cover(s, &pieces)
}
