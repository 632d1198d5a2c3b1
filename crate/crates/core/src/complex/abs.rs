use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed};

use crate::complex::{GeoComplex, GeoSimplex, RPoint};
use crate::error::{Error, Result};
use crate::Int;

/// Abstract simplicial complex. Vertices are kept in input order and faces
/// are stored as sorted index lists, closed under nonempty subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsComplex<L> {
    vertices: Vec<L>,
    faces: BTreeSet<Vec<usize>>,
}

impl<L: Clone + Ord> AbsComplex<L> {
    /// Builds the subset closure of `faces`, given as label lists.
    pub fn new(vertices: Vec<L>, faces: Vec<Vec<L>>) -> Result<Self> {
        let index: BTreeMap<&L, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::Precondition("duplicate vertex label".into()));
        }
        let mut idx_faces = Vec::with_capacity(faces.len() + vertices.len());
        for f in &faces {
            let idx = f
                .iter()
                .map(|l| index.get(l).copied())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Precondition("face uses an unknown vertex".into()))?;
            idx_faces.push(idx);
        }
        idx_faces.extend((0..vertices.len()).map(|i| vec![i]));
        Ok(AbsComplex::from_index_faces(vertices, idx_faces))
    }
}

impl<L: Clone> AbsComplex<L> {
    pub(crate) fn from_index_faces(vertices: Vec<L>, faces: Vec<Vec<usize>>) -> Self {
        let mut all = BTreeSet::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            if f.is_empty() || all.contains(&f) {
                continue;
            }
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect();
                all.insert(sub);
            }
        }
        AbsComplex { vertices, faces: all }
    }

    pub fn vertices(&self) -> &[L] {
        &self.vertices
    }

    pub fn faces(&self) -> &BTreeSet<Vec<usize>> {
        &self.faces
    }

    pub fn face_labels(&self, face: &[usize]) -> Vec<L> {
        face.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn maximal_faces(&self) -> Vec<Vec<usize>> {
        let mut covered = BTreeSet::new();
        for f in &self.faces {
            for skip in 0..f.len() {
                let mut g = f.clone();
                g.remove(skip);
                if !g.is_empty() {
                    covered.insert(g);
                }
            }
        }
        self.faces.iter().filter(|f| !covered.contains(*f)).cloned().collect()
    }

    /// A vertex bijection `gamma` (as `gamma[i] = j`) with `F` a face iff
    /// `gamma(F)` is a face of `other`.
    pub fn isomorphism<M: Clone>(&self, other: &AbsComplex<M>) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        if n != other.vertices.len() || self.faces.len() != other.faces.len() {
            return None;
        }
        let sig_a = self.signatures();
        let sig_b = other.signatures();
        let mut sorted_a = sig_a.clone();
        let mut sorted_b = sig_b.clone();
        sorted_a.sort();
        sorted_b.sort();
        if sorted_a != sorted_b {
            return None;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(sig_a[i].iter().sum::<usize>()));
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let by_vertex_a = self.faces_by_vertex();
        if self.extend(other, &order, 0, &sig_a, &sig_b, &by_vertex_a, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    /// Per vertex, the number of faces of each size containing it.
    fn signatures(&self) -> Vec<Vec<usize>> {
        let top = self.faces.iter().map(Vec::len).max().unwrap_or(0);
        let mut sig = vec![vec![0; top]; self.vertices.len()];
        for f in &self.faces {
            for &v in f {
                sig[v][f.len() - 1] += 1;
            }
        }
        sig
    }

    fn faces_by_vertex(&self) -> Vec<Vec<&Vec<usize>>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for f in &self.faces {
            out[*f.iter().max().expect("nonempty")].push(f);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend<M: Clone>(
        &self,
        other: &AbsComplex<M>,
        order: &[usize],
        depth: usize,
        sig_a: &[Vec<usize>],
        sig_b: &[Vec<usize>],
        by_vertex: &[Vec<&Vec<usize>>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..other.vertices.len() {
            if used[w] || sig_a[v] != sig_b[w] {
                continue;
            }
            map[v] = w;
            used[w] = true;
            let consistent = order[..=depth].iter().all(|&u| {
                by_vertex[u].iter().all(|f| {
                    if f.iter().any(|&x| map[x] == usize::MAX) {
                        return true;
                    }
                    let mut img: Vec<usize> = f.iter().map(|&x| map[x]).collect();
                    img.sort_unstable();
                    other.faces.contains(&img)
                })
            });
            if consistent && self.extend(other, order, depth + 1, sig_a, sig_b, by_vertex, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
}

/// Abstract complex with a positive integer weight on each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedComplex<L> {
    base: AbsComplex<L>,
    weights: Vec<Int>,
}

impl<L: Clone> WeightedComplex<L> {
    pub fn new(base: AbsComplex<L>, weights: Vec<Int>) -> Result<Self> {
        if weights.len() != base.vertices().len() {
            return Err(Error::DimensionMismatch {
                expected: base.vertices().len(),
                found: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::Precondition("weights must be positive integers".into()));
        }
        Ok(WeightedComplex { base, weights })
    }

    pub fn base(&self) -> &AbsComplex<L> {
        &self.base
    }

    pub fn weights(&self) -> &[Int] {
        &self.weights
    }

    /// The points `e_i / w_i` in `Q^k`, one per vertex in order.
    pub fn realized_vertices(&self) -> Vec<RPoint> {
        let k = self.weights.len();
        self.weights
            .iter()
            .enumerate()
            .map(|(i, w)| RPoint::scaled_basis(k, i, w))
            .collect()
    }

    /// Geometric realization in `[0,1]^k` on the scaled basis vectors.
    pub fn realize(&self) -> GeoComplex {
        let pts = self.realized_vertices();
        let k = pts.len();
        let simplexes = self.base.faces().iter().map(|f| {
            GeoSimplex::from_unsorted_unchecked(f.iter().map(|&i| pts[i].clone()).collect())
        });
        GeoComplex::with_simplexes(k, simplexes.collect())
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(One::is_one)
    }
}
