//! Free faces, elementary collapses and a bounded search for collapse
//! sequences ending at a vertex.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use crate::complex::{GeoComplex, GeoSimplex, RPoint};
use crate::error::{Error, Result};

/// Default number of search nodes for [`find_collapse_sequence`].
pub const DEFAULT_COLLAPSE_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CollapseStep {
    pub maximal: GeoSimplex,
    pub free_facet: GeoSimplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseSequence {
    pub steps: Vec<CollapseStep>,
    pub terminal: GeoSimplex,
}

/// Pairs `(T, F)` with `F` a facet of `T` and of no other simplex, in
/// increasing order.
pub fn free_faces(delta: &GeoComplex) -> Vec<(GeoSimplex, GeoSimplex)> {
    let mut owners: HashMap<GeoSimplex, Vec<&GeoSimplex>> = HashMap::new();
    for t in delta.simplexes() {
        for f in t.facets() {
            owners.entry(f).or_default().push(t);
        }
    }
    let mut out: Vec<_> = owners
        .into_iter()
        .filter(|(_, ts)| ts.len() == 1)
        .map(|(f, ts)| (ts[0].clone(), f))
        .collect();
    out.sort();
    out
}

/// Removes `t` and its free facet `f`.
pub fn elementary_collapse(delta: &GeoComplex, t: &GeoSimplex, f: &GeoSimplex) -> Result<GeoComplex> {
    let is_facet = f.dim() + 1 == t.dim() && f.is_face_of(t);
    if !is_facet || !delta.contains_simplex(t) || !delta.contains_simplex(f) {
        return Err(Error::NotElementaryCollapse(format!("{f} is not a facet of {t} in the complex")));
    }
    let others = delta
        .cofaces(f)
        .filter(|u| u.dim() == t.dim() && *u != t)
        .count();
    if others > 0 {
        return Err(Error::NotElementaryCollapse(format!("{f} is not a free face of {t}")));
    }
    let mut rest = delta.simplexes().clone();
    rest.remove(t);
    rest.remove(f);
    Ok(GeoComplex::with_simplexes(delta.ambient_dim(), rest))
}

/// Whether `seq` is a valid chain of elementary collapses ending at its
/// terminal vertex.
pub fn replay(delta: &GeoComplex, seq: &CollapseSequence) -> bool {
    let mut cur = delta.clone();
    for step in &seq.steps {
        match elementary_collapse(&cur, &step.maximal, &step.free_facet) {
            Ok(next) => cur = next,
            Err(_) => return false,
        }
    }
    seq.terminal.dim() == 0 && cur.len() == 1 && cur.contains_simplex(&seq.terminal)
}

/// Index form of a complex: vertices in lexicographic order, simplexes as
/// sorted index lists, with facet incidences precomputed.
struct Indexed {
    vertices: Vec<RPoint>,
    simplexes: Vec<Vec<usize>>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    keys: Vec<u64>,
}

impl Indexed {
    fn new(delta: &GeoComplex) -> Self {
        let vertices: Vec<RPoint> = delta.vertices().into_iter().collect();
        let index: BTreeMap<&RPoint, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let simplexes: Vec<Vec<usize>> = delta
            .simplexes()
            .iter()
            .map(|s| s.vertices().iter().map(|v| index[v]).collect())
            .collect();
        let id: HashMap<&Vec<usize>, usize> = simplexes.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut facets = vec![Vec::new(); simplexes.len()];
        let mut cofacets = vec![Vec::new(); simplexes.len()];
        for (i, s) in simplexes.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let mut f = s.clone();
                f.remove(skip);
                let j = id[&f];
                facets[i].push(j);
                cofacets[j].push(i);
            }
        }
        let keys = simplexes
            .iter()
            .map(|s| {
                let mut h = DefaultHasher::new();
                s.hash(&mut h);
                h.finish()
            })
            .collect();
        Indexed {
            vertices,
            simplexes,
            facets,
            cofacets,
            keys,
        }
    }

    fn simplex(&self, i: usize) -> GeoSimplex {
        GeoSimplex::from_sorted_unchecked(self.simplexes[i].iter().map(|&v| self.vertices[v].clone()).collect())
    }
}

struct State<'a> {
    ix: &'a Indexed,
    present: Vec<bool>,
    live_cofacets: Vec<usize>,
    count: usize,
    hash: u64,
}

impl<'a> State<'a> {
    fn new(ix: &'a Indexed) -> Self {
        let live_cofacets = ix.cofacets.iter().map(Vec::len).collect();
        State {
            ix,
            present: vec![true; ix.simplexes.len()],
            live_cofacets,
            count: ix.simplexes.len(),
            hash: ix.keys.iter().fold(0, |a, k| a ^ k),
        }
    }

    fn toggle(&mut self, i: usize, on: bool) {
        self.present[i] = on;
        self.hash ^= self.ix.keys[i];
        for &f in &self.ix.facets[i] {
            if on {
                self.live_cofacets[f] += 1;
            } else {
                self.live_cofacets[f] -= 1;
            }
        }
        if on {
            self.count += 1;
        } else {
            self.count -= 1;
        }
    }

    fn apply(&mut self, (t, f): (usize, usize)) {
        self.toggle(t, false);
        self.toggle(f, false);
    }

    fn undo(&mut self, (t, f): (usize, usize)) {
        self.toggle(f, true);
        self.toggle(t, true);
    }

    /// Free pairs ordered by the vertex lists of `(T, F)`.
    fn free_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.present.len())
            .filter(|&f| self.present[f] && self.live_cofacets[f] == 1)
            .map(|f| {
                let t = *self.ix.cofacets[f]
                    .iter()
                    .find(|&&t| self.present[t])
                    .expect("one live coface");
                (t, f)
            })
            .collect();
        out.sort_by(|a, b| {
            (&self.ix.simplexes[a.0], &self.ix.simplexes[a.1])
                .cmp(&(&self.ix.simplexes[b.0], &self.ix.simplexes[b.1]))
        });
        out
    }
}

/// Depth-first search taking the least free pair first, backtracking when
/// stuck and skipping complexes already visited. `None` means no sequence
/// was found within `budget` nodes.
pub fn find_collapse_sequence(delta: &GeoComplex, budget: usize) -> Option<CollapseSequence> {
    if delta.is_empty() {
        return None;
    }
    let ix = Indexed::new(delta);
    let mut state = State::new(&ix);
    let mut visited: HashSet<u64> = HashSet::new();
    visited.insert(state.hash);
    let mut path: Vec<(usize, usize)> = Vec::new();
    let mut stack: Vec<(Vec<(usize, usize)>, usize)> = vec![(state.free_pairs(), 0)];
    let mut nodes = 0usize;
    loop {
        if state.count == 1 {
            let terminal = (0..ix.simplexes.len())
                .find(|&i| state.present[i])
                .expect("one simplex left");
            return Some(CollapseSequence {
                steps: path
                    .iter()
                    .map(|&(t, f)| CollapseStep {
                        maximal: ix.simplex(t),
                        free_facet: ix.simplex(f),
                    })
                    .collect(),
                terminal: ix.simplex(terminal),
            });
        }
        let frame = stack.last_mut()?;
        if frame.1 == frame.0.len() {
            stack.pop();
            let last = path.pop()?;
            state.undo(last);
            continue;
        }
        let pair = frame.0[frame.1];
        frame.1 += 1;
        state.apply(pair);
        if !visited.insert(state.hash) {
            state.undo(pair);
            continue;
        }
        nodes += 1;
        if nodes > budget {
            return None;
        }
        path.push(pair);
        stack.push((state.free_pairs(), 0));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivide::stellar;

    fn p1(num: i64, den: i64) -> RPoint {
        RPoint::from_fractions(&[(num, den)])
    }

    fn v(x: i64, y: i64) -> RPoint {
        RPoint::from_ints(&[x, y])
    }

    #[test]
    fn free_face_examples() {
        let unit = GeoComplex::standard_cube(1);
        let pairs = free_faces(&unit);
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|(t, f)| t.dim() == 1 && f.dim() == 0));

        let sq = GeoComplex::standard_cube(2);
        let pairs = free_faces(&sq);
        assert_eq!(pairs.len(), 4);
        let t = GeoSimplex::new(vec![v(0, 0), v(1, 0), v(1, 1)]).unwrap();
        let f = GeoSimplex::new(vec![v(1, 0), v(1, 1)]).unwrap();
        assert!(pairs.contains(&(t, f)));

        let boundary = GeoComplex::from_maximal(
            2,
            vec![
                GeoSimplex::new(vec![v(0, 0), v(1, 0)]).unwrap(),
                GeoSimplex::new(vec![v(1, 0), v(0, 1)]).unwrap(),
                GeoSimplex::new(vec![v(0, 0), v(0, 1)]).unwrap(),
            ],
        )
        .unwrap();
        assert!(free_faces(&boundary).is_empty());
    }

    #[test]
    fn elementary_collapse_examples() {
        let unit = GeoComplex::standard_cube(1);
        let edge = unit.maximal()[0].clone();
        let one = GeoSimplex::vertex(p1(1, 1));
        let rest = elementary_collapse(&unit, &edge, &one).unwrap();
        assert_eq!(rest.len(), 1);
        assert!(rest.contains_simplex(&GeoSimplex::vertex(p1(0, 1))));

        let sq = GeoComplex::standard_cube(2);
        let (t, f) = free_faces(&sq)[0].clone();
        assert_eq!(elementary_collapse(&sq, &t, &f).unwrap().len(), 9);

        let diag = GeoSimplex::new(vec![v(0, 0), v(1, 1)]).unwrap();
        let e = elementary_collapse(&sq, &sq.maximal()[0], &diag);
        assert!(matches!(e, Err(Error::NotElementaryCollapse(_))));
    }

    #[test]
    fn search_examples() {
        let sq = GeoComplex::standard_cube(2);
        let seq = find_collapse_sequence(&sq, DEFAULT_COLLAPSE_BUDGET).unwrap();
        assert_eq!(seq.steps.len(), 5);
        assert!(replay(&sq, &seq));

        let point = GeoComplex::from_maximal(1, vec![GeoSimplex::vertex(p1(1, 2))]).unwrap();
        let seq = find_collapse_sequence(&point, 10).unwrap();
        assert!(seq.steps.is_empty());
        assert!(replay(&point, &seq));

        let cube = GeoComplex::standard_cube(3);
        let seq = find_collapse_sequence(&cube, DEFAULT_COLLAPSE_BUDGET).unwrap();
        assert_eq!(seq.steps.len(), (cube.len() - 1) / 2);
        assert!(replay(&cube, &seq));
    }

    #[test]
    fn replay_rejects_bad_sequences() {
        let sq = GeoComplex::standard_cube(2);
        let mut seq = find_collapse_sequence(&sq, DEFAULT_COLLAPSE_BUDGET).unwrap();
        let last = seq.steps.len() - 1;
        seq.steps.swap(0, last);
        assert!(!replay(&sq, &seq));

        let tri = GeoComplex::from_maximal(2, vec![GeoSimplex::new(vec![v(0, 0), v(1, 0), v(0, 1)]).unwrap()]).unwrap();
        let empty = CollapseSequence {
            steps: Vec::new(),
            terminal: GeoSimplex::vertex(v(0, 0)),
        };
        assert!(!replay(&tri, &empty));
    }

    #[test]
    fn hollow_triangle_is_not_collapsible() {
        let boundary = GeoComplex::from_maximal(
            2,
            vec![
                GeoSimplex::new(vec![v(0, 0), v(1, 0)]).unwrap(),
                GeoSimplex::new(vec![v(1, 0), v(0, 1)]).unwrap(),
                GeoSimplex::new(vec![v(0, 0), v(0, 1)]).unwrap(),
            ],
        )
        .unwrap();
        assert!(find_collapse_sequence(&boundary, DEFAULT_COLLAPSE_BUDGET).is_none());
    }

    #[test]
    fn stellar_subdivision_stays_collapsible() {
        let sq = GeoComplex::standard_cube(2);
        let fine = stellar(&sq, &RPoint::from_fractions(&[(1, 3), (1, 2)])).unwrap();
        let seq = find_collapse_sequence(&fine, DEFAULT_COLLAPSE_BUDGET).unwrap();
        assert!(replay(&fine, &seq));
    }
}
