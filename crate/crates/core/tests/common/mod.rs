#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use itertools::Itertools;
use rand::Rng;
use zrk::scx::{parse_scx, ScxDocument};
use zrk::{GeoComplex, GeoSimplex, Int, RPoint, Rat};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus() -> Vec<(String, ScxDocument)> {
    let mut entries: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "scx"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            let doc = parse_scx(&fs::read_to_string(&p).expect("readable")).expect("valid corpus file");
            (p.file_stem().unwrap().to_string_lossy().into_owned(), doc)
        })
        .collect()
}

/// Corpus polyhedra: complex documents and the domains of map documents.
pub fn corpus_complexes() -> Vec<(String, GeoComplex)> {
    corpus()
        .into_iter()
        .filter_map(|(name, doc)| match doc {
            ScxDocument::Complex(k) => Some((name, k)),
            ScxDocument::PlMap(m) => Some((format!("{name} domain"), m.domain().clone())),
            _ => None,
        })
        .collect()
}

pub fn load_complex(name: &str) -> GeoComplex {
    match corpus().into_iter().find(|(n, _)| n == name) {
        Some((_, ScxDocument::Complex(k))) => k,
        _ => panic!("no complex {name} in corpus"),
    }
}

pub fn load_map(name: &str) -> zrk::zmap::PLMap {
    match corpus().into_iter().find(|(n, _)| n == name) {
        Some((_, ScxDocument::PlMap(m))) => m,
        _ => panic!("no map {name} in corpus"),
    }
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn p1(num: i64, den: i64) -> RPoint {
    RPoint::from_fractions(&[(num, den)])
}

pub fn simplex(points: &[RPoint]) -> GeoSimplex {
    GeoSimplex::new(points.to_vec()).expect("affinely independent")
}

pub fn complex(dim: usize, simplexes: Vec<GeoSimplex>) -> GeoComplex {
    GeoComplex::from_maximal(dim, simplexes).expect("valid complex")
}

/// A rational point of `[0,1]^n` with every denominator at most `max_den`.
pub fn random_point(rng: &mut impl Rng, n: usize, max_den: i64) -> RPoint {
    RPoint::new(
        (0..n)
            .map(|_| {
                let d = rng.gen_range(1..=max_den);
                rat(rng.gen_range(0..=d), d)
            })
            .collect(),
    )
    .unwrap()
}

/// A random affinely independent simplex of dimension `k` in `[0,1]^n`.
pub fn random_simplex(rng: &mut impl Rng, n: usize, k: usize, max_den: i64) -> GeoSimplex {
    loop {
        let pts: Vec<RPoint> = (0..=k).map(|_| random_point(rng, n, max_den)).collect();
        if let Ok(s) = GeoSimplex::new(pts) {
            return s;
        }
    }
}

/// A point in the relative interior of `s`.
pub fn random_interior_point(rng: &mut impl Rng, s: &GeoSimplex) -> RPoint {
    let raw: Vec<i64> = s.vertices().iter().map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = raw.iter().sum();
    let w: Vec<Rat> = raw.iter().map(|&x| rat(x, total)).collect();
    RPoint::combination(s.vertices(), &w)
}

/// All points of the bounding box of `k` whose coordinates have
/// denominators at most `max_den`, restricted to `|k|`.
pub fn sample_points(k: &GeoComplex, max_den: i64) -> Vec<RPoint> {
    let n = k.ambient_dim();
    let mut out = std::collections::BTreeSet::new();
    for d in 1..=max_den {
        for c in (0..n).map(|_| 0..=d).multi_cartesian_product() {
            let p = RPoint::new(c.iter().map(|&x| rat(x, d)).collect()).unwrap();
            if k.contains_point(&p) {
                out.insert(p);
            }
        }
    }
    out.into_iter().collect()
}

/// Determinant by cofactor expansion, independent of the library's
/// elimination code.
pub fn det(m: &[Vec<Int>]) -> Int {
    match m.len() {
        0 => Int::from(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<Int>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

/// gcd of all maximal minors of the homogeneous vertex matrix equals 1.
pub fn regular_by_minors(s: &GeoSimplex) -> bool {
    let rows: Vec<Vec<Int>> = s.vertices().iter().map(|v| v.homog()).collect();
    let k = rows.len();
    let cols = rows[0].len();
    let mut g = Int::from(0);
    for chosen in (0..cols).combinations(k) {
        let sub: Vec<Vec<Int>> = rows.iter().map(|r| chosen.iter().map(|&c| r[c].clone()).collect()).collect();
        g = num_integer::Integer::gcd(&g, &det(&sub));
    }
    g == Int::from(1)
}
