//! The `.scx` exchange format: UTF-8 JSON with rationals written as `"p/q"`
//! strings in lowest terms.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::collapse::{CollapseSequence, CollapseStep};
use crate::complex::{AbsComplex, GeoComplex, GeoSimplex, RPoint, WeightedComplex};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational};
use crate::zmap::{Condition, PLMap, Status};
use crate::{Int, Rat};

pub const VERSION: &str = "1";

/// A verdict as stored on disk. Witnesses live in sidecar files named here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictRecord {
    pub status: Status,
    pub reasons: Vec<Condition>,
    pub lattice_vertex: Option<RPoint>,
    pub witnesses: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScxDocument {
    Complex(GeoComplex),
    PlMap(PLMap),
    Weighted(WeightedComplex<RPoint>),
    Sequence { complex: GeoComplex, sequence: CollapseSequence },
    Verdict(VerdictRecord),
}

impl ScxDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            ScxDocument::Complex(_) => "complex",
            ScxDocument::PlMap(_) => "plmap",
            ScxDocument::Weighted(_) => "weighted",
            ScxDocument::Sequence { .. } => "sequence",
            ScxDocument::Verdict(_) => "verdict",
        }
    }
}

type Point = Vec<String>;
type Simplex = Vec<Point>;

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Raw {
    version: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    maximal_simplexes: Option<Vec<Simplex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_images: Option<Vec<(Point, Point)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    faces: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    steps: Option<Vec<(Simplex, Simplex)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terminal: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reasons: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lattice_vertex: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witnesses: Option<BTreeMap<String, String>>,
}

fn point_out(p: &RPoint) -> Point {
    p.coords().iter().map(format_rational).collect()
}

fn simplex_out(s: &GeoSimplex) -> Simplex {
    s.vertices().iter().map(point_out).collect()
}

fn complex_out(raw: &mut Raw, k: &GeoComplex) {
    raw.dim = Some(k.ambient_dim());
    raw.maximal_simplexes = Some(k.maximal().iter().map(simplex_out).collect());
}

fn int_out(x: &Int) -> Value {
    match x.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

/// Canonical text of a document: fixed field order, sorted simplexes and
/// a trailing newline.
pub fn print_scx(doc: &ScxDocument) -> String {
    let mut raw = Raw {
        version: VERSION.into(),
        kind: doc.kind().into(),
        ..Raw::default()
    };
    match doc {
        ScxDocument::Complex(k) => complex_out(&mut raw, k),
        ScxDocument::PlMap(m) => {
            complex_out(&mut raw, m.domain());
            raw.target_dim = Some(m.target_dim());
            raw.vertex_images = Some(m.images().iter().map(|(v, y)| (point_out(v), point_out(y))).collect());
        }
        ScxDocument::Weighted(w) => {
            raw.dim = w.base().vertices().first().map(RPoint::dim);
            raw.vertices = Some(w.base().vertices().iter().map(point_out).collect());
            raw.faces = Some(w.base().maximal_faces());
            raw.weights = Some(w.weights().iter().map(int_out).collect());
        }
        ScxDocument::Sequence { complex, sequence } => {
            complex_out(&mut raw, complex);
            raw.steps = Some(
                sequence
                    .steps
                    .iter()
                    .map(|s| (simplex_out(&s.maximal), simplex_out(&s.free_facet)))
                    .collect(),
            );
            raw.terminal = sequence.terminal.vertices().first().map(point_out);
        }
        ScxDocument::Verdict(v) => {
            raw.status = Some(v.status.as_str().into());
            raw.reasons = Some(v.reasons.iter().map(|r| r.as_str().to_string()).collect());
            raw.lattice_vertex = v.lattice_vertex.as_ref().map(point_out);
            raw.witnesses = Some(v.witnesses.clone());
        }
    }
    let mut text = serde_json::to_string_pretty(&raw).expect("serializable");
    text.push('\n');
    text
}

struct Reader {
    raw: Raw,
}

impl Reader {
    fn take<T>(field: Option<T>, name: &str) -> Result<T> {
        field.ok_or_else(|| Error::parse(name.to_string(), "missing field"))
    }

    fn point(p: &[String], at: &str, dim: Option<usize>) -> Result<RPoint> {
        if let Some(d) = dim {
            if p.len() != d {
                return Err(Error::parse(at.to_string(), format!("expected {d} coordinates, found {}", p.len())));
            }
        }
        let coords: Vec<Rat> = p
            .iter()
            .enumerate()
            .map(|(i, c)| parse_rational(c).map_err(|m| Error::parse(format!("{at}[{i}]"), m)))
            .collect::<Result<_>>()?;
        RPoint::new(coords).map_err(|e| Error::parse(at.to_string(), e.to_string()))
    }

    fn simplex(s: &[Point], at: &str, dim: usize) -> Result<GeoSimplex> {
        let pts = s
            .iter()
            .enumerate()
            .map(|(i, p)| Self::point(p, &format!("{at}[{i}]"), Some(dim)))
            .collect::<Result<Vec<_>>>()?;
        GeoSimplex::new(pts).map_err(|e| Error::parse(at.to_string(), e.to_string()))
    }

    fn dim(&self) -> Result<usize> {
        Self::take(self.raw.dim, "dim")
    }

    fn complex(&mut self) -> Result<GeoComplex> {
        let dim = self.dim()?;
        let simplexes = Self::take(self.raw.maximal_simplexes.take(), "maximal_simplexes")?;
        let simplexes = simplexes
            .iter()
            .enumerate()
            .map(|(i, s)| Self::simplex(s, &format!("maximal_simplexes[{i}]"), dim))
            .collect::<Result<Vec<_>>>()?;
        GeoComplex::from_maximal(dim, simplexes)
    }

    fn plmap(&mut self) -> Result<PLMap> {
        let domain = self.complex()?;
        let target = Self::take(self.raw.target_dim, "target_dim")?;
        let pairs = Self::take(self.raw.vertex_images.take(), "vertex_images")?;
        let mut images = BTreeMap::new();
        for (i, (v, y)) in pairs.iter().enumerate() {
            let v = Self::point(v, &format!("vertex_images[{i}][0]"), Some(domain.ambient_dim()))?;
            let y = Self::point(y, &format!("vertex_images[{i}][1]"), Some(target))?;
            if images.insert(v, y).is_some() {
                return Err(Error::parse(format!("vertex_images[{i}]"), "duplicate vertex"));
            }
        }
        PLMap::new(domain, images)
    }

    fn weighted(&mut self) -> Result<WeightedComplex<RPoint>> {
        let dim = self.dim()?;
        let vertices = Self::take(self.raw.vertices.take(), "vertices")?
            .iter()
            .enumerate()
            .map(|(i, p)| Self::point(p, &format!("vertices[{i}]"), Some(dim)))
            .collect::<Result<Vec<_>>>()?;
        let faces = Self::take(self.raw.faces.take(), "faces")?;
        let mut labelled = Vec::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            let face = f
                .iter()
                .map(|&k| vertices.get(k).cloned())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::parse(format!("faces[{i}]"), "vertex index out of range"))?;
            labelled.push(face);
        }
        let weights = Self::take(self.raw.weights.take(), "weights")?
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let at = format!("weights[{i}]");
                match w {
                    Value::Number(n) => n
                        .as_u64()
                        .map(Int::from)
                        .ok_or_else(|| Error::parse(at, "weight must be a positive integer")),
                    Value::String(s) => s.parse::<Int>().map_err(|_| Error::parse(at, "invalid integer")),
                    _ => Err(Error::parse(at, "weight must be an integer")),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        WeightedComplex::new(AbsComplex::new(vertices, labelled)?, weights)
    }

    fn sequence(&mut self) -> Result<(GeoComplex, CollapseSequence)> {
        let complex = self.complex()?;
        let dim = complex.ambient_dim();
        let steps = Self::take(self.raw.steps.take(), "steps")?
            .iter()
            .enumerate()
            .map(|(i, (t, f))| {
                Ok(CollapseStep {
                    maximal: Self::simplex(t, &format!("steps[{i}][0]"), dim)?,
                    free_facet: Self::simplex(f, &format!("steps[{i}][1]"), dim)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let terminal = Self::take(self.raw.terminal.take(), "terminal")?;
        let terminal = Self::point(&terminal, "terminal", Some(dim))?;
        let terminal = GeoSimplex::new(vec![terminal]).expect("a point is a simplex");
        Ok((complex, CollapseSequence { steps, terminal }))
    }

    fn verdict(&mut self) -> Result<VerdictRecord> {
        let status = match Self::take(self.raw.status.take(), "status")?.as_str() {
            "certified" => Status::Certified,
            "refuted" => Status::Refuted,
            "unknown" => Status::Unknown,
            other => return Err(Error::parse("status".to_string(), format!("unknown status {other:?}"))),
        };
        let reasons = self
            .raw
            .reasons
            .take()
            .unwrap_or_default()
            .iter()
            .enumerate()
            .map(|(i, r)| match r.as_str() {
                "ii" => Ok(Condition::LatticeVertex),
                "iii" => Ok(Condition::StronglyRegular),
                other => Err(Error::parse(format!("reasons[{i}]"), format!("unknown condition {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let lattice_vertex = match self.raw.lattice_vertex.take() {
            Some(p) => Some(Self::point(&p, "lattice_vertex", self.raw.dim)?),
            None => None,
        };
        Ok(VerdictRecord {
            status,
            reasons,
            lattice_vertex,
            witnesses: self.raw.witnesses.take().unwrap_or_default(),
        })
    }
}

/// Parses a document. Syntax errors carry `line:column`, semantic errors
/// the JSON path of the offending value.
pub fn parse_scx(text: &str) -> Result<ScxDocument> {
    let raw: Raw = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("{}:{}", e.line(), e.column()), e.to_string()))?;
    if raw.version != VERSION {
        return Err(Error::parse("version".to_string(), format!("unsupported version {:?}", raw.version)));
    }
    let kind = raw.kind.clone();
    let mut r = Reader { raw };
    Ok(match kind.as_str() {
        "complex" => ScxDocument::Complex(r.complex()?),
        "plmap" => ScxDocument::PlMap(r.plmap()?),
        "weighted" => ScxDocument::Weighted(r.weighted()?),
        "sequence" => {
            let (complex, sequence) = r.sequence()?;
            ScxDocument::Sequence { complex, sequence }
        }
        "verdict" => ScxDocument::Verdict(r.verdict()?),
        other => return Err(Error::parse("kind".to_string(), format!("unknown kind {other:?}"))),
    })
}
