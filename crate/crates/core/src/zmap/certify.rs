use std::fmt;

use crate::collapse::{find_collapse_sequence, replay, CollapseSequence};
use crate::complex::{GeoComplex, RPoint};
use crate::error::{Error, Result};
use crate::regular::{desingularize_with_budget, is_strongly_regular};
use crate::zmap::pipeline::{cube_corners_in, Budgets};
use crate::zmap::{verify_zretract, PLMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Certified,
    Refuted,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Refuted => "refuted",
            Status::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Conditions (ii) and (iii) of the characterization, the ones that refute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    LatticeVertex,
    StronglyRegular,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::LatticeVertex => "ii",
            Condition::StronglyRegular => "iii",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A collapse sequence together with the complex it starts from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseWitness {
    pub complex: GeoComplex,
    pub sequence: CollapseSequence,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witnesses {
    pub lattice_vertex: Option<RPoint>,
    pub triangulation: Option<GeoComplex>,
    pub collapse: Option<CollapseWitness>,
    pub retraction: Option<PLMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractVerdict {
    pub status: Status,
    pub reasons: Vec<Condition>,
    pub witnesses: Witnesses,
}

impl RetractVerdict {
    /// Replays every attached witness against `p` and checks that the
    /// status is consistent with them.
    pub fn verify(&self, p: &GeoComplex) -> Result<bool> {
        let w = &self.witnesses;
        if let Some(v) = &w.lattice_vertex {
            if !cube_corners_in(p).contains(v) {
                return Ok(false);
            }
        }
        if let Some(t) = &w.triangulation {
            if !t.same_support(p) || !is_strongly_regular(t) {
                return Ok(false);
            }
        }
        if let Some(c) = &w.collapse {
            if !c.complex.same_support(p) || !replay(&c.complex, &c.sequence) {
                return Ok(false);
            }
        }
        if let Some(eta) = &w.retraction {
            if !verify_zretract(p, eta)? {
                return Ok(false);
            }
        }
        let reasons_hold = self.reasons.iter().all(|r| match r {
            Condition::LatticeVertex => cube_corners_in(p).is_empty(),
            Condition::StronglyRegular => w.triangulation.is_none(),
        });
        Ok(reasons_hold
            && match self.status {
                Status::Certified => {
                    self.reasons.is_empty() && w.lattice_vertex.is_some() && w.triangulation.is_some() && w.collapse.is_some()
                }
                Status::Refuted => !self.reasons.is_empty(),
                Status::Unknown => self.reasons.is_empty(),
            })
    }
}

/// Decides whether `p` is a Z-retract of its unit cube where the available
/// certificates allow it. Refutation uses conditions (ii) and (iii);
/// certification additionally needs a collapse sequence for `p` or for its
/// strongly regular triangulation.
pub fn certify_main(p: &GeoComplex, budgets: Budgets) -> Result<RetractVerdict> {
    let n = p.ambient_dim();
    if !GeoComplex::standard_cube(n).support_contains(p) {
        return Err(Error::NotContained("polyhedron is not inside the unit cube".into()));
    }
    let mut witnesses = Witnesses {
        lattice_vertex: cube_corners_in(p).into_iter().next(),
        ..Witnesses::default()
    };
    let mut reasons = Vec::new();
    if witnesses.lattice_vertex.is_none() {
        reasons.push(Condition::LatticeVertex);
    }
    let smooth = match desingularize_with_budget(p, budgets.desingularize) {
        Ok(d) => Some(d),
        Err(Error::BudgetExhausted { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut sr_decided = false;
    if let Some(d) = &smooth {
        sr_decided = true;
        if is_strongly_regular(d) {
            witnesses.triangulation = Some(d.clone());
        } else {
            reasons.push(Condition::StronglyRegular);
        }
    }
    if !reasons.is_empty() {
        return Ok(RetractVerdict {
            status: Status::Refuted,
            reasons,
            witnesses,
        });
    }
    let candidates = std::iter::once(p).chain(smooth.as_ref().filter(|d| *d != p));
    for c in candidates {
        if let Some(sequence) = find_collapse_sequence(c, budgets.collapse) {
            witnesses.collapse = Some(CollapseWitness {
                complex: c.clone(),
                sequence,
            });
            break;
        }
    }
    let status = if sr_decided && witnesses.collapse.is_some() {
        Status::Certified
    } else {
        Status::Unknown
    };
    Ok(RetractVerdict {
        status,
        reasons,
        witnesses,
    })
}
