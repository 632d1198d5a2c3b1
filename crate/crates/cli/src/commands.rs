use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zrk::collapse::{find_collapse_sequence, replay};
use zrk::exactnum::parse_rational;
use zrk::regular::{den_gcd, desingularize_with_budget, irregularity, is_strongly_regular};
use zrk::scx::{ScxDocument, VerdictRecord};
use zrk::subdivide::{common_refinement, restrict, stellar};
use zrk::zmap::{
    certify_main, is_zmap, part2_reduce, pipeline_dh, verify_section_retraction, verify_zretract, Budgets, Status,
};
use zrk::{Error, GeoComplex, Int, RPoint, Rat};

use crate::io::{emit, load_complex, load_map, load_sequence, load_weighted, write_file, CliError, CliResult};
use crate::{Cli, Command};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Outcome {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }
}

impl From<Status> for Outcome {
    fn from(s: Status) -> Self {
        match s {
            Status::Certified => Outcome::Yes,
            Status::Refuted => Outcome::No,
            Status::Unknown => Outcome::Unknown,
        }
    }
}

fn budgets(cli: &Cli) -> Budgets {
    let mut b = Budgets::default();
    if let Some(n) = cli.budget {
        b.desingularize = n;
        b.collapse = n;
    }
    b
}

fn report(outcome: Outcome, message: impl std::fmt::Display) -> CliResult<Outcome> {
    println!("{message}");
    Ok(outcome)
}

/// Budget exhaustion is an inconclusive answer rather than a failure.
fn or_unknown<T>(r: zrk::Result<T>) -> CliResult<Result<T, Outcome>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::BudgetExhausted { .. }) => {
            eprintln!("{e}");
            Ok(Err(Outcome::Unknown))
        }
        Err(e @ (Error::Condition { .. } | Error::Property { .. })) => {
            println!("{e}");
            Ok(Err(Outcome::No))
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_point(text: &str, dim: usize) -> CliResult<RPoint> {
    let coords = text
        .split(',')
        .map(|c| parse_rational::<Int>(c.trim()).map_err(|m| CliError::usage(format!("--point: {m}"))))
        .collect::<CliResult<Vec<Rat>>>()?;
    if coords.len() != dim {
        return Err(CliError::usage(format!("--point: expected {dim} coordinates, found {}", coords.len())));
    }
    RPoint::new(coords).map_err(CliError::from)
}

fn random_point(k: &GeoComplex, seed: u64) -> CliResult<RPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maximal = k.maximal();
    if maximal.is_empty() {
        return Err(CliError::usage("cannot draw a point from an empty complex"));
    }
    let s = &maximal[rng.gen_range(0..maximal.len())];
    let raw: Vec<i64> = (0..s.vertices().len()).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = raw.iter().sum();
    let weights: Vec<Rat> = raw.iter().map(|&w| Rat::new(w.into(), total.into())).collect();
    Ok(RPoint::combination(s.vertices(), &weights))
}

fn default_witness_dir(cli: &Cli, input: &Path) -> PathBuf {
    if let Some(dir) = &cli.witness {
        return dir.clone();
    }
    if let Some(parent) = cli.out.as_ref().and_then(|o| o.parent()) {
        return parent.to_path_buf();
    }
    let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "zrk".into());
    PathBuf::from(format!("{stem}.witness"))
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let out = cli.out.as_ref();
    match &cli.command {
        Command::CheckRegular { complex } => {
            let k = load_complex(complex)?;
            let mut ok = true;
            for s in k.maximal() {
                if let Some(f) = irregularity(&s) {
                    ok = false;
                    println!("simplex {s} not regular: invariant factors [{}]", f.iter().join(","));
                }
            }
            if ok {
                println!("regular");
            }
            Ok(ok.into())
        }
        Command::CheckStronglyRegular { complex } => {
            let k = load_complex(complex)?;
            for s in k.maximal() {
                if let Some(f) = irregularity(&s) {
                    println!("simplex {s} not regular: invariant factors [{}]", f.iter().join(","));
                } else if den_gcd(&s) != Int::from(1) {
                    println!("simplex {s} not strongly regular: vertex denominators share the factor {}", den_gcd(&s));
                }
            }
            let ok = is_strongly_regular(&k);
            if ok {
                println!("strongly regular");
            }
            Ok(ok.into())
        }
        Command::Desingularize { complex } => {
            let k = load_complex(complex)?;
            match or_unknown(desingularize_with_budget(&k, budgets(cli).desingularize))? {
                Ok(d) => {
                    eprintln!("{} maximal simplexes", d.maximal().len());
                    emit(out, &ScxDocument::Complex(d))?;
                    Ok(Outcome::Yes)
                }
                Err(o) => Ok(o),
            }
        }
        Command::Stellar { complex, point } => {
            let k = load_complex(complex)?;
            let p = match (point, cli.seed) {
                (Some(text), _) => parse_point(text, k.ambient_dim())?,
                (None, Some(seed)) => random_point(&k, seed)?,
                (None, None) => return Err(CliError::usage("stellar needs --point or --seed")),
            };
            eprintln!("subdividing at {p}");
            emit(out, &ScxDocument::Complex(stellar(&k, &p)?))?;
            Ok(Outcome::Yes)
        }
        Command::Refine { first, second } => {
            let r = common_refinement(&load_complex(first)?, &load_complex(second)?)?;
            emit(out, &ScxDocument::Complex(r))?;
            Ok(Outcome::Yes)
        }
        Command::Restrict { complex, polyhedron } => {
            let r = restrict(&load_complex(complex)?, &load_complex(polyhedron)?)?;
            emit(out, &ScxDocument::Complex(r))?;
            Ok(Outcome::Yes)
        }
        Command::Collapse { complex } => {
            let k = load_complex(complex)?;
            match find_collapse_sequence(&k, budgets(cli).collapse) {
                Some(sequence) => {
                    eprintln!("{} steps", sequence.steps.len());
                    emit(out, &ScxDocument::Sequence { complex: k, sequence })?;
                    Ok(Outcome::Yes)
                }
                None => report(Outcome::Unknown, "no collapse sequence found within budget"),
            }
        }
        Command::Replay { sequence } => {
            let (k, seq) = load_sequence(sequence)?;
            let ok = replay(&k, &seq);
            report(ok.into(), if ok { "valid" } else { "invalid" })
        }
        Command::ZmapCheck { map } => {
            let ok = is_zmap(&load_map(map)?)?;
            report(ok.into(), if ok { "Z-map" } else { "not a Z-map" })
        }
        Command::RetractVerify {
            polyhedron,
            map,
            section,
        } => {
            let p = load_complex(polyhedron)?;
            let mu = load_map(map)?;
            let ok = match section {
                Some(s) => verify_section_retraction(&p, &mu, &load_map(s)?)?,
                None => verify_zretract(&p, &mu)?,
            };
            report(ok.into(), if ok { "verified" } else { "not verified" })
        }
        Command::Part2 { map, polyhedron } => {
            let eta = load_map(map)?;
            let p = load_complex(polyhedron)?;
            let part = match or_unknown(part2_reduce(&eta, eta.domain(), &p, budgets(cli)))? {
                Ok(part) => part,
                Err(o) => return Ok(o),
            };
            if let Some(dir) = &cli.witness {
                write_file(&dir.join("xi.scx"), &ScxDocument::PlMap(part.xi.clone()))?;
                write_file(&dir.join("mu.scx"), &ScxDocument::PlMap(part.mu.clone()))?;
                write_file(&dir.join("realization.scx"), &ScxDocument::Complex(part.realization.clone()))?;
            }
            eprintln!("weights [{}]", part.weighted.weights().iter().join(","));
            emit(out, &ScxDocument::Weighted(part.weighted))?;
            Ok(Outcome::Yes)
        }
        Command::Pipeline { map, polyhedron } => {
            let eta_b = load_map(map)?;
            let p = load_complex(polyhedron)?;
            let result = match or_unknown(pipeline_dh(&eta_b, &p, budgets(cli)))? {
                Ok(r) => r,
                Err(o) => return Ok(o),
            };
            let outcome = match &result.collapse {
                Some(seq) => {
                    if let Some(dir) = &cli.witness {
                        let doc = ScxDocument::Sequence {
                            complex: result.delta.clone(),
                            sequence: seq.clone(),
                        };
                        write_file(&dir.join("collapse.scx"), &doc)?;
                    }
                    Outcome::Yes
                }
                None => {
                    eprintln!("no collapse sequence found within budget");
                    Outcome::Unknown
                }
            };
            emit(out, &ScxDocument::PlMap(result.eta))?;
            Ok(outcome)
        }
        Command::Certify { polyhedron } => {
            let p = load_complex(polyhedron)?;
            let verdict = certify_main(&p, budgets(cli))?;
            let dir = default_witness_dir(cli, polyhedron);
            let mut files = BTreeMap::new();
            if let Some(t) = &verdict.witnesses.triangulation {
                write_file(&dir.join("triangulation.scx"), &ScxDocument::Complex(t.clone()))?;
                files.insert("triangulation".to_string(), "triangulation.scx".to_string());
            }
            if let Some(c) = &verdict.witnesses.collapse {
                let doc = ScxDocument::Sequence {
                    complex: c.complex.clone(),
                    sequence: c.sequence.clone(),
                };
                write_file(&dir.join("collapse.scx"), &doc)?;
                files.insert("collapse".to_string(), "collapse.scx".to_string());
            }
            let reasons = verdict.reasons.iter().map(|r| format!("({r})")).join(" and ");
            if reasons.is_empty() {
                eprintln!("{}", verdict.status);
            } else {
                eprintln!("{} by {reasons}", verdict.status);
            }
            if !files.is_empty() {
                eprintln!("witnesses in {}", dir.display());
            }
            let record = VerdictRecord {
                status: verdict.status,
                reasons: verdict.reasons.clone(),
                lattice_vertex: verdict.witnesses.lattice_vertex.clone(),
                witnesses: files,
            };
            emit(out, &ScxDocument::Verdict(record))?;
            Ok(verdict.status.into())
        }
        Command::Realize { weighted } => {
            let w = load_weighted(weighted)?;
            emit(out, &ScxDocument::Complex(w.realize()))?;
            Ok(Outcome::Yes)
        }
    }
}
