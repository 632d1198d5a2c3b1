mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::io::CliError;

/// Exact simplicial geometry for Z-retracts of rational polyhedra.
#[derive(Parser, Debug)]
#[command(name = "zrk", version, about)]
pub struct Cli {
    /// Step budget for desingularization and collapse searches.
    #[arg(long, global = true, env = "ZRK_BUDGET")]
    pub budget: Option<usize>,

    /// Write the produced document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Directory for witness files.
    #[arg(long, global = true)]
    pub witness: Option<PathBuf>,

    /// Seed for randomly chosen inputs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Checks that every simplex is regular.
    CheckRegular { complex: PathBuf },
    /// Checks regularity and that every vertex has a lattice coordinate vector.
    CheckStronglyRegular { complex: PathBuf },
    /// Refines a complex into a regular one by stellar subdivisions.
    Desingularize { complex: PathBuf },
    /// Stellar subdivision at a point, given as `p/q,...` or drawn with --seed.
    Stellar {
        complex: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
    /// Common refinement of two triangulations of the same polyhedron.
    Refine { first: PathBuf, second: PathBuf },
    /// Refines a triangulation so that a subpolyhedron is a subcomplex.
    Restrict { complex: PathBuf, polyhedron: PathBuf },
    /// Searches for a collapse sequence ending at a vertex.
    Collapse { complex: PathBuf },
    /// Replays a collapse sequence.
    Replay { sequence: PathBuf },
    /// Checks the Z-map criterion for a piecewise-linear map.
    ZmapCheck { map: PathBuf },
    /// Checks a Z-retraction of the cube, or a section and retraction pair.
    RetractVerify {
        polyhedron: PathBuf,
        map: PathBuf,
        /// Section into the domain of `map`; checks that `map` after it fixes the polyhedron.
        #[arg(long)]
        section: Option<PathBuf>,
    },
    /// Weighted complex and section/retraction pair from a reduced retraction.
    Part2 { map: PathBuf, polyhedron: PathBuf },
    /// Reduces a PL retraction of the cube onto the polyhedron.
    Pipeline { map: PathBuf, polyhedron: PathBuf },
    /// Certifies or refutes that a polyhedron is a Z-retract.
    Certify { polyhedron: PathBuf },
    /// Realizes a weighted complex in a cube.
    Realize { weighted: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(CliError { code, message }) => {
            eprintln!("zrk: {message}");
            ExitCode::from(code)
        }
    }
}
