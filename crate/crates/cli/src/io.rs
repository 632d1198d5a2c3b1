use std::fs;
use std::path::{Path, PathBuf};

use zrk::collapse::CollapseSequence;
use zrk::scx::{parse_scx, print_scx, ScxDocument};
use zrk::zmap::PLMap;
use zrk::{Error, GeoComplex, RPoint, WeightedComplex};

pub const EX_USAGE: u8 = 64;
pub const EX_DATAERR: u8 = 65;
pub const EX_NOINPUT: u8 = 66;
pub const EX_CANTCREAT: u8 = 73;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EX_USAGE,
            message: message.into(),
        }
    }

    pub fn data(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError {
            code: EX_DATAERR,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: EX_DATAERR,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn load(path: &Path) -> CliResult<ScxDocument> {
    let text = fs::read_to_string(path).map_err(|e| CliError {
        code: EX_NOINPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_scx(&text).map_err(|e| CliError::data(path, e))
}

fn wrong_kind(path: &Path, want: &str, doc: &ScxDocument) -> CliError {
    CliError::data(path, format!("expected a {want} document, found {}", doc.kind()))
}

pub fn load_complex(path: &Path) -> CliResult<GeoComplex> {
    match load(path)? {
        ScxDocument::Complex(k) => Ok(k),
        other => Err(wrong_kind(path, "complex", &other)),
    }
}

pub fn load_map(path: &Path) -> CliResult<PLMap> {
    match load(path)? {
        ScxDocument::PlMap(m) => Ok(m),
        other => Err(wrong_kind(path, "plmap", &other)),
    }
}

pub fn load_weighted(path: &Path) -> CliResult<WeightedComplex<RPoint>> {
    match load(path)? {
        ScxDocument::Weighted(w) => Ok(w),
        other => Err(wrong_kind(path, "weighted", &other)),
    }
}

pub fn load_sequence(path: &Path) -> CliResult<(GeoComplex, CollapseSequence)> {
    match load(path)? {
        ScxDocument::Sequence { complex, sequence } => Ok((complex, sequence)),
        other => Err(wrong_kind(path, "sequence", &other)),
    }
}

pub fn write_file(path: &Path, doc: &ScxDocument) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| cant_create(dir, e))?;
    }
    fs::write(path, print_scx(doc)).map_err(|e| cant_create(path, e))
}

fn cant_create(path: &Path, e: std::io::Error) -> CliError {
    CliError {
        code: EX_CANTCREAT,
        message: format!("{}: {e}", path.display()),
    }
}

/// Writes to `out` when given, otherwise to standard output.
pub fn emit(out: Option<&PathBuf>, doc: &ScxDocument) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, doc),
        None => {
            print!("{}", print_scx(doc));
            Ok(())
        }
    }
}
