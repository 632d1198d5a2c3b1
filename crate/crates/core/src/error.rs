use thiserror::Error;

/// Labels for the properties (a)–(h) a reduced retraction pair must satisfy,
/// and for the conditions of the retract characterisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl std::fmt::Display for PropertyLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PropertyLabel::A => "a",
            PropertyLabel::B => "b",
            PropertyLabel::C => "c",
            PropertyLabel::D => "d",
            PropertyLabel::E => "e",
            PropertyLabel::F => "f",
            PropertyLabel::G => "g",
            PropertyLabel::H => "h",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("not affinely independent input")]
    NotAffinelyIndependent,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("not a simplicial complex: {0}")]
    NotSimplicialComplex(String),

    #[error("point not in support: {0}")]
    PointNotInSupport(String),

    #[error("support mismatch: {0}")]
    SupportMismatch(String),

    #[error("containment violation: {0}")]
    NotContained(String),

    #[error("not an elementary collapse: {0}")]
    NotElementaryCollapse(String),

    #[error("{what} budget exhausted after {steps} steps")]
    BudgetExhausted { what: &'static str, steps: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("map is not compatible: {0}")]
    Incompatible(String),

    #[error("property ({label}) violated: {detail}")]
    Property { label: PropertyLabel, detail: String },

    #[error("condition ({condition}) of the retract characterisation fails: {detail}")]
    Condition { condition: &'static str, detail: String },

    #[error("parse error{}: {message}", location.as_ref().map(|l| format!(" at {l}")).unwrap_or_default())]
    Parse {
        location: Option<String>,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(location: impl Into<Option<String>>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
