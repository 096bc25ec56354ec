use std::fmt;
use std::path::PathBuf;

use crate::lp::LpError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A single dataset invariant violation, tagged with the offending unit.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    DuplicateDmu {
        dmu_id: String,
    },
    NegativeOutput {
        dmu_id: String,
        ss: f64,
    },
    NonFiniteValue {
        dmu_id: String,
        field: &'static str,
    },
    NegativeInput {
        dmu_id: String,
        field: &'static str,
        value: f64,
    },
    ZeroInput {
        dmu_id: String,
    },
    SdsMismatch {
        dmu_id: String,
        expected: String,
        found: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateDmu { dmu_id } => write!(f, "duplicate dmu_id '{dmu_id}'"),
            Violation::NegativeOutput { dmu_id, ss } => {
                write!(f, "negative output ss={ss} for '{dmu_id}'")
            }
            Violation::NonFiniteValue { dmu_id, field } => {
                write!(f, "non-finite {field} for '{dmu_id}'")
            }
            Violation::NegativeInput {
                dmu_id,
                field,
                value,
            } => {
                write!(f, "negative {field}={value} for '{dmu_id}'")
            }
            Violation::ZeroInput { dmu_id } => write!(f, "zero total staff-years for '{dmu_id}'"),
            Violation::SdsMismatch {
                dmu_id,
                expected,
                found,
            } => write!(
                f,
                "'{dmu_id}' belongs to SDS '{found}' but was placed in '{expected}'"
            ),
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid dataset {sds_id}: {}", join_violations(.violations))]
    Validation {
        sds_id: String,
        violations: Vec<Violation>,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no median for year {year}, category '{category}'")]
    MissingMedian { year: i32, category: String },

    #[error("zero median divisor for year {year}, categories [{}], and no reference mean to fall back on", .categories.join(", "))]
    ZeroMedian { year: i32, categories: Vec<String> },

    #[error("{}:{line}: {message}", .path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("referential integrity: {message}: {}", .keys.join(", "))]
    Integrity { message: String, keys: Vec<String> },

    #[error("nothing to assess: {0}")]
    Empty(String),

    #[error("percentile rank undefined: {0}")]
    UndefinedRank(String),

    #[error("internal consistency: {0}")]
    Inconsistent(String),

    #[error("solver failed for {context}: {source}")]
    Solver {
        context: String,
        #[source]
        source: LpError,
    },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for the CLI: 1 data error, 2 solver error, 3 I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Solver { .. } | Error::Inconsistent(_) => 2,
            Error::Io { .. } => 3,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
