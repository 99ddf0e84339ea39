use thiserror::Error;

/// Errors raised by zetakit operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("failed to parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("malformed pattern: {0}")]
    MalformedPattern(String),

    #[error("index ({0}) is not admissible: the series diverges")]
    NotAdmissible(String),

    #[error("pattern {0} is not admissible: the series diverges")]
    PatternNotAdmissible(String),

    #[error("{what} = {value} is out of range ({expected})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        expected: String,
    },

    #[error("word {0} is not in H1 (must be empty or end in y)")]
    NotInH1(String),

    /// Both sides of a limit identity diverge for these parameters.
    #[error("{0}")]
    Divergent(String),

    #[error("invalid precision context: {0}")]
    Precision(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn out_of_range(what: &'static str, value: i64, expected: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        value,
        expected: expected.into(),
    }
}
