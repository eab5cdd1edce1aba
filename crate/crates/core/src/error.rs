use thiserror::Error;

/// Errors raised while parsing or validating datasets.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {msg}")]
    MalformedHeader { line: usize, msg: String },
    #[error("line {line}: unknown attribute type `{kind}`")]
    UnknownAttributeType { line: usize, kind: String },
    #[error("line {line}: expected {expected} values, found {found}")]
    Arity { line: usize, expected: usize, found: usize },
    #[error("line {line}: missing value in column {column}")]
    MissingValue { line: usize, column: usize },
    #[error("line {line}: non-numeric value `{value}` in numeric column {column}")]
    NonNumeric { line: usize, column: usize, value: String },
    #[error("line {line}: value `{value}` not in the declared nominal set")]
    UndeclaredNominal { line: usize, value: String },
    #[error("line {line}: more than two classes (`{label}` is the third)")]
    TooManyClasses { line: usize, label: String },
    #[error("fewer than two classes present")]
    TooFewClasses,
    #[error("label column `{0}` not found")]
    MissingLabelColumn(String),
    #[error("no data rows")]
    Empty,
    #[error("{0}")]
    Csv(String),
}

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("distances must be non-negative and sorted ascending")]
    UnsortedDistances,
    #[error("zero radius for minority observation {0}")]
    ZeroRadius(usize),
    #[error("class too small: {class} has {count} members, need {needed}")]
    ClassTooSmall { class: String, count: usize, needed: usize },
    #[error("empty {0} class")]
    EmptyClass(&'static str),
    #[error("training data contains a single class")]
    SingleClass,
    #[error("data is not standardized; standardize it or set the force flag")]
    NotStandardized,
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
