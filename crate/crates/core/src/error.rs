use thiserror::Error;

/// Errors raised by distribution, entropy, geometry and quantum operations.
///
/// Every variant maps to a stable machine-readable code via [`Error::code`],
/// which the CLI emits verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is empty: {0}")]
    EmptyInput(&'static str),

    #[error("probability at flat index {index} is {value}, outside [0, 1]")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, deviating from 1 by more than {tolerance:e}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("expected {expected} probabilities for the declared cardinalities, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },

    #[error("variable name {0:?} is duplicated")]
    DuplicateName(String),

    #[error("variable name must be non-empty")]
    EmptyName,

    #[error("variable {name:?} has cardinality 0")]
    ZeroCardinality { name: String },

    #[error("variable subset is empty")]
    EmptySubset,

    #[error("variable index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("variable index {0} appears more than once")]
    DuplicateIndex(usize),

    #[error("conditioning event has probability {0:e}, treated as zero")]
    ZeroCondition(f64),

    #[error("variable name {0:?} appears in both distributions")]
    NameCollision(String),

    #[error("sample set is empty")]
    EmptySample,

    #[error("record {record} has outcome {outcome} for a variable of cardinality {cardinality}")]
    OutOfRangeOutcome {
        record: usize,
        outcome: usize,
        cardinality: usize,
    },

    #[error("record {record} has {actual} fields, expected {expected}")]
    RecordArity {
        record: usize,
        expected: usize,
        actual: usize,
    },

    #[error("variable subsets overlap at index {0}")]
    OverlappingSubsets(usize),

    #[error("need at least 2 parts, got {0}")]
    TooFewParts(usize),

    #[error("subset has {actual} variables, operation needs at least {required}")]
    SubsetTooSmall { required: usize, actual: usize },

    #[error("distribution has {actual} variables, operation needs at least {required}")]
    TooFewVariables { required: usize, actual: usize },

    #[error("information distance needs two distinct variables, got index {0} twice")]
    SameVariable(usize),

    #[error("Heron radicand {0:e} is negative beyond the clamp window")]
    NegativeRadicand(f64),

    #[error("qubit count {n} below minimum {min}")]
    NTooSmall { n: usize, min: usize },

    #[error("qubit count {n} exceeds the dense-simulation cap of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("amplitude norm squared is {0}, expected 1")]
    NotNormalizedState(f64),

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("matrix for qubit {0} is not unitary")]
    NotUnitary(usize),

    #[error("angle out of range: {0}")]
    AngleOutOfRange(String),

    #[error("bad measurement scheme: {0}")]
    BadScheme(String),

    #[error("settings sequence is empty")]
    EmptySettings,

    #[error("bad sweep specification: {0}")]
    BadSweep(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable upper-snake-case code for machine consumption.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyInput(_) => "EMPTY_INPUT",
            Error::NegativeProbability { .. } => "NEGATIVE_PROBABILITY",
            Error::NotNormalized { .. } => "NOT_NORMALIZED",
            Error::ShapeMismatch { .. } => "SHAPE_MISMATCH",
            Error::DuplicateName(_) => "DUPLICATE_NAME",
            Error::EmptyName => "EMPTY_NAME",
            Error::ZeroCardinality { .. } => "ZERO_CARDINALITY",
            Error::EmptySubset => "EMPTY_SUBSET",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::DuplicateIndex(_) => "DUPLICATE_INDEX",
            Error::ZeroCondition(_) => "ZERO_CONDITION",
            Error::NameCollision(_) => "NAME_COLLISION",
            Error::EmptySample => "EMPTY_SAMPLE",
            Error::OutOfRangeOutcome { .. } => "OUT_OF_RANGE_OUTCOME",
            Error::RecordArity { .. } => "RECORD_ARITY",
            Error::OverlappingSubsets(_) => "OVERLAPPING_SUBSETS",
            Error::TooFewParts(_) => "TOO_FEW_PARTS",
            Error::SubsetTooSmall { .. } => "SUBSET_TOO_SMALL",
            Error::TooFewVariables { .. } => "TOO_FEW_VARIABLES",
            Error::SameVariable(_) => "SAME_VARIABLE",
            Error::NegativeRadicand(_) => "NEGATIVE_RADICAND",
            Error::NTooSmall { .. } => "N_TOO_SMALL",
            Error::TooManyQubits { .. } => "TOO_MANY_QUBITS",
            Error::NotNormalizedState(_) => "NOT_NORMALIZED",
            Error::SizeMismatch { .. } => "SIZE_MISMATCH",
            Error::NotUnitary(_) => "NOT_UNITARY",
            Error::AngleOutOfRange(_) => "ANGLE_OUT_OF_RANGE",
            Error::BadScheme(_) => "BAD_SCHEME",
            Error::EmptySettings => "EMPTY_SETTINGS",
            Error::BadSweep(_) => "BAD_SWEEP",
            Error::Parse(_) => "PARSE_ERROR",
        }
    }

    /// Coarse classification used for process exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::SubsetTooSmall { .. }
            | Error::TooFewVariables { .. }
            | Error::TooFewParts(_)
            | Error::SameVariable(_)
            | Error::DuplicateIndex(_)
            | Error::OverlappingSubsets(_)
            | Error::ZeroCondition(_)
            | Error::EmptySettings
            | Error::TooManyQubits { .. } => ErrorKind::Precondition,
            Error::NegativeRadicand(_) => ErrorKind::NumericFault,
            _ => ErrorKind::Validation,
        }
    }
}

/// Failure class: bad input, violated precondition, or an internal numeric fault.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Precondition,
    NumericFault,
}

pub type Result<T> = std::result::Result<T, Error>;
