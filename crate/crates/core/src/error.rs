use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("membership grade at index {index} is {value}, expected a number in [0, 1]")]
    InvalidGrade { index: usize, value: f64 },

    #[error("universe mismatch: expected size {expected}, found {found}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for a universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid universe labels: {0}")]
    InvalidLabels(String),

    #[error("crisp sets support universes of at most {max} elements, got {size}")]
    UniverseTooLarge { size: usize, max: usize },

    #[error("invalid fuzzy number: {0}")]
    InvalidFuzzyNumber(String),

    #[error("value {x} is outside the domain of the fuzzy number")]
    DomainViolation { x: f64 },

    #[error("quantifier value {value} is outside [0, 1]")]
    InvalidQuantifierValue { value: f64 },

    #[error("operation requires a non-empty universe")]
    EmptyUniverse,

    #[error("arity mismatch: expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("argument position {position} is invalid for arity {arity}")]
    InvalidArgument { position: usize, arity: usize },

    #[error("exact evaluation needs 2^{bits} kernel calls, limit is 2^{limit}")]
    SizeGuard { bits: usize, limit: usize },

    #[error("evaluator `{evaluator}` does not apply to a {kernel} kernel")]
    KernelMismatch {
        evaluator: &'static str,
        kernel: &'static str,
    },

    #[error("the limit evaluator requires a continuous fuzzy number, got {0}")]
    DiscontinuousNumber(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("no evaluator applies: {0}")]
    NoApplicableEvaluator(String),

    #[error("operation needs a quantifier of arity at least {min}, got {arity}")]
    ArityTooSmall { arity: usize, min: usize },

    #[error("truth function arity {arity} exceeds the bound {max}")]
    ArityBound { arity: usize, max: usize },

    #[error("table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },

    #[error("invalid signal: {0}")]
    InvalidSignal(String),
}
