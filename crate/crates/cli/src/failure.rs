use std::fmt;

/// Exit code for malformed input files and invalid field values.
pub const EXIT_PARSE: u8 = 2;
/// Exit code when an instance exceeds an evaluator's size guard.
pub const EXIT_SIZE_GUARD: u8 = 3;
/// Exit code when the requested evaluator does not apply to the quantifier.
pub const EXIT_EVALUATOR_MISMATCH: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    pub fn other(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<probquant::Error> for Failure {
    fn from(e: probquant::Error) -> Self {
        use probquant::Error::*;
        let code = match e {
            SizeGuard { .. } | UniverseTooLarge { .. } | NoApplicableEvaluator(_) => EXIT_SIZE_GUARD,
            KernelMismatch { .. } | DiscontinuousNumber(_) => EXIT_EVALUATOR_MISMATCH,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::other(e.to_string())
    }
}
