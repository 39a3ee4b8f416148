use thiserror::Error;

/// Errors raised by set constructors, the sumset engine, the closed-form
/// size formulas, and the exhaustive searches.
///
/// Every variant names the violated precondition so that callers (the CLI
/// in particular) can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("modulus {m} exceeds the configured cap {max} (rebuild with ZMSET_MAX_MODULUS to raise it)")]
    ModulusTooLarge { m: u64, max: u64 },

    #[error("{d} is not a divisor of {m}")]
    NotADivisor { d: u64, m: u64 },

    #[error("requested size {k} exceeds modulus {m}")]
    SizeExceedsModulus { k: u64, m: u64 },

    #[error("{u} is not a unit modulo {m}")]
    NotAUnit { u: u64, m: u64 },

    #[error("{op}: input set must be non-empty")]
    EmptySet { op: &'static str },

    #[error("ambient mismatch: modulus {left} vs modulus {right}")]
    AmbientMismatch { left: u64, right: u64 },

    #[error("{op}: requires {requirement}")]
    Hypothesis { op: &'static str, requirement: String },

    #[error("{op}: {n} is not prime")]
    NotPrime { op: &'static str, n: u64 },

    #[error("{op}: scale guard exceeded ({detail}); set {}=1 to override", crate::SCALE_OVERRIDE_ENV)]
    ScaleGuard { op: &'static str, detail: String },

    #[error("integer overflow in {op}")]
    Overflow { op: &'static str },
}

impl Error {
    pub(crate) fn hypothesis(op: &'static str, requirement: impl Into<String>) -> Self {
        Error::Hypothesis {
            op,
            requirement: requirement.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
