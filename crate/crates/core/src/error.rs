use thiserror::Error;

/// Every failure the engine reports. Check failures that are part of a
/// verification report are not errors; these are refusals to compute.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("field error: {0}")]
    Field(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("degree {degree} out of range (object built to level {max_level})")]
    DegreeOutOfRange { degree: usize, max_level: usize },
    #[error("truncation-unsafe: degree {degree} needs a window of at least {needed} levels, have {max_level}")]
    TruncationUnsafe {
        degree: usize,
        needed: usize,
        max_level: usize,
    },
    #[error("not-stabilized: periodicity maps are not isomorphisms inside the window")]
    NotStabilized,
    #[error("size-budget-exceeded: ambient dimension {dim} exceeds budget {budget}")]
    SizeBudgetExceeded { dim: usize, budget: usize },
    #[error("not-semisimple: radical has dimension {0}")]
    NotSemisimple(usize),
    #[error("not-split: {0}")]
    NotSplit(String),
    #[error("no-normalized-integral: the counit vanishes on the integral space")]
    NoNormalizedIntegral,
    #[error("twist-not-automorphism: {0}")]
    TwistNotAutomorphism(String),
    #[error("p-not-central-invariant: {0}")]
    PNotCentralInvariant(String),
    #[error("not-idempotent: {0}")]
    NotIdempotent(String),
    #[error("not-invariant: {0}")]
    NotInvariant(String),
    #[error("not-invertible: {0}")]
    NotInvertible(String),
    #[error("witness-equations-fail: {0}")]
    WitnessEquationsFail(String),
    #[error("not-a-cocycle: {0}")]
    NotACocycle(String),
    #[error("H-not-semisimple")]
    HNotSemisimple,
    #[error("no-modular-group-like")]
    NoModularGroupLike,
    #[error("V-not-corepresentation: {0}")]
    VNotCorepresentation(String),
    #[error("class-not-found: {0}")]
    ClassNotFound(usize),
    #[error("decomposition-failed: {0}")]
    DecompositionFailed(String),
    #[error("no-haar-functional")]
    NoHaarFunctional,
    #[error("unknown-fixture: {0}")]
    UnknownFixture(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
