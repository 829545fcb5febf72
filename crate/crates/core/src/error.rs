use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("polynomial is not irreducible: {0}")]
    Reducible(String),

    #[error("element {0} has a pole at the specialization point")]
    Pole(String),

    #[error("reduced norm does not descend to the center: {0}")]
    NormNotCentral(String),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("duplicate generators: {0}")]
    DuplicateGenerators(String),

    #[error("color class mismatch: {0}")]
    ColorClassMismatch(String),

    #[error("family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("memory budget exceeded: need about {needed} bytes, budget {budget} bytes ({hint})")]
    MemoryBudget {
        needed: u64,
        budget: u64,
        hint: String,
    },

    #[error("vertex limit {0} exceeded")]
    MaxVertices(usize),

    #[error("dense solver cap exceeded: {n} vertices > cap {cap}")]
    DenseCap { n: usize, cap: usize },

    #[error("counter overflow in {0}")]
    Overflow(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("checksum mismatch: stored {stored:016x}, computed {computed:016x}")]
    Checksum { stored: u64, computed: u64 },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by resource limits rather than by bad input or math.
    pub fn is_resource_abort(&self) -> bool {
        matches!(
            self,
            Error::MemoryBudget { .. } | Error::MaxVertices(_) | Error::DenseCap { .. }
        )
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
