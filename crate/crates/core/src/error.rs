use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid class: {0}")]
    InvalidClass(String),

    #[error("{class}: polytope dimension {computed} does not match expected degree {expected}")]
    DegreeMismatch {
        class: String,
        computed: usize,
        expected: usize,
    },

    #[error("{0}: no feasible vertex found")]
    InfeasiblePolytope(String),

    #[error("{0}: vertex enumeration at this size requires allow-large")]
    LargeInstance(String),

    #[error("node budget of {budget} exceeded while counting {class} at t = {t}")]
    BudgetExceeded { class: String, t: u64, budget: u64 },

    #[error("coefficient too large for the integer counting kernel")]
    Overflow,

    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error(
        "validation mismatch for {class} at t = {t}: interpolated {predicted}, counted {counted}"
    )]
    ValidationMismatch {
        class: String,
        t: u64,
        predicted: String,
        counted: String,
    },

    #[error("sample cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
