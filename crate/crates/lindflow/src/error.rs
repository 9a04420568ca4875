use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("dimension mismatch: expected {expected}, got {got}{}", context_suffix(.context))]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("basis corrupt: {0}")]
    BasisCorrupt(String),

    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("Bloch vector norm {0} exceeds 1")]
    BlochNormTooLarge(f64),

    #[error("scalar expected to be real has imaginary residue {0:.3e}")]
    ImaginaryResidue(f64),

    #[error("matrix is singular or ill-conditioned: {0}")]
    Singular(String),

    #[error("Schur decomposition failed: {0}")]
    SchurFailure(String),

    #[error("Riccati solve inapplicable: {0}")]
    RiccatiInapplicable(String),

    #[error("steady state of a singular generator requires an initial state")]
    SteadyStateNeedsInitial,

    #[error("analytic formula inapplicable: {0}")]
    AnalyticInapplicable(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("command `{command}` failed: {source}")]
    Command {
        command: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" ({context})")
    }
}

pub type Result<T> = std::result::Result<T, Error>;
