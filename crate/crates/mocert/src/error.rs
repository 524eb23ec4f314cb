//! Error type shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by certification operations.
///
/// Variants are grouped by how the command-line front end maps them to
/// exit codes: malformed inputs and violated preconditions are exit code 2,
/// numerical failures are exit code 3.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed argument: dimension mismatch, negative epsilon, bad flag.
    #[error("input error: {0}")]
    Input(String),

    /// Instance configuration is unusable (e.g. grid requested without box bounds).
    #[error("configuration error: {0}")]
    Config(String),

    /// Registry lookup failed.
    #[error("unknown instance `{name}`; registered instances: {known:?}")]
    UnknownInstance { name: String, known: Vec<String> },

    /// Candidate file rejected (bad header, unparsable number, cached value mismatch).
    #[error("ingestion error: {0}")]
    Ingestion(String),

    /// An oracle produced a non-finite value.
    #[error("evaluation error in {oracle}: {detail}")]
    Evaluation { oracle: String, detail: String },

    /// A documented operation precondition does not hold for the given data.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested quantity is undefined for the given data
    /// (e.g. a trade-off ratio whose defining inequalities fail).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical kernel failed to produce a certified answer.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// An iterative solver hit its iteration cap.
    #[error("solver did not converge: {0}")]
    Solver(String),

    /// The check does not apply to this instance (e.g. Slater check with no constraints).
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Exit code the CLI uses for this error: 2 for input-side problems,
    /// 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Evaluation { .. } | Error::Numerical(_) | Error::Solver(_) => 3,
            _ => 2,
        }
    }
}
