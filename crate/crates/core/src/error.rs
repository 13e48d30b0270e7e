use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular operator: {0}")]
    Singular(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix rejected: {0}")]
    NotAdmissible(String),

    #[error("ill-conditioned eigenvectors (condition number {0:.3e})")]
    IllConditioned(f64),

    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),

    #[error("preconditions failed: {}", .0.join("; "))]
    Preconditions(Vec<String>),

    #[error("d^2 != 0 on generator `{0}`")]
    NotADifferential(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("degree {requested} exceeds basis cutoff {cutoff}")]
    Cutoff { requested: usize, cutoff: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
