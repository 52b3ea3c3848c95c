use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode count must be at least 1")]
    ZeroModes,
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },
    #[error(
        "unphysical squeezed input: antisqueezing {antisqueezing_db} dB is below \
         the pure-state level for squeezing {squeezing_db} dB"
    )]
    Unphysical {
        squeezing_db: f64,
        antisqueezing_db: f64,
    },
    #[error("squeezing level must be <= 0 dB, got {0}")]
    SqueezingSign(f64),
    #[error("cannot tensor an empty list of states")]
    EmptyTensor,
    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("matrix is not symplectic (max deviation {deviation:.3e})")]
    NotSymplectic { deviation: f64 },
    #[error("covariance matrix is not symmetric (max deviation {deviation:.3e})")]
    NotSymmetric { deviation: f64 },
    #[error("covariance violates the uncertainty relation (min eigenvalue {min_eigenvalue:.3e})")]
    Uncertainty { min_eigenvalue: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("mode {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },
    #[error("transmissivity must lie in [0, 1], got {0}")]
    Transmissivity(f64),
    #[error("phase jitter must be non-negative, got {0}")]
    NegativeJitter(f64),
    #[error("Monte-Carlo sample count must be positive")]
    ZeroSamples,
    #[error("variance must be positive, got {0}")]
    NonPositiveVariance(f64),
    #[error("invalid network element: {0}")]
    InvalidElement(String),
    #[error("netlist line {line}: {message}")]
    Netlist { line: usize, message: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unsupported graph for the inseparability witness: {0}")]
    UnsupportedGraph(String),
    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("unknown sweep axis `{0}` (expected squeezing_db, antisqueezing_db, loss or jitter)")]
    UnknownAxis(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl ToString) -> Self {
        Error::Config {
            field: field.into(),
            message: message.to_string(),
        }
    }
}
