use thiserror::Error;

/// Errors surfaced by the simulation kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("time step stability bound violated: dt = {dt:.3e} exceeds {bound:.3e}")]
    StabilityViolation { dt: f64, bound: f64 },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("time {t} outside stored trajectory range [{t0}, {t1}]")]
    TimeOutOfRange { t: f64, t0: f64, t1: f64 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
