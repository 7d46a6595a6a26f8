use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("accuracy target missed: partial sum {partial:e}, error bound {bound:e}")]
    Accuracy { partial: f64, bound: f64 },
    #[error("invalid state: {0}")]
    State(String),
    #[error("invalid data: {0}")]
    Data(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("parameter regime not satisfied: {0}")]
    Regime(String),
    #[error("nonlinear solve failed after {iterations} iterations (residual {residual:e}): {reason}")]
    NonlinearSolve {
        iterations: usize,
        residual: f64,
        reason: String,
    },
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("stability monitor breach at t = {t}: ratio {ratio:e} exceeds limit; try dt <= {advisory_dt:e}")]
    Stability { t: f64, ratio: f64, advisory_dt: f64 },
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
