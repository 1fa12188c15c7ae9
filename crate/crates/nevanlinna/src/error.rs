use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] defect_forge_core::Error),
    /// `D(f)` vanishes identically.
    #[error("curve lies on divisor {index}: {divisor}")]
    CurveOnDivisor { index: usize, divisor: String },
    #[error("zero finder gave up: {reason}; unresolved cells: {cells}")]
    Unresolved { reason: String, cells: String },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Core(defect_forge_core::Error::invalid(msg))
    }
}
