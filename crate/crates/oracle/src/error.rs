use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("ring length {n} is outside 2..={limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("eigensolver stalled with residual {residual:e}")]
    NoConvergence { residual: f64 },
    #[error("state has {got} amplitudes, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
