use thiserror::Error;
use xychain_oracle::error::OracleError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Model(#[from] xychain::Error),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_ACCURACY: u8 = 3;
pub const EXIT_SIZE_LIMIT: u8 = 4;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use xychain::Error as E;
        match self {
            CliError::Validation(_) | CliError::Pool(_) => EXIT_VALIDATION,
            CliError::Model(e) => match e {
                E::SizeLimit { .. } => EXIT_SIZE_LIMIT,
                E::InvalidSize { .. }
                | E::InvalidParameter { .. }
                | E::Domain(_)
                | E::DegenerateLine
                | E::UnknownState(_) => EXIT_VALIDATION,
                E::Accuracy { .. }
                | E::DegenerateOverlap
                | E::Asymmetry { .. }
                | E::Fit(_)
                | E::NonUnimodal { .. } => EXIT_ACCURACY,
            },
            CliError::Oracle(e) => match e {
                OracleError::SizeLimit { .. } => EXIT_SIZE_LIMIT,
                OracleError::InvalidParameter { .. } | OracleError::Dimension { .. } => {
                    EXIT_VALIDATION
                }
                OracleError::NoConvergence { .. } => EXIT_ACCURACY,
                OracleError::Csv(_) | OracleError::Io(_) => EXIT_FAILURE,
            },
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => EXIT_FAILURE,
        }
    }
}
