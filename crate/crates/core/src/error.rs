use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid chain length {n}: at least {min} spins are required")]
    InvalidSize { n: usize, min: usize },

    #[error("chain length {n} exceeds the limit of {limit} for this operation")]
    SizeLimit { n: usize, limit: usize },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("overlap vanishes on the whole search interval")]
    DegenerateOverlap,

    #[error("quadrature did not reach the requested accuracy (achieved {achieved:e})")]
    Accuracy { achieved: f64 },

    #[error("{0}")]
    Domain(&'static str),

    #[error("divergence amplitudes disagree between sides: below {below:.6}, above {above:.6}")]
    Asymmetry { below: f64, above: f64 },

    #[error("least-squares fit failed: {0}")]
    Fit(&'static str),

    #[error("no unimodal bracket for the derivative peak in [{lo}, {hi}]")]
    NonUnimodal { lo: f64, hi: f64 },

    #[error("disorder line degenerates at r = 0")]
    DegenerateLine,

    #[error("unknown state {0:?}")]
    UnknownState(String),
}

pub type Result<T> = std::result::Result<T, Error>;
