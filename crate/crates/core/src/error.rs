use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("sample count mismatch: expected {expected}, found {found}")]
    SampleCount { expected: usize, found: usize },

    #[error("integration failed at step {index} (t = {time}): non-finite value")]
    Integration { index: usize, time: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("control synthesis diverges at t = {time} (|phi_{level}| = {amplitude:e})")]
    Synthesis {
        time: f64,
        level: usize,
        amplitude: f64,
    },

    #[error("virtual trajectory construction failed: {0}")]
    Construction(String),

    #[error("optimizer produced a non-finite cost at parameters {params:?}")]
    Optimizer { params: Vec<f64> },

    #[error(
        "target frequency {target} GHz at sample {index} outside achievable band [{low}, {high}] GHz"
    )]
    Infeasible {
        index: usize,
        target: f64,
        low: f64,
        high: f64,
    },
}
