//! Library half of the `negham` command-line tool: configuration, sweeps over
//! time for the quasiparticle predictor and the exact engine, method
//! comparison, the oracle suite and matrix dumps.

pub mod compare;
pub mod config;
pub mod dump;
pub mod oracle;
pub mod rows;
pub mod run;

pub use compare::{compare, CompareEntry, CompareReport, Tolerances};
pub use config::{ExactMethod, ExperimentConfig, OutputFormat, StateChoice};
pub use oracle::{dense_equivalence, run_oracle, OracleCheck, OracleReport};
pub use rows::{sort_rows, write_rows, Method, ResultRow, CSV_HEADER, VERSION};
pub use run::{exact_rows, predict_rows, resolve_workers};

use gaussian_engine::EngineError;
use negham_core::CoreError;
use oracles::OracleError;
use qp_predictor::QpError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("matrix dimension {dim} exceeds the ceiling {ceiling}")]
    Resource { dim: usize, ceiling: usize },
    #[error("{0}")]
    Tolerance(String),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl HarnessError {
    /// Process exit status: 1 usage, 2 numerical or resource, 3 tolerance.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Config { .. } | HarnessError::Invalid(_) => 1,
            HarnessError::Qp(QpError::UnequalIntervals { .. } | QpError::UnsupportedState(_)) => 1,
            HarnessError::Core(CoreError::InvalidGeometry { .. } | CoreError::InvalidAlpha(_)) => 1,
            HarnessError::Tolerance(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
