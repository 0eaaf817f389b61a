//! Frame error rate simulation, exhaustive correction guarantees and
//! reports.

mod config;
mod fer;
mod guarantee;
mod report;

pub use config::{parse_config, ConfigError};
pub use fer::{dset_stages, simulate_fer, wilson_interval, FerConfig, FerPoint, FerStage, FrameSampler};
pub use guarantee::{check_guarantee, Colex, GuaranteeMode, GuaranteeOptions, GuaranteeVerdict};
pub use report::{fer_csv, guarantee_csv, selection_csv};

use crate::codes::QcError;
use crate::faid::DecodeError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Qc(#[from] QcError),
    #[error("{count} patterns exceed the ceiling of {ceiling}")]
    Ceiling { count: u128, ceiling: u128 },
    #[error("crossover probability {0} is outside (0, 1)")]
    Alpha(f64),
    #[error("frame, error and iteration budgets must be positive")]
    ZeroBudget,
    #[error("no stages to simulate")]
    NoStages,
    #[error("stop stage {stop} out of range for {stages} stages")]
    StopStage { stop: usize, stages: usize },
    #[error("worker pool: {0}")]
    Pool(String),
    #[error("error set pattern of weight {weight} is outside 1..={t}")]
    PatternWeight { weight: usize, t: usize },
}
