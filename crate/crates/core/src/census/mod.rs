//! Exact census of all 2-, 3- and 4-node induced graphlets.

mod classes;
pub mod closure;
mod engine;
mod frequencies;
pub mod local;
pub mod micro;

use thiserror::Error;

pub use classes::GraphletClass;
pub use closure::{choose, close_quads, close_triads, EdgeSums};
pub use engine::{census_from_sums, census_with_micro, graphlet_census, micro_census_all, CensusKernel, MicroKernel};
pub use frequencies::{CountsMap, GraphletFrequencies};
pub use local::{edge_local_counts, unrestricted_counts, EdgeLocalCounts, EdgeScratch, UnrestrictedCounts};
pub use micro::{micro_census, write_micro_csv, EdgeMicro, PairClass, MICRO_CSV_COLUMNS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    /// A per-edge quantity did not fit in 64 bits.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    /// A closure identity failed; the census is corrupt.
    #[error("internal consistency failure: {0}")]
    Inconsistent(&'static str),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("worker failed: {0}")]
    Worker(String),
}
