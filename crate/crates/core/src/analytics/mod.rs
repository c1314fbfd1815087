//! Graph-level and edge-level analytics built on the census.

mod features;
mod gfd;
mod ranking;
mod selection;

use thiserror::Error;

use crate::census::CensusError;
use crate::graph::GraphError;

pub use features::{feature_matrix, feature_vector, FeatureFailure, FeatureMatrix, FeatureOptions, FeatureRow};
pub use gfd::{gfd, gfd_distance, DistanceMetric, GfdScope, GfdVector};
pub use ranking::{edge_weight, edge_weights, rank_edges, rank_from_micro, write_ranking_csv, EdgePattern, RankedEdge};
pub use selection::{SelectionOp, SelectionState, SelectionUpdate};

#[derive(Debug, Error)]
pub enum AnalyticsError {
    #[error("k must be 3 or 4, got {0}")]
    InvalidK(usize),
    #[error("cannot compare GFD vectors with different k or scope")]
    Mismatch,
    #[error("{0}")]
    Unknown(String),
    #[error("invalid selection op: {0}")]
    InvalidOp(String),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
