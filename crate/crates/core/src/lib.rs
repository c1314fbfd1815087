//! Exact counting of all 2-, 3- and 4-node induced graphlets.
//!
//! The census visits each edge once, enumerates only triangles, 2-stars,
//! 4-cliques and 4-cycles around it, and derives every other count from
//! combinatorial identities. See [`census::graphlet_census`].

pub mod analytics;
pub mod census;
pub mod generators;
pub mod graph;
pub mod json;
pub mod oracle;
pub mod parallel;

pub use census::{graphlet_census, GraphletClass, GraphletFrequencies};
pub use graph::{load_edge_list, EdgeRef, Graph, GraphError, ParseOptions};
pub use parallel::ParallelConfig;
