//! Minimum union driver sets for duplex directed networks.

pub mod baselines;
pub mod duplex;
pub mod engine;
pub mod error;
pub mod graph;
pub mod matching;
pub mod meta;
pub mod netgen;
pub mod seed;
pub mod workbench;

pub use baselines::{clap_g, exact_min_union, rsu, BaselineResult, OracleLimits, RsuConfig};
pub use duplex::{DuplexNetwork, DuplexState, NodeClass, PartitionSnapshot};
pub use error::{Error, Result};
pub use graph::{build_bipartite, BipartiteRep, DirectedLayer, Layer};
pub use matching::{driver_set, find_augmenting_path, max_matching, DriverSet, Matching};
pub use engine::{
    alt_path, alt_reach, apply_clap, check_clap, clap_s, clap_s_with, find_shortest_clap, verify_clap, ClapPath,
    ClapSOptions, DeltaReport, RunLog, Searcher, Segment,
};
