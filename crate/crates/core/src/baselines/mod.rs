//! Reference algorithms: random sampling, greedy single segments, and exact
//! enumeration.

mod exact;
mod greedy;
mod rsu;

use serde::{Deserialize, Serialize};

use crate::matching::DriverSet;

pub use exact::{enumerate_families, enumerate_maximum_matchings, exact_min_union, MatchingFamily, OracleLimits};
pub use greedy::clap_g;
pub use rsu::{rsu, RsuConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineResult {
    pub final_union_size: usize,
    pub drivers: (DriverSet, DriverSet),
    pub elapsed_secs: f64,
    /// Samples evaluated, moves applied, or pairs compared, depending on the algorithm.
    pub work: usize,
}
