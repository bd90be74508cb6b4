//! Cross-layer augmenting paths: search, validation, application and the
//! CLAP-S loop.

mod apply;
mod clap;
mod reach;
mod run;
mod search;

pub use apply::{apply_clap, DeltaReport};
pub use clap::{check_clap, verify_clap, ClapPath, Segment};
pub use reach::{alt_path, alt_reach, is_segment_origin, Reach};
pub use run::{clap_s, clap_s_with, ClapSOptions, IterationRecord, RunLog};
pub use search::{find_shortest_clap, Searcher};

pub(crate) use reach::{alt_path_with, Flood};
