use std::path::PathBuf;

use thiserror::Error;

use crate::graph::Layer;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({tail}, {head}) has an endpoint outside 0..{n}")]
    EdgeOutOfRange {
        tail: usize,
        head: usize,
        n: usize,
    },

    #[error("layers disagree on node count ({layer1} vs {layer2})")]
    NodeCountMismatch { layer1: usize, layer2: usize },

    #[error("matching is inconsistent with its bipartite representation: {0}")]
    InvalidMatching(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("requested density is infeasible: {0}")]
    InfeasibleDensity(String),

    #[error("source {node} violates layer-{layer} segment polarity")]
    PolarityViolation { node: usize, layer: Layer },

    #[error("CLAP rejected: {0}")]
    InfeasibleClap(String),

    #[error("matching sizes differ ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("driver budgets differ: ({k1}, {k2}) vs ({other_k1}, {other_k2})")]
    BudgetMismatch {
        k1: usize,
        k2: usize,
        other_k1: usize,
        other_k2: usize,
    },

    #[error("comparator produces an odd symmetric-difference component in layer {0}")]
    OddComponent(Layer),

    #[error("oracle infeasible at this size: {0}")]
    OracleInfeasible(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("layer id `{0}` not present in dataset")]
    UnknownLayer(String),

    #[error("empty selection: {0}")]
    EmptySelection(String),

    #[error("runs do not share provenance with the initial state: {0}")]
    ProvenanceMismatch(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
