//! Dataset ingestion, metrics, sweeps and verification on top of the engine.

pub mod dataset;
pub mod experiment;
pub mod metrics;
pub mod verify;

pub use dataset::{
    ingest_multiplex, layer_stats, write_canonical, write_canonical_file, LayerStats, MultiplexDataset, SelectedDuplex,
    Source,
};
pub use experiment::{
    aggregate, mean_std, run_experiment, run_instance, run_sweep, AggregateRow, BenchConfig, Cell, ExperimentOutput,
    InstanceConfig, InstanceOutcome, SweepRow,
};
pub use metrics::{compute_metrics, delta_nd, optimality_gap, Algorithm, AlgorithmMetrics, AlgorithmRun, MetricsReport};
pub use verify::{verify_network, Agreement, MetaVerdict, VerifyOptions, VerifyReport};
