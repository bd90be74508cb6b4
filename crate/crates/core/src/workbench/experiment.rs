//! Per-instance algorithm runs and reproducible parameter sweeps.

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::baselines::{clap_g, exact_min_union, rsu, OracleLimits, RsuConfig};
use crate::duplex::{DuplexNetwork, DuplexState};
use crate::engine::{clap_s_with, ClapSOptions, RunLog};
use crate::error::{Error, Result};
use crate::matching::DriverSet;
use crate::netgen::{generate_duplex, DuplexModel, GenSpec};
use crate::seed::derive_seed;
use crate::workbench::metrics::{compute_metrics, Algorithm, AlgorithmRun, MetricsReport};

/// Settings shared by every algorithm on one duplex.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceConfig {
    pub algorithms: Vec<Algorithm>,
    pub rsu_k: usize,
    pub oracle: OracleLimits,
    /// Wall-clock cap per algorithm. CLAP-S stops at the cap; the others are
    /// only flagged once they exceed it.
    pub time_limit: Option<Duration>,
    pub seed: u64,
    /// Debug aid: stop CLAP-S after this many applied CLAPs.
    pub max_iterations: Option<usize>,
}

impl Default for InstanceConfig {
    fn default() -> Self {
        InstanceConfig {
            algorithms: vec![Algorithm::ClapS, Algorithm::ClapG, Algorithm::Rsu],
            rsu_k: 20,
            oracle: OracleLimits::default(),
            time_limit: Some(Duration::from_secs(500)),
            seed: 0,
            max_iterations: None,
        }
    }
}

/// Everything one instance produced.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceOutcome {
    pub report: MetricsReport,
    pub runs: Vec<AlgorithmRun>,
    /// Final driver sets per algorithm, in run order.
    pub drivers: Vec<(Algorithm, DriverSet, DriverSet)>,
    pub clap_s_log: Option<RunLog>,
    /// Algorithms that failed, with the reason.
    pub errors: Vec<(Algorithm, String)>,
}

impl InstanceOutcome {
    pub fn union(&self, algorithm: Algorithm) -> Option<usize> {
        self.runs.iter().find(|r| r.algorithm == algorithm).map(|r| r.final_union)
    }

    pub fn time(&self, algorithm: Algorithm) -> Option<f64> {
        self.runs.iter().find(|r| r.algorithm == algorithm).map(|r| r.elapsed_secs)
    }
}

/// Runs the requested algorithms on `net`. All of them start from the same
/// deterministic initial state, so `|U|₀` is shared. An algorithm that fails
/// (e.g. the oracle over its cap) is recorded in `errors` and skipped.
pub fn run_instance(net: &DuplexNetwork, cfg: &InstanceConfig) -> Result<InstanceOutcome> {
    let initial = DuplexState::init(net, None);
    let fingerprint = net.fingerprint();
    let over = |secs: f64| cfg.time_limit.is_some_and(|t| secs > t.as_secs_f64());
    let mut runs = Vec::new();
    let mut drivers = Vec::new();
    let mut errors = Vec::new();
    let mut clap_s_log = None;
    for &algorithm in &cfg.algorithms {
        let mut run = AlgorithmRun {
            algorithm,
            final_union: 0,
            elapsed_secs: 0.0,
            network: fingerprint,
            seed: None,
            mean_clap_length: None,
            iterations: None,
            timed_out: false,
        };
        match algorithm {
            Algorithm::ClapS => {
                let mut state = initial.clone();
                let opts = ClapSOptions {
                    max_iterations: cfg.max_iterations,
                    time_limit: cfg.time_limit,
                };
                let start = Instant::now();
                let log = clap_s_with(&mut state, opts);
                run.elapsed_secs = start.elapsed().as_secs_f64();
                run.final_union = log.final_union;
                run.mean_clap_length = Some(log.mean_clap_length());
                run.iterations = Some(log.iterations.len());
                run.timed_out = log.timed_out;
                drivers.push((algorithm, state.drivers(crate::Layer::One), state.drivers(crate::Layer::Two)));
                clap_s_log = Some(log);
            }
            Algorithm::ClapG => {
                let mut state = initial.clone();
                let start = Instant::now();
                let res = clap_g(&mut state);
                run.elapsed_secs = start.elapsed().as_secs_f64();
                run.final_union = res.final_union_size;
                run.iterations = Some(res.work);
                run.timed_out = over(run.elapsed_secs);
                drivers.push((algorithm, res.drivers.0, res.drivers.1));
            }
            Algorithm::Rsu => {
                let rsu_cfg = RsuConfig {
                    samples_per_layer: cfg.rsu_k,
                    seed: cfg.seed,
                };
                let start = Instant::now();
                let res = rsu(net, rsu_cfg);
                run.elapsed_secs = start.elapsed().as_secs_f64();
                match res {
                    Ok(res) => {
                        run.final_union = res.final_union_size;
                        run.seed = Some(cfg.seed);
                        run.timed_out = over(run.elapsed_secs);
                        drivers.push((algorithm, res.drivers.0, res.drivers.1));
                    }
                    Err(e) => {
                        errors.push((algorithm, e.to_string()));
                        continue;
                    }
                }
            }
            Algorithm::Exact => {
                let start = Instant::now();
                let res = exact_min_union(net, cfg.oracle);
                run.elapsed_secs = start.elapsed().as_secs_f64();
                match res {
                    Ok(res) => {
                        run.final_union = res.final_union_size;
                        run.timed_out = over(run.elapsed_secs);
                        drivers.push((algorithm, res.drivers.0, res.drivers.1));
                    }
                    Err(e) => {
                        errors.push((algorithm, e.to_string()));
                        continue;
                    }
                }
            }
        }
        runs.push(run);
    }
    let report = compute_metrics(&runs, &initial)?;
    Ok(InstanceOutcome {
        report,
        runs,
        drivers,
        clap_s_log,
        errors,
    })
}

fn default_rsu_k() -> usize {
    20
}

fn default_time_limit() -> f64 {
    500.0
}

fn default_oracle_cap() -> u64 {
    OracleLimits::default().max_matchings_per_layer
}

fn default_algorithms() -> Vec<Algorithm> {
    vec![Algorithm::ClapS, Algorithm::ClapG, Algorithm::Rsu]
}

/// Sweep description, usually read from TOML.
///
/// ```toml
/// master_seed = 7
/// repetitions = 10
/// n = [1000]
/// models = ["ER-ER", "BA-BA"]
/// avg_degrees = [2.0, 4.0, 8.0]
/// overlaps = []          # empty: independent layers
/// algorithms = ["clap-s", "clap-g", "rsu"]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub master_seed: u64,
    pub repetitions: usize,
    pub n: Vec<usize>,
    pub models: Vec<DuplexModel>,
    pub avg_degrees: Vec<f64>,
    #[serde(default)]
    pub overlaps: Vec<f64>,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_rsu_k")]
    pub rsu_k: usize,
    #[serde(default = "default_time_limit")]
    pub time_limit_secs: f64,
    /// Worker threads; 0 uses one per core.
    #[serde(default)]
    pub threads: usize,
    #[serde(default = "default_oracle_cap")]
    pub oracle_cap: u64,
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> Result<BenchConfig> {
        let cfg: BenchConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: &Path) -> Result<BenchConfig> {
        BenchConfig::from_toml(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.algorithms.is_empty() {
            return bad("no algorithms selected");
        }
        if self.rsu_k == 0 {
            return bad("rsu_k must be ≥ 1");
        }
        if !self.time_limit_secs.is_finite() || self.time_limit_secs <= 0.0 {
            return bad("time_limit_secs must be finite and positive");
        }
        if self.overlaps.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return bad("overlaps must lie in [0, 1]");
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(json))
    }

    /// Cells in model × n × ⟨k⟩ × ρ order.
    pub fn cells(&self) -> Vec<Cell> {
        let overlaps: Vec<Option<f64>> = if self.overlaps.is_empty() {
            vec![None]
        } else {
            self.overlaps.iter().copied().map(Some).collect()
        };
        let mut out = Vec::new();
        for &model in &self.models {
            for &n in &self.n {
                for &avg_degree in &self.avg_degrees {
                    for &overlap in &overlaps {
                        out.push(Cell {
                            index: out.len(),
                            model,
                            n,
                            avg_degree,
                            overlap,
                        });
                    }
                }
            }
        }
        out
    }

    fn instance_config(&self, seed: u64) -> InstanceConfig {
        InstanceConfig {
            algorithms: self.algorithms.clone(),
            rsu_k: self.rsu_k,
            oracle: OracleLimits {
                max_matchings_per_layer: self.oracle_cap,
                max_pairs: self.oracle_cap,
            },
            time_limit: Some(Duration::from_secs_f64(self.time_limit_secs)),
            seed,
            max_iterations: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub index: usize,
    pub model: DuplexModel,
    pub n: usize,
    pub avg_degree: f64,
    pub overlap: Option<f64>,
}

/// One CSV row per cell × repetition. Columns starting with `t_` are timings;
/// every other column is reproducible from the config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub config_hash: String,
    pub cell: usize,
    pub rep: usize,
    pub model: DuplexModel,
    pub n: usize,
    pub avg_degree: f64,
    pub overlap: Option<f64>,
    pub seed: u64,
    pub jaccard: Option<f64>,
    pub edges_1: Option<usize>,
    pub edges_2: Option<usize>,
    pub k1: Option<usize>,
    pub k2: Option<usize>,
    pub initial_union: Option<usize>,
    pub initial_difference: Option<usize>,
    pub u_clap_s: Option<usize>,
    pub u_clap_g: Option<usize>,
    pub u_rsu: Option<usize>,
    pub u_exact: Option<usize>,
    pub delta_nd_clap_s: Option<i64>,
    pub delta_nd_opt: Option<i64>,
    pub r_opt: Option<f64>,
    pub h_bar: Option<f64>,
    pub clap_iterations: Option<usize>,
    pub t_clap_s: Option<f64>,
    pub t_clap_g: Option<f64>,
    pub t_rsu: Option<f64>,
    pub t_exact: Option<f64>,
    pub timed_out: bool,
    pub status: String,
    pub error: String,
}

impl SweepRow {
    fn skeleton(hash: &str, cell: &Cell, rep: usize, seed: u64) -> SweepRow {
        SweepRow {
            config_hash: hash.to_string(),
            cell: cell.index,
            rep,
            model: cell.model,
            n: cell.n,
            avg_degree: cell.avg_degree,
            overlap: cell.overlap,
            seed,
            jaccard: None,
            edges_1: None,
            edges_2: None,
            k1: None,
            k2: None,
            initial_union: None,
            initial_difference: None,
            u_clap_s: None,
            u_clap_g: None,
            u_rsu: None,
            u_exact: None,
            delta_nd_clap_s: None,
            delta_nd_opt: None,
            r_opt: None,
            h_bar: None,
            clap_iterations: None,
            t_clap_s: None,
            t_clap_g: None,
            t_rsu: None,
            t_exact: None,
            timed_out: false,
            status: "ok".into(),
            error: String::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    /// Copy with timing columns cleared, for determinism checks.
    pub fn without_timings(&self) -> SweepRow {
        SweepRow {
            t_clap_s: None,
            t_clap_g: None,
            t_rsu: None,
            t_exact: None,
            ..self.clone()
        }
    }
}

fn run_cell(cfg: &BenchConfig, hash: &str, cell: &Cell, rep: usize) -> SweepRow {
    let seed = derive_seed(cfg.master_seed, cell.index as u64, rep as u64);
    let mut row = SweepRow::skeleton(hash, cell, rep, seed);
    let spec = GenSpec {
        model: cell.model,
        n: cell.n,
        avg_degree: cell.avg_degree,
        overlap: cell.overlap,
        seed,
    };
    let generated = match generate_duplex(&spec) {
        Ok(g) => g,
        Err(e) => {
            row.status = "failed".into();
            row.error = e.to_string();
            return row;
        }
    };
    let net = &generated.net;
    row.jaccard = Some(generated.jaccard);
    row.edges_1 = Some(net.layer(crate::Layer::One).edge_count());
    row.edges_2 = Some(net.layer(crate::Layer::Two).edge_count());
    let outcome = match run_instance(net, &cfg.instance_config(derive_seed(seed, 0x5253, 0))) {
        Ok(o) => o,
        Err(e) => {
            row.status = "failed".into();
            row.error = e.to_string();
            return row;
        }
    };
    let r = &outcome.report;
    row.k1 = Some(r.budgets.0);
    row.k2 = Some(r.budgets.1);
    row.initial_union = Some(r.initial_union);
    row.initial_difference = Some(r.initial_difference);
    row.u_clap_s = outcome.union(Algorithm::ClapS);
    row.u_clap_g = outcome.union(Algorithm::ClapG);
    row.u_rsu = outcome.union(Algorithm::Rsu);
    row.u_exact = outcome.union(Algorithm::Exact);
    row.delta_nd_clap_s = r.get(Algorithm::ClapS).map(|m| m.delta_nd);
    row.delta_nd_opt = r.delta_nd_opt;
    row.r_opt = r.r_opt;
    if let Some(log) = &outcome.clap_s_log {
        row.h_bar = (!log.iterations.is_empty()).then(|| log.mean_clap_length());
        row.clap_iterations = Some(log.iterations.len());
    }
    row.t_clap_s = outcome.time(Algorithm::ClapS);
    row.t_clap_g = outcome.time(Algorithm::ClapG);
    row.t_rsu = outcome.time(Algorithm::Rsu);
    row.t_exact = outcome.time(Algorithm::Exact);
    row.timed_out = outcome.runs.iter().any(|r| r.timed_out);
    if !outcome.errors.is_empty() {
        row.status = "partial".into();
        row.error = outcome
            .errors
            .iter()
            .map(|(a, e)| format!("{a}: {e}"))
            .collect::<Vec<_>>()
            .join("; ");
    }
    row
}

/// Runs every cell × repetition. Failures become rows with a non-`ok` status;
/// the sweep itself only errors on pool setup.
pub fn run_sweep(cfg: &BenchConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let hash = cfg.hash();
    let jobs: Vec<(Cell, usize)> = cfg
        .cells()
        .into_iter()
        .flat_map(|c| (0..cfg.repetitions).map(move |rep| (c, rep)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    Ok(pool.install(|| jobs.par_iter().map(|(c, rep)| run_cell(cfg, &hash, c, *rep)).collect()))
}

/// Mean and sample standard deviation of one column within one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub config_hash: String,
    pub cell: usize,
    pub model: DuplexModel,
    pub n: usize,
    pub avg_degree: f64,
    pub overlap: Option<f64>,
    pub metric: String,
    pub count: usize,
    pub mean: f64,
    pub std: f64,
}

/// `(mean, sample std)`; the std is 0 for fewer than two values.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

type Column = (&'static str, fn(&SweepRow) -> Option<f64>);

const AGGREGATED: [Column; 12] = [
    ("initial_union", |r| r.initial_union.map(|v| v as f64)),
    ("initial_difference", |r| r.initial_difference.map(|v| v as f64)),
    ("u_clap_s", |r| r.u_clap_s.map(|v| v as f64)),
    ("u_clap_g", |r| r.u_clap_g.map(|v| v as f64)),
    ("u_rsu", |r| r.u_rsu.map(|v| v as f64)),
    ("u_exact", |r| r.u_exact.map(|v| v as f64)),
    ("delta_nd_clap_s", |r| r.delta_nd_clap_s.map(|v| v as f64)),
    ("delta_nd_opt", |r| r.delta_nd_opt.map(|v| v as f64)),
    ("r_opt", |r| r.r_opt),
    ("h_bar", |r| r.h_bar),
    ("t_clap_s", |r| r.t_clap_s),
    ("t_rsu", |r| r.t_rsu),
];

/// Per-cell aggregates over successful rows, in cell then column order.
/// Columns with no values in a cell are omitted.
pub fn aggregate(rows: &[SweepRow]) -> Vec<AggregateRow> {
    let mut cells: Vec<usize> = rows.iter().map(|r| r.cell).collect();
    cells.sort_unstable();
    cells.dedup();
    let mut out = Vec::new();
    for cell in cells {
        let in_cell: Vec<&SweepRow> = rows.iter().filter(|r| r.cell == cell && r.status != "failed").collect();
        let Some(first) = in_cell.first() else { continue };
        for (name, get) in AGGREGATED {
            let xs: Vec<f64> = in_cell.iter().filter_map(|r| get(r)).collect();
            if xs.is_empty() {
                continue;
            }
            let (mean, std) = mean_std(&xs);
            out.push(AggregateRow {
                config_hash: first.config_hash.clone(),
                cell,
                model: first.model,
                n: first.n,
                avg_degree: first.avg_degree,
                overlap: first.overlap,
                metric: name.to_string(),
                count: xs.len(),
                mean,
                std,
            });
        }
    }
    out
}

/// Writes rows with a header even when `rows` is empty.
fn write_csv<T: Serialize>(path: &Path, header: &[&str], rows: &[T]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub const SWEEP_HEADER: [&str; 31] = [
    "config_hash",
    "cell",
    "rep",
    "model",
    "n",
    "avg_degree",
    "overlap",
    "seed",
    "jaccard",
    "edges_1",
    "edges_2",
    "k1",
    "k2",
    "initial_union",
    "initial_difference",
    "u_clap_s",
    "u_clap_g",
    "u_rsu",
    "u_exact",
    "delta_nd_clap_s",
    "delta_nd_opt",
    "r_opt",
    "h_bar",
    "clap_iterations",
    "t_clap_s",
    "t_clap_g",
    "t_rsu",
    "t_exact",
    "timed_out",
    "status",
    "error",
];

pub const SUMMARY_HEADER: [&str; 10] = [
    "config_hash",
    "cell",
    "model",
    "n",
    "avg_degree",
    "overlap",
    "metric",
    "count",
    "mean",
    "std",
];

/// Result of [`run_experiment`].
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub rows: Vec<SweepRow>,
    pub summary: Vec<AggregateRow>,
    pub failed: usize,
}

/// Runs the sweep and writes `sweep.csv`, `summary.csv` and `config.json`
/// (config echo plus hash) into `out_dir`.
pub fn run_experiment(cfg: &BenchConfig, out_dir: &Path) -> Result<ExperimentOutput> {
    let rows = run_sweep(cfg)?;
    let summary = aggregate(&rows);
    fs::create_dir_all(out_dir)?;
    write_csv(&out_dir.join("sweep.csv"), &SWEEP_HEADER, &rows)?;
    write_csv(&out_dir.join("summary.csv"), &SUMMARY_HEADER, &summary)?;
    let echo = serde_json::json!({ "config_hash": cfg.hash(), "config": cfg });
    fs::write(out_dir.join("config.json"), serde_json::to_string_pretty(&echo)?)?;
    let failed = rows.iter().filter(|r| !r.is_ok()).count();
    Ok(ExperimentOutput { rows, summary, failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(reps: usize) -> BenchConfig {
        BenchConfig::from_toml(&format!(
            "master_seed = 11\nrepetitions = {reps}\nn = [40]\nmodels = [\"ER-ER\", \"BA-BA\"]\navg_degrees = [2.0, 3.0]\nalgorithms = [\"clap-s\", \"clap-g\", \"rsu\"]\nthreads = 2\n"
        ))
        .unwrap()
    }

    #[test]
    fn header_matches_row_fields() {
        let cfg = small(1);
        let row = run_sweep(&cfg).unwrap().remove(0);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(&row).unwrap();
        let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
        assert_eq!(text.lines().next().unwrap(), SWEEP_HEADER.join(","));
    }

    #[test]
    fn zero_repetitions_give_header_only_files() {
        let dir = tempfile::tempdir().unwrap();
        let out = run_experiment(&small(0), dir.path()).unwrap();
        assert!(out.rows.is_empty());
        let sweep = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
        assert_eq!(sweep.lines().count(), 1);
        let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
        assert_eq!(summary.lines().count(), 1);
    }

    #[test]
    fn rows_per_cell_and_aggregates() {
        let cfg = small(3);
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 4 * 3);
        assert!(rows.iter().all(SweepRow::is_ok));
        let summary = aggregate(&rows);
        let mean_u = summary.iter().find(|a| a.cell == 0 && a.metric == "u_clap_s").unwrap();
        assert_eq!(mean_u.count, 3);
        let direct: f64 = rows.iter().filter(|r| r.cell == 0).map(|r| r.u_clap_s.unwrap() as f64).sum::<f64>() / 3.0;
        assert!((mean_u.mean - direct).abs() < 1e-12);
    }

    #[test]
    fn reruns_agree_modulo_timings() {
        let cfg = small(2);
        let a: Vec<SweepRow> = run_sweep(&cfg).unwrap().iter().map(SweepRow::without_timings).collect();
        let b: Vec<SweepRow> = run_sweep(&BenchConfig { threads: 1, ..cfg.clone() })
            .unwrap()
            .iter()
            .map(SweepRow::without_timings)
            .collect();
        // The thread count is part of the config hash, so compare the rest.
        let strip = |rows: Vec<SweepRow>| rows.into_iter().map(|r| SweepRow { config_hash: String::new(), ..r }).collect::<Vec<_>>();
        assert_eq!(strip(a), strip(b));
    }

    #[test]
    fn infeasible_cell_is_recorded_and_the_sweep_continues() {
        let mut cfg = small(1);
        cfg.n = vec![3];
        cfg.avg_degrees = vec![1.0, 50.0];
        let rows = run_sweep(&cfg).unwrap();
        assert!(rows.iter().any(|r| r.status == "failed" && !r.error.is_empty()));
        assert!(rows.iter().any(SweepRow::is_ok));
    }

    #[test]
    fn oracle_over_cap_is_partial() {
        let mut cfg = small(1);
        cfg.algorithms = vec![Algorithm::ClapS, Algorithm::Exact];
        cfg.oracle_cap = 1;
        let rows = run_sweep(&cfg).unwrap();
        assert!(rows.iter().any(|r| r.status == "partial" && r.u_exact.is_none()));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(
            BenchConfig::from_toml("master_seed = 1\nrepetitions = 1\nn = [5]\nmodels = [\"ER-ER\"]\navg_degrees = [1.0]\nbogus = 3\n"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn mean_std_reference() {
        let (m, s) = mean_std(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]);
        assert_eq!(m, 5.0);
        assert!((s - 2.138_089_935).abs() < 1e-9);
    }
}
