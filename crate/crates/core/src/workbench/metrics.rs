//! Reduction and optimality-gap metrics over algorithm runs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::duplex::DuplexState;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    ClapS,
    ClapG,
    Rsu,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::ClapS, Algorithm::ClapG, Algorithm::Rsu, Algorithm::Exact];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ClapS => "clap-s",
            Algorithm::ClapG => "clap-g",
            Algorithm::Rsu => "rsu",
            Algorithm::Exact => "exact",
        }
    }

    pub fn parse(s: &str) -> Result<Algorithm> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == key || (key == "ilp" && *a == Algorithm::Exact))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm `{s}`")))
    }

    /// Comma-separated list, e.g. `clap-s,rsu`.
    pub fn parse_list(s: &str) -> Result<Vec<Algorithm>> {
        let mut out: Vec<Algorithm> = s.split(',').filter(|t| !t.trim().is_empty()).map(Algorithm::parse).collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Final figures of one algorithm on one duplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmRun {
    pub algorithm: Algorithm,
    pub final_union: usize,
    pub elapsed_secs: f64,
    /// Fingerprint of the duplex the run was made on.
    pub network: u64,
    pub seed: Option<u64>,
    /// `h̄`, for CLAP-S.
    pub mean_clap_length: Option<f64>,
    pub iterations: Option<usize>,
    pub timed_out: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmMetrics {
    pub algorithm: Algorithm,
    pub final_union: usize,
    /// `|U|₀ − |U|_A`.
    pub delta_nd: i64,
    pub elapsed_secs: f64,
    pub mean_clap_length: Option<f64>,
    pub iterations: Option<usize>,
    pub timed_out: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub network: u64,
    pub budgets: (usize, usize),
    pub initial_union: usize,
    /// `|DD₁ ∪ DD₂|` of the initial state.
    pub initial_difference: usize,
    pub results: Vec<AlgorithmMetrics>,
    /// `|U|_RSU − |U|_CLAP-S`, when both ran.
    pub delta_nd_opt: Option<i64>,
    /// `100 · ΔN_D^opt / |U|_RSU`; absent when either run is missing or `|U|_RSU = 0`.
    pub r_opt: Option<f64>,
    pub r_opt_undefined: bool,
}

/// `|U|₀ − |U|_A`.
pub fn delta_nd(initial_union: usize, final_union: usize) -> i64 {
    initial_union as i64 - final_union as i64
}

/// `(ΔN_D^opt, R_opt)` from the RSU and CLAP-S unions; `R_opt` is `None` when `|U|_RSU = 0`.
pub fn optimality_gap(u_rsu: usize, u_clap_s: usize) -> (i64, Option<f64>) {
    let gap = u_rsu as i64 - u_clap_s as i64;
    let ratio = (u_rsu != 0).then(|| 100.0 * gap as f64 / u_rsu as f64);
    (gap, ratio)
}

impl MetricsReport {
    pub fn get(&self, algorithm: Algorithm) -> Option<&AlgorithmMetrics> {
        self.results.iter().find(|r| r.algorithm == algorithm)
    }

    /// Re-derives the report's identities from its own fields.
    pub fn check_identities(&self) -> std::result::Result<(), String> {
        let (k1, k2) = self.budgets;
        if 2 * self.initial_union != k1 + k2 + self.initial_difference {
            return Err("initial union does not satisfy 2|U| = k1 + k2 + Δ".into());
        }
        for r in &self.results {
            if r.delta_nd != delta_nd(self.initial_union, r.final_union) {
                return Err(format!("{} reduction is inconsistent", r.algorithm));
            }
        }
        if let (Some(s), Some(r), Some(gap)) = (self.get(Algorithm::ClapS), self.get(Algorithm::Rsu), self.delta_nd_opt) {
            if gap != s.delta_nd - r.delta_nd {
                return Err("optimality gap differs from the reduction difference".into());
            }
        }
        Ok(())
    }
}

/// Combines per-algorithm runs against the shared initial state.
pub fn compute_metrics(runs: &[AlgorithmRun], initial: &DuplexState<'_>) -> Result<MetricsReport> {
    let network = initial.network().fingerprint();
    if let Some(bad) = runs.iter().find(|r| r.network != network) {
        return Err(Error::ProvenanceMismatch(format!(
            "{} ran on network {:016x}, initial state is on {network:016x}",
            bad.algorithm, bad.network
        )));
    }
    let initial_union = initial.union_size();
    let results: Vec<AlgorithmMetrics> = runs
        .iter()
        .map(|r| AlgorithmMetrics {
            algorithm: r.algorithm,
            final_union: r.final_union,
            delta_nd: delta_nd(initial_union, r.final_union),
            elapsed_secs: r.elapsed_secs,
            mean_clap_length: r.mean_clap_length,
            iterations: r.iterations,
            timed_out: r.timed_out,
        })
        .collect();
    let find = |a| results.iter().find(|r: &&AlgorithmMetrics| r.algorithm == a);
    let (delta_nd_opt, r_opt, r_opt_undefined) = match (find(Algorithm::Rsu), find(Algorithm::ClapS)) {
        (Some(rsu), Some(cs)) => {
            let (gap, ratio) = optimality_gap(rsu.final_union, cs.final_union);
            (Some(gap), ratio, ratio.is_none())
        }
        _ => (None, None, false),
    };
    let report = MetricsReport {
        network,
        budgets: initial.budgets(),
        initial_union,
        initial_difference: initial.difference_mass(),
        results,
        delta_nd_opt,
        r_opt,
        r_opt_undefined,
    };
    report.check_identities().map_err(Error::InvalidParameter)?;
    Ok(report)
}
