//! The CLAP-S main loop.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::duplex::DuplexState;
use crate::engine::apply::apply_clap;
use crate::engine::search::Searcher;

#[derive(Debug, Clone, Copy, Default)]
pub struct ClapSOptions {
    /// Stop after this many applied CLAPs (debugging aid).
    pub max_iterations: Option<usize>,
    /// Give up once this much wall-clock time has passed.
    pub time_limit: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub clap_length: usize,
    pub delta_before: usize,
    pub delta_after: usize,
    pub union_before: usize,
    pub union_after: usize,
    pub drivers_after: (usize, usize),
    /// Seconds since the run started.
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunLog {
    pub iterations: Vec<IterationRecord>,
    /// The final search found no CLAP.
    pub clap_stable: bool,
    pub timed_out: bool,
    pub initial_union: usize,
    pub final_union: usize,
    pub initial_delta: usize,
    pub final_delta: usize,
    pub budgets: (usize, usize),
    pub elapsed_secs: f64,
}

impl RunLog {
    /// Mean CLAP length `h̄`; 0 when nothing was applied.
    pub fn mean_clap_length(&self) -> f64 {
        if self.iterations.is_empty() {
            0.0
        } else {
            self.iterations.iter().map(|r| r.clap_length as f64).sum::<f64>() / self.iterations.len() as f64
        }
    }
}

/// Repeatedly finds and applies a shortest CLAP until none is left.
pub fn clap_s(state: &mut DuplexState<'_>) -> RunLog {
    clap_s_with(state, ClapSOptions::default())
}

pub fn clap_s_with(state: &mut DuplexState<'_>, opts: ClapSOptions) -> RunLog {
    let start = Instant::now();
    let initial_union = state.union_size();
    let initial_delta = state.difference_mass();
    let mut searcher = Searcher::new(state.node_count());
    let mut iterations = Vec::new();
    let mut clap_stable = false;
    let mut timed_out = false;
    loop {
        if opts.max_iterations.is_some_and(|cap| iterations.len() >= cap) {
            break;
        }
        if opts.time_limit.is_some_and(|t| start.elapsed() >= t) {
            timed_out = true;
            break;
        }
        let Some(clap) = searcher.find(state) else {
            clap_stable = true;
            break;
        };
        let report = apply_clap(state, &clap).expect("a shortest CLAP is always feasible");
        iterations.push(IterationRecord {
            clap_length: report.clap_length,
            delta_before: report.delta_before,
            delta_after: report.delta_after,
            union_before: report.union_before,
            union_after: report.union_after,
            drivers_after: report.drivers_after,
            elapsed_secs: start.elapsed().as_secs_f64(),
        });
    }
    RunLog {
        iterations,
        clap_stable,
        timed_out,
        initial_union,
        final_union: state.union_size(),
        initial_delta,
        final_delta: state.difference_mass(),
        budgets: state.budgets(),
        elapsed_secs: start.elapsed().as_secs_f64(),
    }
}
