//! Stability verdicts cross-checked against the exact oracle.

use std::fmt;

use serde::Serialize;

use crate::baselines::{enumerate_families, exact_min_union, OracleLimits};
use crate::duplex::{DuplexNetwork, DuplexState};
use crate::engine::{clap_s_with, check_clap, find_shortest_clap, ClapPath, ClapSOptions};
use crate::error::{Error, Result};
use crate::meta::{certify_optimal_or_find_witness, Certificate};

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub oracle: OracleLimits,
    /// Truncate CLAP-S after this many CLAPs; `Some(0)` checks the initial state.
    pub max_iterations: Option<usize>,
    /// Seed for the initial matchings; `None` is the deterministic start.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    Disagree,
    /// The oracle did not finish within its caps.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetaVerdict {
    /// No enumerated comparator state has a smaller difference mass.
    Optimal { comparators: usize },
    /// A comparator is better and its meta-graph yields this CLAP length.
    Improvable { comparator: usize, witness_length: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub budgets: (usize, usize),
    pub initial_union: usize,
    pub clap_s_union: usize,
    pub iterations: usize,
    pub stable: bool,
    /// A shortest CLAP in the final state, when one exists.
    pub witness: Option<ClapPath>,
    pub oracle_optimum: Option<usize>,
    /// Why the oracle gave up, when it did.
    pub oracle_message: Option<String>,
    pub agreement: Agreement,
    pub meta: Option<MetaVerdict>,
}

impl VerifyReport {
    /// The stability verdict and the oracle agree with each other: stable
    /// exactly when the union is optimal.
    pub fn consistent(&self) -> bool {
        match self.oracle_optimum {
            Some(opt) => self.stable == (self.clap_s_union == opt),
            None => true,
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stability = if self.stable { "stable" } else { "not stable" };
        let optimality = match self.oracle_optimum {
            Some(opt) if opt == self.clap_s_union => "optimal",
            Some(_) => "suboptimal",
            None => "optimum unknown",
        };
        writeln!(f, "{stability}, {optimality}, |U| = {}", self.clap_s_union)?;
        writeln!(
            f,
            "n = {}, k1 = {}, k2 = {}, initial |U| = {}, CLAPs applied = {}",
            self.n, self.budgets.0, self.budgets.1, self.initial_union, self.iterations
        )?;
        if let Some(w) = &self.witness {
            let path: Vec<String> = w.nodes().iter().map(usize::to_string).collect();
            writeln!(f, "witness CLAP exists: length {} through nodes {}", w.len(), path.join(" -> "))?;
        }
        match (&self.oracle_optimum, &self.oracle_message) {
            (Some(opt), _) => writeln!(f, "oracle optimum: |U| = {opt}")?,
            (None, Some(msg)) => writeln!(f, "oracle infeasible at this size: {msg}")?,
            (None, None) => {}
        }
        let flag = match self.agreement {
            Agreement::Agree => "AGREE",
            Agreement::Disagree => "DISAGREE",
            Agreement::Unknown => "UNKNOWN",
        };
        writeln!(f, "agreement: {flag}")?;
        match &self.meta {
            Some(MetaVerdict::Optimal { comparators }) => {
                writeln!(f, "meta certificate: optimal against {comparators} comparator states")
            }
            Some(MetaVerdict::Improvable { comparator, witness_length }) => writeln!(
                f,
                "meta certificate: improvable, comparator {comparator} yields a CLAP of length {witness_length}"
            ),
            None => Ok(()),
        }
    }
}

/// Runs CLAP-S (optionally truncated), then checks the final state against
/// the oracle and the meta-graph certificate.
pub fn verify_network(net: &DuplexNetwork, opts: VerifyOptions) -> Result<VerifyReport> {
    let mut state = DuplexState::init(net, opts.seed);
    let log = clap_s_with(
        &mut state,
        ClapSOptions {
            max_iterations: opts.max_iterations,
            time_limit: None,
        },
    );
    let witness = find_shortest_clap(&state);
    if let Some(w) = &witness {
        check_clap(w, &state).map_err(Error::InfeasibleClap)?;
    }
    let (oracle_optimum, oracle_message) = match exact_min_union(net, opts.oracle) {
        Ok(res) => (Some(res.final_union_size), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let agreement = match oracle_optimum {
        Some(opt) if opt == log.final_union => Agreement::Agree,
        Some(_) => Agreement::Disagree,
        None => Agreement::Unknown,
    };
    let meta = if oracle_optimum.is_some() { meta_verdict(net, &state, opts.oracle)? } else { None };
    Ok(VerifyReport {
        n: net.node_count(),
        budgets: state.budgets(),
        initial_union: log.initial_union,
        clap_s_union: log.final_union,
        iterations: log.iterations.len(),
        stable: witness.is_none(),
        witness,
        oracle_optimum,
        oracle_message,
        agreement,
        meta,
    })
}

fn meta_verdict(net: &DuplexNetwork, state: &DuplexState<'_>, limits: OracleLimits) -> Result<Option<MetaVerdict>> {
    let Ok([f1, f2]) = enumerate_families(net, limits) else { return Ok(None) };
    if (f1.representatives.len() as u64).saturating_mul(f2.representatives.len() as u64) > limits.max_pairs {
        return Ok(None);
    }
    let mut comparators = Vec::new();
    for (_, m1) in &f1.representatives {
        for (_, m2) in &f2.representatives {
            comparators.push(DuplexState::from_matchings(net, m1.clone(), m2.clone())?);
        }
    }
    Ok(Some(match certify_optimal_or_find_witness(state, &comparators)? {
        Certificate::Optimal { comparators } => MetaVerdict::Optimal { comparators },
        Certificate::Improvable { comparator, witness } => MetaVerdict::Improvable {
            comparator,
            witness_length: witness.len(),
        },
    }))
}
