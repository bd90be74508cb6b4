//! Applying a CLAP by symmetric differences.

use serde::{Deserialize, Serialize};

use crate::duplex::DuplexState;
use crate::engine::clap::{check_clap, check_witness, ClapPath};
use crate::error::{Error, Result};
use crate::graph::Layer;

/// Before/after figures of one application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub clap_length: usize,
    pub delta_before: usize,
    pub delta_after: usize,
    pub union_before: usize,
    pub union_after: usize,
    pub drivers_before: (usize, usize),
    pub drivers_after: (usize, usize),
}

#[derive(Debug)]
struct Step {
    layer: Layer,
    removed: Vec<(usize, usize)>,
    added: Vec<(usize, usize)>,
    endpoints: [usize; 2],
}

fn driver_counts(state: &DuplexState<'_>) -> (usize, usize) {
    let n = state.node_count();
    (
        n - state.matching(Layer::One).size(),
        n - state.matching(Layer::Two).size(),
    )
}

fn sync_drivers(state: &mut DuplexState<'_>, layer: Layer, nodes: [usize; 2]) {
    for v in nodes {
        let driver = !state.matching(layer).is_minus_matched(v);
        state.set_driver(layer, v, driver);
    }
}

fn undo(state: &mut DuplexState<'_>, journal: Vec<Step>) {
    for step in journal.into_iter().rev() {
        let m = state.matching_mut(step.layer);
        for &(u, v) in &step.added {
            m.unlink(u, v);
        }
        for &(u, v) in &step.removed {
            m.link(u, v);
        }
        sync_drivers(state, step.layer, step.endpoints);
    }
}

/// Applies every segment of `clap` in order. An infeasible CLAP is rejected
/// before any change; a segment that stops being valid midway rolls the whole
/// application back.
pub fn apply_clap(state: &mut DuplexState<'_>, clap: &ClapPath) -> Result<DeltaReport> {
    check_clap(clap, state).map_err(Error::InfeasibleClap)?;
    let delta_before = state.difference_mass();
    let union_before = state.union_size();
    let drivers_before = driver_counts(state);

    let mut journal: Vec<Step> = Vec::with_capacity(clap.len());
    for seg in &clap.segments {
        if let Err(msg) = check_witness(
            state,
            state.matching(seg.layer),
            seg.layer,
            seg.from_node,
            seg.to_node,
            &seg.witness,
        ) {
            undo(state, journal);
            return Err(Error::InfeasibleClap(msg));
        }
        let m = state.matching_mut(seg.layer);
        let (removed, added): (Vec<_>, Vec<_>) = seg.witness.iter().partition(|&&(u, v)| m.contains(u, v));
        for &(u, v) in &removed {
            m.unlink(u, v);
        }
        for &(u, v) in &added {
            m.link(u, v);
        }
        let endpoints = [seg.from_node, seg.to_node];
        sync_drivers(state, seg.layer, endpoints);
        journal.push(Step {
            layer: seg.layer,
            removed,
            added,
            endpoints,
        });
    }

    let report = DeltaReport {
        clap_length: clap.len(),
        delta_before,
        delta_after: state.difference_mass(),
        union_before,
        union_after: state.union_size(),
        drivers_before,
        drivers_after: driver_counts(state),
    };
    if cfg!(debug_assertions) {
        let touched = clap.segments.iter().flat_map(|s| s.witness.iter().flat_map(|&(u, v)| [u, v]));
        if let Err(msg) = state.check_local(touched) {
            panic!("state caches diverged after applying a CLAP: {msg}");
        }
    }
    Ok(report)
}
