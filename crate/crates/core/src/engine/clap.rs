//! Segments, CLAPs, and their validity check.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::duplex::{DuplexState, NodeClass};
use crate::engine::reach::is_segment_origin;
use crate::graph::Layer;
use crate::matching::Matching;

/// A single-layer driver exchange `from →ℓ to` with its alternating witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub from_node: usize,
    pub to_node: usize,
    pub layer: Layer,
    /// Bipartite edges `(u⁺, v⁻)` from `from⁻` to `to⁻` in path order.
    pub witness: Vec<(usize, usize)>,
}

/// A layer-alternating chain of segments from `DD₁` to `DD₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClapPath {
    pub segments: Vec<Segment>,
}

impl ClapPath {
    pub fn new(segments: Vec<Segment>) -> ClapPath {
        ClapPath { segments }
    }

    /// Number of segments `h`.
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// `v₀, v₁, …, v_h`.
    pub fn nodes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        if let Some(first) = self.segments.first() {
            out.push(first.from_node);
        }
        out.extend(self.segments.iter().map(|s| s.to_node));
        out
    }
}

/// Checks that `witness` is a simple `m`-alternating path from `from⁻` to
/// `to⁻` over existing edges, with start and endpoint parity.
pub(crate) fn check_witness(
    state: &DuplexState<'_>,
    m: &Matching,
    layer: Layer,
    from: usize,
    to: usize,
    witness: &[(usize, usize)],
) -> Result<(), String> {
    let bip = state.network().bipartite(layer);
    if witness.is_empty() || !witness.len().is_multiple_of(2) {
        return Err(format!("witness {from}→{to} has length {}", witness.len()));
    }
    let mut seen_plus = HashSet::new();
    let mut seen_minus = HashSet::new();
    seen_minus.insert(from);
    let mut cur_minus = from;
    for (i, pair) in witness.chunks_exact(2).enumerate() {
        let (x_in, w) = pair[0];
        let (x_out, next) = pair[1];
        if w != cur_minus || x_in != x_out {
            return Err(format!("witness {from}→{to} is not a contiguous path at step {i}"));
        }
        if !bip.has_edge(x_in, w) || !bip.has_edge(x_out, next) {
            return Err(format!("witness {from}→{to} uses a non-edge at step {i}"));
        }
        if !seen_plus.insert(x_in) || !seen_minus.insert(next) {
            return Err(format!("witness {from}→{to} is not simple"));
        }
        cur_minus = next;
    }
    if cur_minus != to {
        return Err(format!("witness {from}→{to} ends at {cur_minus}"));
    }
    for (i, &(u, v)) in witness.iter().enumerate() {
        let expect_in_m = (i % 2 == 0) == m.is_minus_matched(from);
        if m.contains(u, v) != expect_in_m {
            return Err(format!("witness {from}→{to} does not alternate at edge {i}"));
        }
    }
    let last = *witness.last().expect("non-empty");
    if m.contains(last.0, last.1) != m.is_minus_matched(to) {
        return Err(format!("witness {from}→{to} violates endpoint parity"));
    }
    Ok(())
}

/// Every CLAP invariant checked against `state`; `Err` names the first failure.
pub fn check_clap(clap: &ClapPath, state: &DuplexState<'_>) -> Result<(), String> {
    let n = state.node_count();
    if clap.is_empty() {
        return Err("empty CLAP".into());
    }
    let nodes = clap.nodes();
    if let Some(&v) = nodes.iter().find(|&&v| v >= n) {
        return Err(format!("node {v} outside 0..{n}"));
    }
    for w in clap.segments.windows(2) {
        if w[0].to_node != w[1].from_node {
            return Err("segments are not chained".into());
        }
        if w[0].layer == w[1].layer {
            return Err("consecutive segments share a layer".into());
        }
    }
    let first = nodes[0];
    let last = *nodes.last().expect("non-empty");
    if state.class(first) != NodeClass::Dd1 {
        return Err(format!("start {first} is not in DD1"));
    }
    if state.class(last) != NodeClass::Dd2 {
        return Err(format!("end {last} is not in DD2"));
    }
    let distinct: HashSet<usize> = nodes.iter().copied().collect();
    if distinct.len() != nodes.len() {
        return Err("node sequence repeats a node".into());
    }
    for seg in &clap.segments[..clap.len() - 1] {
        let want = match seg.layer {
            Layer::One => NodeClass::Cms,
            Layer::Two => NodeClass::Cds,
        };
        if state.class(seg.to_node) != want {
            return Err(format!(
                "relay {} after a layer-{} segment is {:?}",
                seg.to_node, seg.layer, state.class(seg.to_node)
            ));
        }
    }
    let mut used: [HashSet<(usize, usize)>; 2] = [HashSet::new(), HashSet::new()];
    for seg in &clap.segments {
        if !is_segment_origin(state, seg.layer, seg.from_node) {
            return Err(format!("segment origin {} has the wrong polarity", seg.from_node));
        }
        if is_segment_origin(state, seg.layer, seg.to_node) {
            return Err(format!("segment destination {} has the wrong polarity", seg.to_node));
        }
        check_witness(state, state.matching(seg.layer), seg.layer, seg.from_node, seg.to_node, &seg.witness)?;
        for &e in &seg.witness {
            if !used[seg.layer.index()].insert(e) {
                return Err(format!("layer-{} witnesses share edge {e:?}", seg.layer));
            }
        }
    }
    Ok(())
}

/// True iff `clap` satisfies every CLAP invariant against `state`.
pub fn verify_clap(clap: &ClapPath, state: &DuplexState<'_>) -> bool {
    check_clap(clap, state).is_ok()
}
