//! Alternating reachability inside one layer.
//!
//! Layer 1 walks from unmatched `s⁻` along non-matching edges into `V⁺` and
//! back out through matching edges; every `V⁻` vertex it lands on is matched,
//! hence a valid layer-1 destination. Layer 2 leaves a matched `u⁻` through its
//! matching edge, then takes non-matching edges into `V⁻`; unmatched vertices
//! reached that way are destinations and matched ones are passed through.

use std::collections::VecDeque;

use crate::duplex::DuplexState;
use crate::error::{Error, Result};
use crate::graph::Layer;

const NONE: usize = usize::MAX;

/// Reusable flood buffers. A vertex counts as visited when its stamp equals
/// the current epoch, so clearing is O(1).
#[derive(Debug, Clone)]
pub(crate) struct Flood {
    epoch: u32,
    stamp: Vec<u32>,
    root: Vec<usize>,
    prev: Vec<usize>,
    queue: VecDeque<usize>,
    /// Destinations reached in the last run, in discovery order.
    pub(crate) reached: Vec<usize>,
}

impl Flood {
    pub(crate) fn new(n: usize) -> Flood {
        Flood {
            epoch: 0,
            stamp: vec![0; n],
            root: vec![NONE; n],
            prev: vec![NONE; n],
            queue: VecDeque::new(),
            reached: Vec::new(),
        }
    }

    fn begin(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.queue.clear();
        self.reached.clear();
    }

    #[inline]
    fn seen(&self, v: usize) -> bool {
        self.stamp[v] == self.epoch
    }

    #[inline]
    fn mark(&mut self, v: usize, root: usize, prev: usize) {
        self.stamp[v] = self.epoch;
        self.root[v] = root;
        self.prev[v] = prev;
    }

    /// Source whose tree first reached `v` in the last run.
    #[inline]
    pub(crate) fn root(&self, v: usize) -> usize {
        self.root[v]
    }

    /// Multi-source flood. Sources must already satisfy the layer polarity.
    pub(crate) fn run(&mut self, state: &DuplexState<'_>, layer: Layer, sources: &[usize]) {
        self.begin();
        let net = state.network();
        let bip = net.bipartite(layer);
        let m = state.matching(layer);
        for &s in sources {
            if !self.seen(s) {
                self.mark(s, s, NONE);
                self.queue.push_back(s);
            }
        }
        match layer {
            Layer::One => {
                while let Some(w) = self.queue.pop_front() {
                    let own = m.mate_of_minus(w);
                    for &x in bip.minus_neighbors(w) {
                        if Some(x) == own {
                            continue;
                        }
                        if let Some(z) = m.mate_of_plus(x) {
                            if !self.seen(z) {
                                self.mark(z, self.root[w], w);
                                self.queue.push_back(z);
                                self.reached.push(z);
                            }
                        }
                    }
                }
            }
            Layer::Two => {
                while let Some(w) = self.queue.pop_front() {
                    let Some(x) = m.mate_of_minus(w) else { continue };
                    for &y in bip.plus_neighbors(x) {
                        if y == w || self.seen(y) {
                            continue;
                        }
                        self.mark(y, self.root[w], w);
                        if m.is_minus_matched(y) {
                            self.queue.push_back(y);
                        } else {
                            self.reached.push(y);
                        }
                    }
                }
            }
        }
    }

    /// Witness edges `(u⁺, v⁻)` from the root of `v` to `v`, in path order.
    pub(crate) fn path_to(&self, state: &DuplexState<'_>, layer: Layer, v: usize) -> Vec<(usize, usize)> {
        let m = state.matching(layer);
        let mut rev = Vec::new();
        let mut cur = v;
        while self.prev[cur] != NONE {
            let w = self.prev[cur];
            match layer {
                Layer::One => {
                    let x = m.mate_of_minus(cur).expect("layer-1 hop lands on a matched vertex");
                    rev.push((x, cur));
                    rev.push((x, w));
                }
                Layer::Two => {
                    let x = m.mate_of_minus(w).expect("layer-2 hop leaves a matched vertex");
                    rev.push((x, cur));
                    rev.push((x, w));
                }
            }
            cur = w;
        }
        rev.reverse();
        rev
    }
}

/// Result of [`alt_reach`].
#[derive(Debug, Clone)]
pub struct Reach {
    layer: Layer,
    reachable: Vec<usize>,
    flood: Flood,
}

impl Reach {
    /// Admissible destinations, ascending.
    pub fn reachable(&self) -> &[usize] {
        &self.reachable
    }

    pub fn contains(&self, v: usize) -> bool {
        self.reachable.binary_search(&v).is_ok()
    }

    /// Source from which `v` was reached.
    pub fn source_of(&self, v: usize) -> Option<usize> {
        self.contains(v).then(|| self.flood.root(v))
    }

    /// A shortest witness from `source_of(v)` to `v`.
    pub fn witness(&self, state: &DuplexState<'_>, v: usize) -> Option<Vec<(usize, usize)>> {
        self.contains(v).then(|| self.flood.path_to(state, self.layer, v))
    }
}

/// True when `v` may start a layer-`layer` segment.
pub fn is_segment_origin(state: &DuplexState<'_>, layer: Layer, v: usize) -> bool {
    match layer {
        Layer::One => state.is_driver(Layer::One, v),
        Layer::Two => !state.is_driver(Layer::Two, v),
    }
}

/// All nodes reachable as admissible segment destinations from `sources`.
pub fn alt_reach(state: &DuplexState<'_>, layer: Layer, sources: &[usize]) -> Result<Reach> {
    let n = state.node_count();
    for &s in sources {
        if s >= n {
            return Err(Error::InvalidParameter(format!("source {s} outside 0..{n}")));
        }
        if !is_segment_origin(state, layer, s) {
            return Err(Error::PolarityViolation { node: s, layer });
        }
    }
    let mut flood = Flood::new(n);
    flood.run(state, layer, sources);
    let mut reachable = flood.reached.clone();
    reachable.sort_unstable();
    Ok(Reach {
        layer,
        reachable,
        flood,
    })
}

/// A shortest alternating witness for the segment `from →ℓ to`, if one exists.
/// Among equally short paths the one built from smallest-id neighbors wins.
pub fn alt_path(state: &DuplexState<'_>, layer: Layer, from: usize, to: usize) -> Result<Option<Vec<(usize, usize)>>> {
    let reach = alt_reach(state, layer, &[from])?;
    Ok(reach.witness(state, to))
}

pub(crate) fn alt_path_with(
    flood: &mut Flood,
    state: &DuplexState<'_>,
    layer: Layer,
    from: usize,
    to: usize,
) -> Option<Vec<(usize, usize)>> {
    flood.run(state, layer, &[from]);
    flood.reached.contains(&to).then(|| flood.path_to(state, layer, to))
}
