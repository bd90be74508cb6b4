//! Shortest-CLAP search over `(node, nextLayer)` states.

use crate::duplex::{DuplexState, NodeClass};
use crate::engine::clap::{ClapPath, Segment};
use crate::engine::reach::{alt_path_with, Flood};
use crate::graph::Layer;

const NONE: usize = usize::MAX;

/// Scratch space for repeated searches on one network.
#[derive(Debug, Clone)]
pub struct Searcher {
    flood: Flood,
    visited: [Vec<u32>; 2],
    parent: [Vec<usize>; 2],
    epoch: u32,
    frontier: [Vec<usize>; 2],
    next: [Vec<usize>; 2],
}

impl Searcher {
    pub fn new(n: usize) -> Searcher {
        Searcher {
            flood: Flood::new(n),
            visited: [vec![0; n], vec![0; n]],
            parent: [vec![NONE; n], vec![NONE; n]],
            epoch: 0,
            frontier: [Vec::new(), Vec::new()],
            next: [Vec::new(), Vec::new()],
        }
    }

    fn begin(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            for v in &mut self.visited {
                v.iter_mut().for_each(|s| *s = 0);
            }
            self.epoch = 1;
        }
    }

    #[inline]
    fn visit(&mut self, v: usize, next_layer: Layer, parent: usize) -> bool {
        let i = next_layer.index();
        if self.visited[i][v] == self.epoch {
            return false;
        }
        self.visited[i][v] = self.epoch;
        self.parent[i][v] = parent;
        true
    }

    /// A CLAP with the fewest segments, or `None` when the state is CLAP-stable.
    ///
    /// Levels are expanded synchronously: at each level one multi-source flood
    /// runs per layer from every state expecting that layer. Among targets in
    /// `DD₂` first hit at the minimal level the smallest node id wins, with
    /// layer 1 preferred when both layers reach it.
    pub fn find(&mut self, state: &DuplexState<'_>) -> Option<ClapPath> {
        if state.class_count(NodeClass::Dd1) == 0 || state.class_count(NodeClass::Dd2) == 0 {
            return None;
        }
        self.begin();
        for f in &mut self.frontier {
            f.clear();
        }
        let seeds: Vec<usize> = state.nodes_in(NodeClass::Dd1).collect();
        for &s in &seeds {
            for layer in Layer::BOTH {
                self.visit(s, layer, NONE);
                self.frontier[layer.index()].push(s);
            }
        }

        loop {
            if self.frontier.iter().all(|f| f.is_empty()) {
                return None;
            }
            let mut best: Option<(usize, Layer, usize)> = None;
            for n in &mut self.next {
                n.clear();
            }
            for layer in Layer::BOTH {
                let sources = std::mem::take(&mut self.frontier[layer.index()]);
                if sources.is_empty() {
                    continue;
                }
                self.flood.run(state, layer, &sources);
                self.frontier[layer.index()] = sources;
                let reached = std::mem::take(&mut self.flood.reached);
                for &v in &reached {
                    let root = self.flood.root(v);
                    match (state.class(v), layer) {
                        (NodeClass::Dd2, _) => {
                            if best.is_none_or(|(b, _, _)| v < b) {
                                best = Some((v, layer, root));
                            }
                        }
                        (NodeClass::Cms, Layer::One) if self.visit(v, Layer::Two, root) => {
                            self.next[Layer::Two.index()].push(v);
                        }
                        (NodeClass::Cds, Layer::Two) if self.visit(v, Layer::One, root) => {
                            self.next[Layer::One.index()].push(v);
                        }
                        _ => {}
                    }
                }
                self.flood.reached = reached;
            }
            if let Some((target, layer, root)) = best {
                return Some(self.reconstruct(state, target, layer, root));
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
            for f in &mut self.frontier {
                f.sort_unstable();
            }
        }
    }

    fn reconstruct(&mut self, state: &DuplexState<'_>, target: usize, layer: Layer, root: usize) -> ClapPath {
        let mut hops = vec![(root, target, layer)];
        let (mut node, mut layer) = (root, layer);
        loop {
            let p = self.parent[layer.index()][node];
            if p == NONE {
                break;
            }
            layer = layer.other();
            hops.push((p, node, layer));
            node = p;
        }
        hops.reverse();
        let segments = hops
            .into_iter()
            .map(|(from, to, layer)| Segment {
                from_node: from,
                to_node: to,
                layer,
                witness: alt_path_with(&mut self.flood, state, layer, from, to)
                    .expect("flood-reached destination has a witness"),
            })
            .collect();
        ClapPath::new(segments)
    }
}

/// One-shot form of [`Searcher::find`].
pub fn find_shortest_clap(state: &DuplexState<'_>) -> Option<ClapPath> {
    Searcher::new(state.node_count()).find(state)
}
