//! Duplex networks and the joint matching state `(M₁, M₂)`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_bipartite, BipartiteRep, DirectedLayer, Layer};
use crate::matching::{driver_set, max_matching, DriverSet, Matching};

/// Two directed layers on a common node set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplexNetwork {
    n: usize,
    layers: [DirectedLayer; 2],
    bips: [BipartiteRep; 2],
}

impl DuplexNetwork {
    pub fn new(layer1: DirectedLayer, layer2: DirectedLayer) -> Result<DuplexNetwork> {
        if layer1.node_count() != layer2.node_count() {
            return Err(Error::NodeCountMismatch {
                layer1: layer1.node_count(),
                layer2: layer2.node_count(),
            });
        }
        let bips = [build_bipartite(&layer1), build_bipartite(&layer2)];
        Ok(DuplexNetwork {
            n: layer1.node_count(),
            layers: [layer1, layer2],
            bips,
        })
    }

    pub fn from_edges(
        n: usize,
        edges1: impl IntoIterator<Item = (usize, usize)>,
        edges2: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<DuplexNetwork> {
        DuplexNetwork::new(DirectedLayer::new(n, edges1)?, DirectedLayer::new(n, edges2)?)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn layer(&self, layer: Layer) -> &DirectedLayer {
        &self.layers[layer.index()]
    }

    pub fn bipartite(&self, layer: Layer) -> &BipartiteRep {
        &self.bips[layer.index()]
    }

    /// The same duplex with layer indices exchanged.
    pub fn swapped(&self) -> DuplexNetwork {
        DuplexNetwork {
            n: self.n,
            layers: [self.layers[1].clone(), self.layers[0].clone()],
            bips: [self.bips[1].clone(), self.bips[0].clone()],
        }
    }

    /// Stable within a build; used to tie algorithm runs to their input.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.n.hash(&mut h);
        self.layers[0].edges().hash(&mut h);
        self.layers[1].edges().hash(&mut h);
        h.finish()
    }
}

/// Classification of a node by its driver status in both layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeClass {
    /// Driver in both layers.
    Cds,
    /// Driver in neither layer.
    Cms,
    /// Driver in layer one only.
    Dd1,
    /// Driver in layer two only.
    Dd2,
}

impl NodeClass {
    pub fn of(in_d1: bool, in_d2: bool) -> NodeClass {
        match (in_d1, in_d2) {
            (true, true) => NodeClass::Cds,
            (false, false) => NodeClass::Cms,
            (true, false) => NodeClass::Dd1,
            (false, true) => NodeClass::Dd2,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }

    pub fn is_difference(self) -> bool {
        matches!(self, NodeClass::Dd1 | NodeClass::Dd2)
    }
}

/// The four-way node partition of a state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSnapshot {
    pub cds: Vec<usize>,
    pub cms: Vec<usize>,
    pub dd1: Vec<usize>,
    pub dd2: Vec<usize>,
}

impl PartitionSnapshot {
    /// True when the four sets are pairwise disjoint and cover `0..n`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for &v in self.cds.iter().chain(&self.cms).chain(&self.dd1).chain(&self.dd2) {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// Mutable joint state: one matching per layer plus cached driver flags and
/// node classes. Budgets are fixed at construction.
#[derive(Debug, Clone)]
pub struct DuplexState<'a> {
    net: &'a DuplexNetwork,
    matchings: [Matching; 2],
    is_driver: [Vec<bool>; 2],
    budgets: [usize; 2],
    class: Vec<NodeClass>,
    class_counts: [usize; 4],
}

impl<'a> DuplexState<'a> {
    /// Maximum matchings in both layers; budgets become `n − |M_ℓ*|`.
    pub fn init(net: &'a DuplexNetwork, seed: Option<u64>) -> DuplexState<'a> {
        let m1 = max_matching(net.bipartite(Layer::One), seed);
        let m2 = max_matching(
            net.bipartite(Layer::Two),
            seed.map(|s| s ^ 0x9e37_79b9_7f4a_7c15),
        );
        DuplexState::assemble(net, [m1, m2])
    }

    /// A state from explicit matchings; budgets are `n − |M_ℓ|`.
    pub fn from_matchings(net: &'a DuplexNetwork, m1: Matching, m2: Matching) -> Result<DuplexState<'a>> {
        m1.validate(net.bipartite(Layer::One))?;
        m2.validate(net.bipartite(Layer::Two))?;
        Ok(DuplexState::assemble(net, [m1, m2]))
    }

    fn assemble(net: &'a DuplexNetwork, matchings: [Matching; 2]) -> DuplexState<'a> {
        let n = net.node_count();
        let is_driver = [
            (0..n).map(|v| !matchings[0].is_minus_matched(v)).collect::<Vec<_>>(),
            (0..n).map(|v| !matchings[1].is_minus_matched(v)).collect::<Vec<_>>(),
        ];
        let budgets = [n - matchings[0].size(), n - matchings[1].size()];
        let mut class_counts = [0usize; 4];
        let class: Vec<NodeClass> = (0..n)
            .map(|v| {
                let c = NodeClass::of(is_driver[0][v], is_driver[1][v]);
                class_counts[c.slot()] += 1;
                c
            })
            .collect();
        DuplexState {
            net,
            matchings,
            is_driver,
            budgets,
            class,
            class_counts,
        }
    }

    pub fn network(&self) -> &'a DuplexNetwork {
        self.net
    }

    pub fn node_count(&self) -> usize {
        self.net.node_count()
    }

    pub fn matching(&self, layer: Layer) -> &Matching {
        &self.matchings[layer.index()]
    }

    #[inline]
    pub fn is_driver(&self, layer: Layer, v: usize) -> bool {
        self.is_driver[layer.index()][v]
    }

    pub fn drivers(&self, layer: Layer) -> DriverSet {
        let flags = &self.is_driver[layer.index()];
        DriverSet::from_members((0..flags.len()).filter(|&v| flags[v]).collect())
    }

    pub fn budget(&self, layer: Layer) -> usize {
        self.budgets[layer.index()]
    }

    pub fn budgets(&self) -> (usize, usize) {
        (self.budgets[0], self.budgets[1])
    }

    #[inline]
    pub fn class(&self, v: usize) -> NodeClass {
        self.class[v]
    }

    pub fn class_count(&self, class: NodeClass) -> usize {
        self.class_counts[class.slot()]
    }

    pub fn nodes_in(&self, class: NodeClass) -> impl Iterator<Item = usize> + '_ {
        self.class
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == class)
            .map(|(v, _)| v)
    }

    pub fn partition(&self) -> PartitionSnapshot {
        PartitionSnapshot {
            cds: self.nodes_in(NodeClass::Cds).collect(),
            cms: self.nodes_in(NodeClass::Cms).collect(),
            dd1: self.nodes_in(NodeClass::Dd1).collect(),
            dd2: self.nodes_in(NodeClass::Dd2).collect(),
        }
    }

    /// `Δ = |DD₁| + |DD₂|`.
    pub fn difference_mass(&self) -> usize {
        self.class_count(NodeClass::Dd1) + self.class_count(NodeClass::Dd2)
    }

    /// `|D₁ ∪ D₂|`, checked against `(k₁ + k₂ + Δ) / 2` on every call.
    pub fn union_size(&self) -> usize {
        let direct = self.class_count(NodeClass::Cds) + self.difference_mass();
        let (k1, k2) = self.budgets();
        assert_eq!(
            2 * direct,
            k1 + k2 + self.difference_mass(),
            "union-size identity violated"
        );
        direct
    }

    pub fn union_members(&self) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&v| self.class[v] != NodeClass::Cms)
            .collect()
    }

    /// Hash of both matchings and all caches.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.matchings.hash(&mut h);
        self.is_driver.hash(&mut h);
        self.budgets.hash(&mut h);
        self.class.hash(&mut h);
        self.class_counts.hash(&mut h);
        h.finish()
    }

    /// Recomputes everything from the matchings and compares with the caches.
    /// Cheap post-update check: cached flags, classes and mates at `nodes`
    /// plus the O(1) counting identities. [`check_invariants`](Self::check_invariants)
    /// is the full O(n + m) version.
    pub(crate) fn check_local(&self, nodes: impl IntoIterator<Item = usize>) -> std::result::Result<(), String> {
        let n = self.node_count();
        for layer in Layer::BOTH {
            if self.matching(layer).size() + self.budget(layer) != n {
                return Err(format!("layer {layer}: matching size drifted from the budget"));
            }
        }
        let c = |class: NodeClass| self.class_counts[class.slot()];
        if c(NodeClass::Cds) + c(NodeClass::Dd1) != self.budget(Layer::One)
            || c(NodeClass::Cds) + c(NodeClass::Dd2) != self.budget(Layer::Two)
            || self.class_counts.iter().sum::<usize>() != n
        {
            return Err("class counts disagree with the budgets".into());
        }
        for v in nodes {
            for layer in Layer::BOTH {
                let m = self.matching(layer);
                if self.is_driver(layer, v) == m.is_minus_matched(v) {
                    return Err(format!("layer {layer}: stale driver flag at {v}"));
                }
                if let Some(u) = m.mate_of_minus(v) {
                    if m.mate_of_plus(u) != Some(v) || !self.net.bipartite(layer).has_edge(u, v) {
                        return Err(format!("layer {layer}: bad matched pair ({u}, {v})"));
                    }
                }
                if let Some(w) = m.mate_of_plus(v) {
                    if m.mate_of_minus(w) != Some(v) {
                        return Err(format!("layer {layer}: asymmetric mate at {v}+"));
                    }
                }
            }
            if self.class[v] != NodeClass::of(self.is_driver(Layer::One, v), self.is_driver(Layer::Two, v)) {
                return Err(format!("stale class at {v}"));
            }
        }
        Ok(())
    }

    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.node_count();
        let mut counts = [0usize; 4];
        for layer in Layer::BOTH {
            let m = self.matching(layer);
            m.validate(self.net.bipartite(layer)).map_err(|e| e.to_string())?;
            if m.size() + self.budget(layer) != n {
                return Err(format!("layer {layer}: |M| = {} but budget {}", m.size(), self.budget(layer)));
            }
            let d = driver_set(m, n);
            if d.len() != self.budget(layer) {
                return Err(format!("layer {layer}: |D| = {} but budget {}", d.len(), self.budget(layer)));
            }
            for v in 0..n {
                if d.contains(v) != self.is_driver(layer, v) {
                    return Err(format!("layer {layer}: stale driver flag at {v}"));
                }
            }
        }
        for v in 0..n {
            let c = NodeClass::of(self.is_driver(Layer::One, v), self.is_driver(Layer::Two, v));
            if c != self.class[v] {
                return Err(format!("stale class at {v}"));
            }
            counts[c.slot()] += 1;
        }
        if counts != self.class_counts {
            return Err("stale class counts".into());
        }
        if !self.partition().is_partition_of(n) {
            return Err("partition does not cover the node set".into());
        }
        let (k1, k2) = self.budgets();
        let union = counts[NodeClass::Cds.slot()] + self.difference_mass();
        if 2 * union != k1 + k2 + self.difference_mass() {
            return Err("union-size identity violated".into());
        }
        Ok(())
    }

    pub(crate) fn matching_mut(&mut self, layer: Layer) -> &mut Matching {
        &mut self.matchings[layer.index()]
    }

    pub(crate) fn set_driver(&mut self, layer: Layer, v: usize, driver: bool) {
        self.is_driver[layer.index()][v] = driver;
        let old = self.class[v];
        let new = NodeClass::of(self.is_driver[0][v], self.is_driver[1][v]);
        if old != new {
            self.class_counts[old.slot()] -= 1;
            self.class_counts[new.slot()] += 1;
            self.class[v] = new;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Fixture = (DuplexNetwork, Vec<(usize, usize)>, Vec<(usize, usize)>);

    /// Six nodes with unique maximum matchings, D₁ = {1,2} and D₂ = {4,5}.
    fn disjoint_drivers() -> Fixture {
        // Layer 1: nodes 1 and 2 have no in-edges; the rest are matched.
        let e1 = vec![(0, 0), (1, 3), (2, 4), (3, 5)];
        // Layer 2: nodes 4 and 5 have no in-edges.
        let e2 = vec![(0, 0), (1, 1), (2, 2), (3, 3)];
        let net = DuplexNetwork::from_edges(6, e1.clone(), e2.clone()).unwrap();
        (net, e1, e2)
    }

    #[test]
    fn empty_layers_make_everyone_a_driver() {
        let net = DuplexNetwork::from_edges(3, [], []).unwrap();
        let s = DuplexState::init(&net, None);
        assert_eq!(s.budgets(), (3, 3));
        assert_eq!(s.drivers(Layer::One).members(), &[0, 1, 2]);
        assert_eq!(s.drivers(Layer::Two).members(), &[0, 1, 2]);
        assert_eq!(s.difference_mass(), 0);
        assert_eq!(s.union_size(), 3);
    }

    #[test]
    fn identical_layers_have_zero_difference_mass() {
        let edges = [(0, 1), (1, 2), (2, 0), (3, 1), (4, 4)];
        let net = DuplexNetwork::from_edges(6, edges, edges).unwrap();
        let s = DuplexState::init(&net, None);
        assert_eq!(s.budget(Layer::One), s.budget(Layer::Two));
        assert_eq!(s.drivers(Layer::One), s.drivers(Layer::Two));
        assert_eq!(s.difference_mass(), 0);
    }

    #[test]
    fn two_by_two_budgets_with_disjoint_driver_sets() {
        let (net, e1, e2) = disjoint_drivers();
        let m1 = Matching::from_pairs(net.bipartite(Layer::One), e1).unwrap();
        let m2 = Matching::from_pairs(net.bipartite(Layer::Two), e2).unwrap();
        let s = DuplexState::from_matchings(&net, m1, m2).unwrap();
        assert_eq!(s.budgets(), (2, 2));
        assert_eq!(s.drivers(Layer::One).members(), &[1, 2]);
        assert_eq!(s.drivers(Layer::Two).members(), &[4, 5]);
        let p = s.partition();
        assert!(p.cds.is_empty());
        assert_eq!(p.dd1, vec![1, 2]);
        assert_eq!(p.dd2, vec![4, 5]);
        assert_eq!(p.cms, vec![0, 3]);
        assert_eq!(s.difference_mass(), 4);
        assert_eq!(s.union_size(), 4);
        s.check_invariants().unwrap();
    }

    #[test]
    fn union_size_with_zero_difference_mass() {
        // k1 = k2 = 2 and identical driver sets.
        let e = [(0, 0), (1, 1), (2, 2)];
        let net = DuplexNetwork::from_edges(5, e, e).unwrap();
        let s = DuplexState::init(&net, None);
        assert_eq!(s.budgets(), (2, 2));
        assert_eq!(s.difference_mass(), 0);
        assert_eq!(s.union_size(), 2);
        let p = s.partition();
        assert_eq!(p.cds, vec![3, 4]);
        assert!(p.dd1.is_empty() && p.dd2.is_empty());
    }

    #[test]
    fn perfect_matchings_give_empty_union() {
        let e = [(0, 1), (1, 0)];
        let net = DuplexNetwork::from_edges(2, e, [(0, 0), (1, 1)]).unwrap();
        let s = DuplexState::init(&net, None);
        assert_eq!(s.budgets(), (0, 0));
        assert_eq!(s.union_size(), 0);
    }

    #[test]
    fn single_node_driven_in_both_layers() {
        let net = DuplexNetwork::from_edges(1, [], []).unwrap();
        let s = DuplexState::init(&net, None);
        let p = s.partition();
        assert_eq!(p.cds, vec![0]);
        assert!(p.cms.is_empty() && p.dd1.is_empty() && p.dd2.is_empty());
    }

    #[test]
    fn mismatched_node_counts_are_rejected() {
        let err = DuplexNetwork::new(DirectedLayer::empty(3), DirectedLayer::empty(4)).unwrap_err();
        assert!(matches!(err, Error::NodeCountMismatch { .. }));
    }

    #[test]
    fn difference_mass_parity_matches_budget_sum() {
        let (net, _, _) = disjoint_drivers();
        let s = DuplexState::init(&net, Some(7));
        let (k1, k2) = s.budgets();
        assert_eq!(s.difference_mass() % 2, (k1 + k2) % 2);
    }
}
