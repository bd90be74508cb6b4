//! Symmetric differences against a comparator state, the layer-labeled
//! meta-graph they induce, node signatures, and component-wise accounting of
//! the difference mass. Used as an independent check of CLAP-stability.

use serde::{Deserialize, Serialize};

use crate::duplex::{DuplexState, NodeClass};
use crate::engine::{check_clap, is_segment_origin, ClapPath, Segment};
use crate::error::{Error, Result};
use crate::graph::Layer;
use crate::matching::Matching;

/// A vertex of the bipartite representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BVertex {
    Plus(usize),
    Minus(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    Path,
    Cycle,
}

/// One connected component of `M △ M̂` in a layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymDiffComponent {
    pub layer: Layer,
    pub kind: ComponentKind,
    /// Vertices in walk order; a cycle does not repeat its first vertex.
    pub vertices: Vec<BVertex>,
    /// Node ids of `V⁻` path endpoints (0, 1 or 2 of them).
    pub vminus_endpoints: Vec<usize>,
}

impl SymDiffComponent {
    pub fn edge_count(&self) -> usize {
        match self.kind {
            ComponentKind::Path => self.vertices.len() - 1,
            ComponentKind::Cycle => self.vertices.len(),
        }
    }
}

/// Components of `m △ comparator`, paths first (ordered by smallest end
/// vertex), then cycles.
pub fn sym_diff_components(layer: Layer, m: &Matching, comparator: &Matching) -> Result<Vec<SymDiffComponent>> {
    if m.size() != comparator.size() {
        return Err(Error::SizeMismatch {
            left: m.size(),
            right: comparator.size(),
        });
    }
    if m.node_count() != comparator.node_count() {
        return Err(Error::InvalidParameter("matchings over different node counts".into()));
    }
    let n = m.node_count();
    let index = |x: BVertex| match x {
        BVertex::Plus(u) => u,
        BVertex::Minus(v) => n + v,
    };
    let neighbors = |x: BVertex| -> Vec<BVertex> {
        let (a, b) = match x {
            BVertex::Plus(u) => (m.mate_of_plus(u), comparator.mate_of_plus(u)),
            BVertex::Minus(v) => (m.mate_of_minus(v), comparator.mate_of_minus(v)),
        };
        if a == b {
            return Vec::new();
        }
        let wrap = |y: usize| match x {
            BVertex::Plus(_) => BVertex::Minus(y),
            BVertex::Minus(_) => BVertex::Plus(y),
        };
        a.into_iter().chain(b).map(wrap).collect()
    };
    let all: Vec<BVertex> = (0..n).map(BVertex::Plus).chain((0..n).map(BVertex::Minus)).collect();
    let mut visited = vec![false; 2 * n];
    let mut out = Vec::new();

    let walk = |start: BVertex, visited: &mut Vec<bool>| -> Vec<BVertex> {
        let mut seq = vec![start];
        visited[index(start)] = true;
        let mut prev: Option<BVertex> = None;
        let mut cur = start;
        loop {
            let next = neighbors(cur)
                .into_iter()
                .find(|&y| Some(y) != prev && !visited[index(y)]);
            match next {
                Some(y) => {
                    visited[index(y)] = true;
                    seq.push(y);
                    prev = Some(cur);
                    cur = y;
                }
                None => return seq,
            }
        }
    };

    for &x in &all {
        if !visited[index(x)] && neighbors(x).len() == 1 {
            let vertices = walk(x, &mut visited);
            let ends = [vertices[0], *vertices.last().expect("non-empty")];
            let vminus_endpoints = ends
                .iter()
                .filter_map(|e| match e {
                    BVertex::Minus(v) => Some(*v),
                    BVertex::Plus(_) => None,
                })
                .collect();
            out.push(SymDiffComponent {
                layer,
                kind: ComponentKind::Path,
                vertices,
                vminus_endpoints,
            });
        }
    }
    for &x in &all {
        if !visited[index(x)] && neighbors(x).len() == 2 {
            out.push(SymDiffComponent {
                layer,
                kind: ComponentKind::Cycle,
                vertices: walk(x, &mut visited),
                vminus_endpoints: Vec::new(),
            });
        }
    }
    Ok(out)
}

/// An oriented, layer-labeled edge of the meta-graph with the
/// symmetric-difference path behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaEdge {
    pub from: usize,
    pub to: usize,
    pub layer: Layer,
    /// `(u⁺, v⁻)` edges from `from⁻` to `to⁻`.
    pub path: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaComponent {
    /// Nodes in walk order; a cycle does not repeat its first node.
    pub nodes: Vec<usize>,
    /// Edge ids in walk order.
    pub edges: Vec<usize>,
    pub is_cycle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaGraph {
    pub n: usize,
    pub edges: Vec<MetaEdge>,
    pub components: Vec<MetaComponent>,
}

impl MetaGraph {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v || e.to == v).count()
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            deg[e.from] += 1;
            deg[e.to] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// Consecutive edges of every component carry different labels.
    pub fn labels_alternate(&self) -> bool {
        self.components.iter().all(|c| {
            let pairs = c.edges.windows(2).all(|w| self.edges[w[0]].layer != self.edges[w[1]].layer);
            let closing = !c.is_cycle
                || c.edges.len() < 2
                || self.edges[c.edges[0]].layer != self.edges[*c.edges.last().expect("non-empty")].layer;
            pairs && closing
        })
    }
}

/// Number of directions (0, 1 or 2) in which `{x, y}` is an admissible layer-`layer` segment.
pub fn admissible_directions(state: &DuplexState<'_>, layer: Layer, x: usize, y: usize) -> usize {
    let ok = |a, b| is_segment_origin(state, layer, a) && !is_segment_origin(state, layer, b);
    ok(x, y) as usize + ok(y, x) as usize
}

fn path_edges(vertices: &[BVertex]) -> Vec<(usize, usize)> {
    vertices
        .windows(2)
        .map(|w| match (w[0], w[1]) {
            (BVertex::Plus(u), BVertex::Minus(v)) | (BVertex::Minus(v), BVertex::Plus(u)) => (u, v),
            _ => unreachable!("bipartite walk alternates sides"),
        })
        .collect()
}

/// The oriented meta-graph of `state` against `comparator`.
pub fn build_meta_graph(state: &DuplexState<'_>, comparator: &DuplexState<'_>) -> Result<MetaGraph> {
    if state.network().fingerprint() != comparator.network().fingerprint() {
        return Err(Error::ProvenanceMismatch("comparator is over a different duplex".into()));
    }
    let (k1, k2) = state.budgets();
    let (other_k1, other_k2) = comparator.budgets();
    if (k1, k2) != (other_k1, other_k2) {
        return Err(Error::BudgetMismatch { k1, k2, other_k1, other_k2 });
    }
    let n = state.node_count();
    let mut edges = Vec::new();
    for layer in Layer::BOTH {
        for comp in sym_diff_components(layer, state.matching(layer), comparator.matching(layer))? {
            if comp.kind == ComponentKind::Cycle || comp.vminus_endpoints.is_empty() {
                continue;
            }
            if comp.vminus_endpoints.len() == 1 {
                return Err(Error::OddComponent(layer));
            }
            let (a, b) = (comp.vminus_endpoints[0], comp.vminus_endpoints[1]);
            if admissible_directions(state, layer, a, b) != 1 {
                return Err(Error::PolarityViolation { node: a, layer });
            }
            let forward = is_segment_origin(state, layer, a);
            let mut vertices = comp.vertices;
            if !forward {
                vertices.reverse();
            }
            let (from, to) = if forward { (a, b) } else { (b, a) };
            edges.push(MetaEdge {
                from,
                to,
                layer,
                path: path_edges(&vertices),
            });
        }
    }
    let components = meta_components(n, &edges);
    Ok(MetaGraph { n, edges, components })
}

fn meta_components(n: usize, edges: &[MetaEdge]) -> Vec<MetaComponent> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        incident[e.from].push(i);
        incident[e.to].push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut out = Vec::new();
    let walk = |start: usize, used: &mut Vec<bool>| {
        let mut nodes = vec![start];
        let mut ids = Vec::new();
        let mut cur = start;
        while let Some(&id) = incident[cur].iter().find(|&&id| !used[id]) {
            used[id] = true;
            ids.push(id);
            let e = &edges[id];
            cur = if e.from == cur { e.to } else { e.from };
            nodes.push(cur);
        }
        (nodes, ids)
    };
    for v in 0..n {
        if incident[v].len() == 1 && !used[incident[v][0]] {
            let (nodes, ids) = walk(v, &mut used);
            out.push(MetaComponent {
                nodes,
                edges: ids,
                is_cycle: false,
            });
        }
    }
    for v in 0..n {
        if incident[v].iter().any(|&id| !used[id]) {
            let (mut nodes, ids) = walk(v, &mut used);
            nodes.pop();
            out.push(MetaComponent {
                nodes,
                edges: ids,
                is_cycle: true,
            });
        }
    }
    out
}

/// `δ(v) = (δ₁, δ₂)` with `δ_ℓ = [v ∈ D̂_ℓ] − [v ∈ D_ℓ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeSignature {
    pub delta1: i8,
    pub delta2: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignatureClass {
    L,
    R,
    N1,
    N2,
    CPlus,
    CMinus,
    XPlus,
    XMinus,
    Z,
}

impl NodeSignature {
    pub fn of(state: &DuplexState<'_>, comparator: &DuplexState<'_>, v: usize) -> NodeSignature {
        let d = |layer| comparator.is_driver(layer, v) as i8 - state.is_driver(layer, v) as i8;
        NodeSignature {
            delta1: d(Layer::One),
            delta2: d(Layer::Two),
        }
    }

    pub fn class(self) -> SignatureClass {
        match (self.delta1, self.delta2) {
            (-1, 0) => SignatureClass::L,
            (0, -1) => SignatureClass::R,
            (1, 0) => SignatureClass::N1,
            (0, 1) => SignatureClass::N2,
            (1, 1) => SignatureClass::CPlus,
            (-1, -1) => SignatureClass::CMinus,
            (-1, 1) => SignatureClass::XPlus,
            (1, -1) => SignatureClass::XMinus,
            _ => SignatureClass::Z,
        }
    }
}

fn xor_class(state: &DuplexState<'_>, v: usize) -> i64 {
    state.class(v).is_difference() as i64
}

/// Per component, its share of `Δ(state) − Δ(comparator)`: the change in
/// `[v ∈ D₁ ⊕ D₂]` summed over its nodes. Only degree-1 nodes can contribute.
pub fn component_delta_contributions(meta: &MetaGraph, state: &DuplexState<'_>, comparator: &DuplexState<'_>) -> Vec<i64> {
    meta.components
        .iter()
        .map(|c| {
            c.nodes
                .iter()
                .map(|&v| xor_class(state, v) - xor_class(comparator, v))
                .sum()
        })
        .collect()
}

/// Outcome of comparing a state against a list of feasible comparators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// No comparator has a smaller difference mass.
    Optimal { comparators: usize },
    /// Comparator `comparator` is strictly better; `witness` is an improving
    /// CLAP read off the oriented meta-graph.
    Improvable { comparator: usize, witness: ClapPath },
}

/// A directed `DD₁ → DD₂` walk inside a component whose endpoints both lie in
/// `DD₁ ∪ DD₂`, translated into a CLAP.
pub fn improving_clap(meta: &MetaGraph, state: &DuplexState<'_>, component: &MetaComponent) -> Option<ClapPath> {
    let start = *component.nodes.iter().find(|&&v| state.class(v) == NodeClass::Dd1)?;
    let out_edge = |v: usize, skip: Option<usize>| {
        component
            .edges
            .iter()
            .copied()
            .find(|&id| meta.edges[id].from == v && Some(id) != skip)
    };
    let mut segments = Vec::new();
    let mut cur = start;
    let mut came: Option<usize> = None;
    loop {
        let id = out_edge(cur, came)?;
        let e = &meta.edges[id];
        segments.push(Segment {
            from_node: e.from,
            to_node: e.to,
            layer: e.layer,
            witness: e.path.clone(),
        });
        cur = e.to;
        came = Some(id);
        match state.class(cur) {
            NodeClass::Dd2 => return Some(ClapPath::new(segments)),
            NodeClass::Dd1 => return None,
            _ if segments.len() > component.edges.len() => return None,
            _ => {}
        }
    }
}

/// Certifies that no comparator beats `state`, or extracts an improving CLAP
/// from the first comparator with smaller difference mass.
pub fn certify_optimal_or_find_witness(state: &DuplexState<'_>, comparators: &[DuplexState<'_>]) -> Result<Certificate> {
    for (idx, cmp) in comparators.iter().enumerate() {
        if cmp.difference_mass() >= state.difference_mass() {
            continue;
        }
        let meta = build_meta_graph(state, cmp)?;
        let contributions = component_delta_contributions(&meta, state, cmp);
        for (c, &gain) in meta.components.iter().zip(&contributions) {
            if gain <= 0 {
                continue;
            }
            let witness = improving_clap(&meta, state, c)
                .ok_or_else(|| Error::InfeasibleClap("positive component without a DD1→DD2 walk".into()))?;
            check_clap(&witness, state).map_err(Error::InfeasibleClap)?;
            return Ok(Certificate::Improvable {
                comparator: idx,
                witness,
            });
        }
        return Err(Error::InfeasibleClap(
            "comparator is better but no component contributes positively".into(),
        ));
    }
    Ok(Certificate::Optimal {
        comparators: comparators.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duplex::DuplexNetwork;
    use crate::graph::{build_bipartite, DirectedLayer};

    #[test]
    fn identical_matchings_have_no_components() {
        let b = build_bipartite(&DirectedLayer::new(3, [(0, 1), (1, 2)]).unwrap());
        let m = Matching::from_pairs(&b, [(0, 1), (1, 2)]).unwrap();
        assert!(sym_diff_components(Layer::One, &m, &m).unwrap().is_empty());
    }

    #[test]
    fn shared_tail_gives_one_minus_minus_path() {
        let b = build_bipartite(&DirectedLayer::new(3, [(0, 1), (0, 2)]).unwrap());
        let m = Matching::from_pairs(&b, [(0, 1)]).unwrap();
        let c = Matching::from_pairs(&b, [(0, 2)]).unwrap();
        let comps = sym_diff_components(Layer::One, &m, &c).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Path);
        let mut ends = comps[0].vminus_endpoints.clone();
        ends.sort_unstable();
        assert_eq!(ends, vec![1, 2]);
    }

    #[test]
    fn disjoint_single_edges_give_two_paths() {
        let b = build_bipartite(&DirectedLayer::new(4, [(0, 1), (2, 3)]).unwrap());
        let m = Matching::from_pairs(&b, [(0, 1)]).unwrap();
        let c = Matching::from_pairs(&b, [(2, 3)]).unwrap();
        let comps = sym_diff_components(Layer::One, &m, &c).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.kind == ComponentKind::Path && c.edge_count() == 1));
    }

    #[test]
    fn four_cycle_is_detected() {
        let b = build_bipartite(&DirectedLayer::new(2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap());
        let m = Matching::from_pairs(&b, [(0, 0), (1, 1)]).unwrap();
        let c = Matching::from_pairs(&b, [(0, 1), (1, 0)]).unwrap();
        let comps = sym_diff_components(Layer::One, &m, &c).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Cycle);
        assert_eq!(comps[0].edge_count(), 4);
    }

    #[test]
    fn size_mismatch_rejected() {
        let b = build_bipartite(&DirectedLayer::new(2, [(0, 1)]).unwrap());
        let m = Matching::from_pairs(&b, [(0, 1)]).unwrap();
        assert!(matches!(
            sym_diff_components(Layer::One, &m, &Matching::empty(2)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn state_against_itself_is_optimal_and_empty() {
        let net = DuplexNetwork::from_edges(3, [(0, 1)], [(1, 2)]).unwrap();
        let s = DuplexState::init(&net, None);
        let meta = build_meta_graph(&s, &s).unwrap();
        assert!(meta.is_empty());
        assert_eq!(component_delta_contributions(&meta, &s, &s).iter().sum::<i64>(), 0);
        let cert = certify_optimal_or_find_witness(&s, std::slice::from_ref(&s)).unwrap();
        assert_eq!(cert, Certificate::Optimal { comparators: 1 });
    }

    #[test]
    fn dd_endpoint_component_contributes_two_and_yields_a_clap() {
        let net = DuplexNetwork::from_edges(
            6,
            [(1, 0), (2, 5), (0, 1), (0, 3), (5, 2), (5, 4)],
            [(1, 0), (2, 1), (4, 2), (0, 3), (0, 5)],
        )
        .unwrap();
        let b1 = net.bipartite(Layer::One);
        let m2 = Matching::from_pairs(net.bipartite(Layer::Two), [(1, 0), (2, 1), (4, 2), (0, 3)]).unwrap();
        let s = DuplexState::from_matchings(
            &net,
            Matching::from_pairs(b1, [(1, 0), (2, 5), (0, 3), (5, 4)]).unwrap(),
            m2.clone(),
        )
        .unwrap();
        let c = DuplexState::from_matchings(&net, Matching::from_pairs(b1, [(1, 0), (2, 5), (0, 3), (5, 2)]).unwrap(), m2)
            .unwrap();
        assert_eq!((s.difference_mass(), c.difference_mass()), (4, 2));
        let meta = build_meta_graph(&s, &c).unwrap();
        assert_eq!(meta.edges.len(), 1);
        assert_eq!((meta.edges[0].from, meta.edges[0].to), (2, 4));
        assert_eq!(component_delta_contributions(&meta, &s, &c), vec![2]);
        assert_eq!(NodeSignature::of(&s, &c, 2).class(), SignatureClass::L);
        // The far end leaves DD₂ by gaining a layer-1 driver.
        assert_eq!(NodeSignature::of(&s, &c, 4).class(), SignatureClass::N1);
        match certify_optimal_or_find_witness(&s, std::slice::from_ref(&c)).unwrap() {
            Certificate::Improvable { witness, comparator } => {
                assert_eq!(comparator, 0);
                assert_eq!(witness.nodes(), vec![2, 4]);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }
}
