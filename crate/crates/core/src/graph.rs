//! Directed layers and their bipartite representation.
//!
//! Node ids are dense `0..n`. A directed edge `(u, v)` becomes the bipartite
//! edge `(u⁺, v⁻)`; both sides are indexed by the same node id.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two layers of a duplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Layer {
    One,
    Two,
}

impl Layer {
    pub const BOTH: [Layer; 2] = [Layer::One, Layer::Two];

    pub fn other(self) -> Layer {
        match self {
            Layer::One => Layer::Two,
            Layer::Two => Layer::One,
        }
    }

    /// 0 for layer one, 1 for layer two.
    pub fn index(self) -> usize {
        match self {
            Layer::One => 0,
            Layer::Two => 1,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Compressed adjacency: neighbors of node `i` are `targets[offsets[i]..offsets[i + 1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Csr {
    /// `pairs` must be sorted by `(key, value)`.
    fn from_sorted(n: usize, pairs: impl Iterator<Item = (usize, usize)>) -> Csr {
        let mut offsets = vec![0usize; n + 1];
        let mut targets = Vec::new();
        for (key, value) in pairs {
            offsets[key + 1] += 1;
            targets.push(value);
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Csr { offsets, targets }
    }

    #[inline]
    fn row(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// A directed graph on nodes `0..n` with no parallel edges. Self-loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedLayer {
    n: usize,
    edges: Vec<(usize, usize)>,
    out_adj: Csr,
    in_adj: Csr,
    collapsed_duplicates: usize,
}

impl DirectedLayer {
    /// Builds a layer, collapsing repeated edges. The number of collapsed
    /// repeats is kept in [`DirectedLayer::collapsed_duplicates`].
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<DirectedLayer> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(tail, head)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::EdgeOutOfRange { tail, head, n });
        }
        let raw = edges.len();
        edges.sort_unstable();
        edges.dedup();
        let collapsed_duplicates = raw - edges.len();

        let out_adj = Csr::from_sorted(n, edges.iter().copied());
        let mut reversed: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (v, u)).collect();
        reversed.sort_unstable();
        let in_adj = Csr::from_sorted(n, reversed.into_iter());

        Ok(DirectedLayer {
            n,
            edges,
            out_adj,
            in_adj,
            collapsed_duplicates,
        })
    }

    pub fn empty(n: usize) -> DirectedLayer {
        DirectedLayer::new(n, std::iter::empty()).expect("empty layer is always valid")
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(source, target)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        self.out_adj.row(u)
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        self.in_adj.row(v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out_adj.row(u).binary_search(&v).is_ok()
    }

    pub fn collapsed_duplicates(&self) -> usize {
        self.collapsed_duplicates
    }

    /// Average total degree `2|E| / n`.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.n as f64
        }
    }

    /// Nodes incident to at least one edge.
    pub fn present_node_count(&self) -> usize {
        (0..self.n)
            .filter(|&v| !self.out_adj.row(v).is_empty() || !self.in_adj.row(v).is_empty())
            .count()
    }
}

/// Bipartite graph `(V⁺ ∪ V⁻, E_B)` with one edge `(u⁺, v⁻)` per directed edge `(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteRep {
    n: usize,
    edges: Vec<(usize, usize)>,
    plus_adj: Csr,
    minus_adj: Csr,
}

impl BipartiteRep {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(u_plus, v_minus)` pairs sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `V⁻` neighbors of `u⁺`, ascending.
    #[inline]
    pub fn plus_neighbors(&self, u: usize) -> &[usize] {
        self.plus_adj.row(u)
    }

    /// `V⁺` neighbors of `v⁻`, ascending.
    #[inline]
    pub fn minus_neighbors(&self, v: usize) -> &[usize] {
        self.minus_adj.row(v)
    }

    pub fn has_edge(&self, u_plus: usize, v_minus: usize) -> bool {
        u_plus < self.n
            && v_minus < self.n
            && self.plus_adj.row(u_plus).binary_search(&v_minus).is_ok()
    }
}

pub fn build_bipartite(layer: &DirectedLayer) -> BipartiteRep {
    BipartiteRep {
        n: layer.n,
        edges: layer.edges.clone(),
        plus_adj: layer.out_adj.clone(),
        minus_adj: layer.in_adj.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartite_mirrors_directed_edges() {
        let layer = DirectedLayer::new(3, [(1, 2), (0, 1)]).unwrap();
        let b = build_bipartite(&layer);
        assert_eq!(b.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(b.edge_count(), layer.edge_count());
        assert_eq!(b.plus_neighbors(0), &[1]);
        assert_eq!(b.minus_neighbors(2), &[1]);
    }

    #[test]
    fn empty_layer_has_no_bipartite_edges() {
        let b = build_bipartite(&DirectedLayer::empty(4));
        assert_eq!(b.node_count(), 4);
        assert_eq!(b.edge_count(), 0);
    }

    #[test]
    fn self_loop_is_a_bipartite_edge() {
        let b = build_bipartite(&DirectedLayer::new(3, [(2, 2)]).unwrap());
        assert!(b.has_edge(2, 2));
        assert_eq!(b.edges(), &[(2, 2)]);
    }

    #[test]
    fn duplicates_are_collapsed_and_counted() {
        let layer = DirectedLayer::new(3, [(0, 1), (0, 1), (1, 2), (0, 1)]).unwrap();
        assert_eq!(layer.edge_count(), 2);
        assert_eq!(layer.collapsed_duplicates(), 2);
    }

    #[test]
    fn out_of_range_edge_is_rejected() {
        let err = DirectedLayer::new(2, [(0, 2)]).unwrap_err();
        assert!(matches!(err, Error::EdgeOutOfRange { head: 2, .. }));
    }

    #[test]
    fn adjacency_matches_edge_list() {
        let layer = DirectedLayer::new(4, [(3, 0), (0, 2), (0, 1), (2, 0)]).unwrap();
        for &(u, v) in layer.edges() {
            assert!(layer.out_neighbors(u).contains(&v));
            assert!(layer.in_neighbors(v).contains(&u));
        }
        let total_out: usize = (0..4).map(|v| layer.out_neighbors(v).len()).sum();
        let total_in: usize = (0..4).map(|v| layer.in_neighbors(v).len()).sum();
        assert_eq!(total_out, layer.edge_count());
        assert_eq!(total_in, layer.edge_count());
    }
}
