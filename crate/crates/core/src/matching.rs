//! Bipartite matchings, Hopcroft–Karp, and driver-set extraction.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::BipartiteRep;

/// A matching stored as two mate arrays: `V⁻ → V⁺` and `V⁺ → V⁻`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    mate_of_minus: Vec<Option<usize>>,
    mate_of_plus: Vec<Option<usize>>,
    size: usize,
}

impl Matching {
    pub fn empty(n: usize) -> Matching {
        Matching {
            mate_of_minus: vec![None; n],
            mate_of_plus: vec![None; n],
            size: 0,
        }
    }

    /// Builds a matching from `(u_plus, v_minus)` pairs, checking that every
    /// pair is an edge of `b` and that no vertex is used twice.
    pub fn from_pairs(b: &BipartiteRep, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Matching> {
        let mut m = Matching::empty(b.node_count());
        for (u, v) in pairs {
            if !b.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!("({u}+, {v}-) is not an edge")));
            }
            if m.mate_of_plus[u].is_some() || m.mate_of_minus[v].is_some() {
                return Err(Error::InvalidMatching(format!("({u}+, {v}-) reuses a matched vertex")));
            }
            m.link(u, v);
        }
        Ok(m)
    }

    pub fn node_count(&self) -> usize {
        self.mate_of_minus.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mate_of_minus(&self, v: usize) -> Option<usize> {
        self.mate_of_minus[v]
    }

    #[inline]
    pub fn mate_of_plus(&self, u: usize) -> Option<usize> {
        self.mate_of_plus[u]
    }

    #[inline]
    pub fn is_minus_matched(&self, v: usize) -> bool {
        self.mate_of_minus[v].is_some()
    }

    #[inline]
    pub fn contains(&self, u_plus: usize, v_minus: usize) -> bool {
        self.mate_of_plus[u_plus] == Some(v_minus)
    }

    /// Matched `(u_plus, v_minus)` pairs ordered by `v_minus`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate_of_minus
            .iter()
            .enumerate()
            .filter_map(|(v, u)| u.map(|u| (u, v)))
    }

    pub(crate) fn link(&mut self, u: usize, v: usize) {
        debug_assert!(self.mate_of_plus[u].is_none() && self.mate_of_minus[v].is_none());
        self.mate_of_plus[u] = Some(v);
        self.mate_of_minus[v] = Some(u);
        self.size += 1;
    }

    pub(crate) fn unlink(&mut self, u: usize, v: usize) {
        debug_assert!(self.contains(u, v));
        self.mate_of_plus[u] = None;
        self.mate_of_minus[v] = None;
        self.size -= 1;
    }

    /// Checks mutual consistency of the mate arrays and edge membership in `b`.
    pub fn validate(&self, b: &BipartiteRep) -> Result<()> {
        if self.node_count() != b.node_count() {
            return Err(Error::InvalidMatching("node count differs".into()));
        }
        let mut count = 0;
        for (v, mate) in self.mate_of_minus.iter().enumerate() {
            if let Some(u) = *mate {
                if self.mate_of_plus[u] != Some(v) {
                    return Err(Error::InvalidMatching(format!("mate arrays disagree at {v}-")));
                }
                if !b.has_edge(u, v) {
                    return Err(Error::InvalidMatching(format!("({u}+, {v}-) is not an edge")));
                }
                count += 1;
            }
        }
        let plus_count = self.mate_of_plus.iter().filter(|m| m.is_some()).count();
        if count != self.size || plus_count != self.size {
            return Err(Error::InvalidMatching(format!(
                "size {} but {count} matched minus / {plus_count} matched plus",
                self.size
            )));
        }
        Ok(())
    }
}

/// Nodes whose `V⁻` copy is unmatched, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DriverSet {
    members: Vec<usize>,
}

impl DriverSet {
    pub fn from_members(mut members: Vec<usize>) -> DriverSet {
        members.sort_unstable();
        members.dedup();
        DriverSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn union_len(&self, other: &DriverSet) -> usize {
        let common = self.iter().filter(|&v| other.contains(v)).count();
        self.len() + other.len() - common
    }
}

pub fn driver_set(m: &Matching, n: usize) -> DriverSet {
    debug_assert_eq!(m.node_count(), n);
    let members: Vec<usize> = (0..n).filter(|&v| !m.is_minus_matched(v)).collect();
    debug_assert_eq!(members.len(), n - m.size());
    DriverSet { members }
}

/// Maximum matching by Hopcroft–Karp with `V⁺` on the left.
///
/// With `seed = None` adjacency is scanned in ascending order and the result
/// is deterministic. With a seed, every adjacency list and the free-vertex scan
/// order are shuffled, so different seeds can land on different maximum
/// matchings of the same size.
pub fn max_matching(b: &BipartiteRep, seed: Option<u64>) -> Matching {
    let n = b.node_count();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut targets = Vec::with_capacity(b.edge_count());
    offsets.push(0);
    for u in 0..n {
        targets.extend_from_slice(b.plus_neighbors(u));
        offsets.push(targets.len());
    }
    let mut scan: Vec<usize> = (0..n).collect();
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for u in 0..n {
            targets[offsets[u]..offsets[u + 1]].shuffle(&mut rng);
        }
        scan.shuffle(&mut rng);
    }
    HopcroftKarp::new(n, &offsets, &targets, &scan).run()
}

const INF: u32 = u32::MAX;

struct HopcroftKarp<'a> {
    n: usize,
    offsets: &'a [usize],
    targets: &'a [usize],
    scan: &'a [usize],
    matching: Matching,
    dist: Vec<u32>,
    cursor: Vec<usize>,
}

impl<'a> HopcroftKarp<'a> {
    fn new(n: usize, offsets: &'a [usize], targets: &'a [usize], scan: &'a [usize]) -> Self {
        HopcroftKarp {
            n,
            offsets,
            targets,
            scan,
            matching: Matching::empty(n),
            dist: vec![INF; n],
            cursor: vec![0; n],
        }
    }

    fn run(mut self) -> Matching {
        // Greedy warm start in scan order.
        for &u in self.scan {
            for &v in &self.targets[self.offsets[u]..self.offsets[u + 1]] {
                if self.matching.mate_of_minus[v].is_none() {
                    self.matching.link(u, v);
                    break;
                }
            }
        }
        let mut stack = Vec::new();
        while self.layer() {
            for u in 0..self.n {
                self.cursor[u] = self.offsets[u];
            }
            for i in 0..self.scan.len() {
                let u = self.scan[i];
                if self.matching.mate_of_plus[u].is_none() {
                    self.augment_from(u, &mut stack);
                }
            }
        }
        self.matching
    }

    /// BFS layering from free left vertices; true if a free right vertex is reachable.
    fn layer(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for &u in self.scan {
            if self.matching.mate_of_plus[u].is_none() {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.targets[self.offsets[u]..self.offsets[u + 1]] {
                match self.matching.mate_of_minus[v] {
                    None => found = true,
                    Some(w) if self.dist[w] == INF => {
                        self.dist[w] = self.dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        found
    }

    fn augment_from(&mut self, root: usize, stack: &mut Vec<usize>) -> bool {
        stack.clear();
        stack.push(root);
        while let Some(&u) = stack.last() {
            if self.cursor[u] == self.offsets[u + 1] {
                self.dist[u] = INF;
                stack.pop();
                continue;
            }
            let v = self.targets[self.cursor[u]];
            self.cursor[u] += 1;
            match self.matching.mate_of_minus[v] {
                None => {
                    // Each u on the stack takes the neighbor it last descended through.
                    for &u in stack.iter().rev() {
                        let v = self.targets[self.cursor[u] - 1];
                        self.matching.mate_of_plus[u] = Some(v);
                        self.matching.mate_of_minus[v] = Some(u);
                    }
                    self.matching.size += 1;
                    return true;
                }
                Some(w) if self.dist[w] != INF && self.dist[w] == self.dist[u] + 1 => stack.push(w),
                Some(_) => {}
            }
        }
        false
    }
}

/// One-shot augmenting-path search (BFS from every free `V⁺`). `None` means
/// the matching is maximum by Berge's criterion.
pub fn find_augmenting_path(b: &BipartiteRep, m: &Matching) -> Option<Vec<(usize, usize)>> {
    let n = b.node_count();
    let mut parent_plus: Vec<Option<usize>> = vec![None; n]; // V⁺ reached from which V⁻ (None for roots)
    let mut seen_plus = vec![false; n];
    let mut seen_minus = vec![false; n];
    let mut via_minus: Vec<usize> = vec![usize::MAX; n]; // V⁻ reached from which V⁺
    let mut queue = VecDeque::new();
    for u in 0..n {
        if m.mate_of_plus(u).is_none() {
            seen_plus[u] = true;
            queue.push_back(u);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in b.plus_neighbors(u) {
            if seen_minus[v] {
                continue;
            }
            seen_minus[v] = true;
            via_minus[v] = u;
            match m.mate_of_minus(v) {
                None => {
                    let mut path = Vec::new();
                    let mut v = v;
                    loop {
                        let u = via_minus[v];
                        path.push((u, v));
                        match parent_plus[u] {
                            None => break,
                            Some(prev) => {
                                path.push((u, prev));
                                v = prev;
                            }
                        }
                    }
                    path.reverse();
                    return Some(path);
                }
                Some(w) => {
                    if !seen_plus[w] {
                        seen_plus[w] = true;
                        parent_plus[w] = Some(v);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_bipartite, DirectedLayer};

    fn rep(n: usize, edges: &[(usize, usize)]) -> BipartiteRep {
        build_bipartite(&DirectedLayer::new(n, edges.iter().copied()).unwrap())
    }

    #[test]
    fn path_graph_matches_two_edges() {
        let b = rep(3, &[(0, 1), (1, 2)]);
        let m = max_matching(&b, None);
        assert_eq!(m.size(), 2);
        assert_eq!(driver_set(&m, 3).members(), &[0]);
        m.validate(&b).unwrap();
    }

    #[test]
    fn empty_graph_has_empty_matching() {
        let b = rep(5, &[]);
        let m = max_matching(&b, None);
        assert_eq!(m.size(), 0);
        assert_eq!(driver_set(&m, 5).members(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn all_self_loops_give_a_perfect_matching() {
        let edges: Vec<_> = (0..6).map(|i| (i, i)).collect();
        let b = rep(6, &edges);
        let m = max_matching(&b, Some(3));
        assert_eq!(m.size(), 6);
        assert!(driver_set(&m, 6).is_empty());
    }

    #[test]
    fn driver_set_of_empty_matching_is_everything() {
        let m = Matching::empty(3);
        assert_eq!(driver_set(&m, 3).members(), &[0, 1, 2]);
    }

    #[test]
    fn driver_set_of_explicit_matching() {
        let b = rep(3, &[(0, 1), (1, 2)]);
        let m = Matching::from_pairs(&b, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(driver_set(&m, 3).members(), &[0]);
    }

    #[test]
    fn perfect_matching_has_no_drivers() {
        let b = rep(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let m = max_matching(&b, None);
        assert_eq!(m.size(), 4);
        assert!(driver_set(&m, 4).is_empty());
    }

    #[test]
    fn from_pairs_rejects_non_edges_and_conflicts() {
        let b = rep(3, &[(0, 1), (1, 1)]);
        assert!(Matching::from_pairs(&b, [(0, 2)]).is_err());
        assert!(Matching::from_pairs(&b, [(0, 1), (1, 1)]).is_err());
    }

    #[test]
    fn augmenting_path_found_for_submaximum_matching() {
        let b = rep(3, &[(0, 1), (1, 2), (0, 2)]);
        let m = Matching::from_pairs(&b, [(0, 2)]).unwrap();
        let path = find_augmenting_path(&b, &m).expect("matching is not maximum");
        assert_eq!(path.len() % 2, 1);
        assert!(find_augmenting_path(&b, &max_matching(&b, None)).is_none());
    }

    #[test]
    fn deterministic_without_seed() {
        let b = rep(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]);
        assert_eq!(max_matching(&b, None), max_matching(&b, None));
    }
}
