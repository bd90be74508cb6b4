//! Exact minimum union by enumerating every maximum matching of each layer.
//!
//! Enumeration is a binary partition: pick an unforced edge `e` of the current
//! matching `M`; the matchings containing `e` are explored with `e` forced, and
//! those avoiding it start from `M − e` re-augmented once with `e` banned.

use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use crate::baselines::BaselineResult;
use crate::duplex::DuplexNetwork;
use crate::error::{Error, Result};
use crate::graph::{BipartiteRep, Layer};
use crate::matching::{driver_set, max_matching, DriverSet, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Maximum matchings enumerated per layer.
    pub max_matchings_per_layer: u64,
    /// Distinct driver-set pairs evaluated.
    pub max_pairs: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_matchings_per_layer: 1_000_000,
            max_pairs: 1_000_000,
        }
    }
}

/// Every maximum matching of one layer, grouped by driver set.
#[derive(Debug, Clone)]
pub struct MatchingFamily {
    /// Number of distinct maximum matchings.
    pub matching_count: u64,
    /// One representative matching per distinct driver set, sorted by driver set.
    pub representatives: Vec<(DriverSet, Matching)>,
}

struct Enumerator<'a> {
    b: &'a BipartiteRep,
    cap: u64,
    banned: Vec<bool>,
    forced_plus: Vec<bool>,
    forced_minus: Vec<bool>,
    count: u64,
    by_drivers: HashMap<Vec<usize>, Matching>,
}

impl<'a> Enumerator<'a> {
    fn edge_index(&self, u: usize, v: usize) -> usize {
        self.b.edges().binary_search(&(u, v)).expect("matching edge exists")
    }

    fn emit(&mut self, m: &Matching) -> Result<()> {
        self.count += 1;
        if self.count > self.cap {
            return Err(Error::OracleInfeasible(format!(
                "more than {} maximum matchings in one layer",
                self.cap
            )));
        }
        let d = driver_set(m, self.b.node_count());
        self.by_drivers.entry(d.members().to_vec()).or_insert_with(|| m.clone());
        Ok(())
    }

    /// One augmentation of `m` avoiding banned edges and forced vertices.
    fn augment(&self, m: &mut Matching) -> bool {
        let n = self.b.node_count();
        let mut via_minus = vec![usize::MAX; n];
        let mut parent_plus: Vec<Option<usize>> = vec![None; n];
        let mut seen_plus = vec![false; n];
        let mut queue = VecDeque::new();
        for u in 0..n {
            if !self.forced_plus[u] && m.mate_of_plus(u).is_none() {
                seen_plus[u] = true;
                queue.push_back(u);
            }
        }
        while let Some(u) = queue.pop_front() {
            for (k, &v) in self.b.plus_neighbors(u).iter().enumerate() {
                let idx = self.b.edges().partition_point(|&e| e < (u, 0)) + k;
                if self.banned[idx] || self.forced_minus[v] || via_minus[v] != usize::MAX {
                    continue;
                }
                if m.mate_of_plus(u) == Some(v) {
                    continue;
                }
                via_minus[v] = u;
                match m.mate_of_minus(v) {
                    None => {
                        let mut v = v;
                        loop {
                            let u = via_minus[v];
                            let prev = m.mate_of_plus(u);
                            if let Some(p) = prev {
                                m.unlink(u, p);
                            }
                            m.link(u, v);
                            match parent_plus[u] {
                                Some(_) => v = prev.expect("inner vertex was matched"),
                                None => return true,
                            }
                        }
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
        false
    }

    fn recurse(&mut self, m: Matching) -> Result<()> {
        let pick = m.pairs().find(|&(u, v)| !(self.forced_plus[u] && self.forced_minus[v]));
        let Some((u, v)) = pick else {
            return self.emit(&m);
        };
        self.forced_plus[u] = true;
        self.forced_minus[v] = true;
        let with_e = self.recurse(m.clone());
        self.forced_plus[u] = false;
        self.forced_minus[v] = false;
        with_e?;

        let idx = self.edge_index(u, v);
        self.banned[idx] = true;
        let mut without = m;
        without.unlink(u, v);
        let result = if self.augment(&mut without) {
            self.recurse(without)
        } else {
            Ok(())
        };
        self.banned[idx] = false;
        result
    }
}

/// Enumerates all maximum matchings of `b`, failing once more than `cap` exist.
pub fn enumerate_maximum_matchings(b: &BipartiteRep, cap: u64) -> Result<MatchingFamily> {
    let n = b.node_count();
    let mut e = Enumerator {
        b,
        cap,
        banned: vec![false; b.edge_count()],
        forced_plus: vec![false; n],
        forced_minus: vec![false; n],
        count: 0,
        by_drivers: HashMap::new(),
    };
    e.recurse(max_matching(b, None))?;
    let mut representatives: Vec<(DriverSet, Matching)> = e
        .by_drivers
        .into_iter()
        .map(|(d, m)| (DriverSet::from_members(d), m))
        .collect();
    representatives.sort_by(|a, b| a.0.members().cmp(b.0.members()));
    Ok(MatchingFamily {
        matching_count: e.count,
        representatives,
    })
}

/// Both layers' families, checked against the pair cap.
pub fn enumerate_families(net: &DuplexNetwork, limits: OracleLimits) -> Result<[MatchingFamily; 2]> {
    let f1 = enumerate_maximum_matchings(net.bipartite(Layer::One), limits.max_matchings_per_layer)?;
    let f2 = enumerate_maximum_matchings(net.bipartite(Layer::Two), limits.max_matchings_per_layer)?;
    let pairs = f1.representatives.len() as u64 * f2.representatives.len() as u64;
    if pairs > limits.max_pairs {
        return Err(Error::OracleInfeasible(format!(
            "{pairs} driver-set pairs exceed the cap of {}",
            limits.max_pairs
        )));
    }
    Ok([f1, f2])
}

/// Minimum `|D₁ ∪ D₂|` over all pairs of maximum matchings. Ties go to the
/// lexicographically smallest `(D₁, D₂)`.
pub fn exact_min_union(net: &DuplexNetwork, limits: OracleLimits) -> Result<BaselineResult> {
    let start = Instant::now();
    let [f1, f2] = enumerate_families(net, limits)?;
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, (d1, _)) in f1.representatives.iter().enumerate() {
        for (j, (d2, _)) in f2.representatives.iter().enumerate() {
            let size = d1.union_len(d2);
            if best.is_none_or(|(s, _, _)| size < s) {
                best = Some((size, i, j));
            }
        }
    }
    let (size, i, j) = best.expect("every layer has at least one maximum matching");
    Ok(BaselineResult {
        final_union_size: size,
        drivers: (f1.representatives[i].0.clone(), f2.representatives[j].0.clone()),
        elapsed_secs: start.elapsed().as_secs_f64(),
        work: f1.representatives.len() * f2.representatives.len(),
    })
}
