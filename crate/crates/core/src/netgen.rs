//! Synthetic directed layers and duplexes.
//!
//! Average degree is total degree: `⟨k⟩ = 2|E| / n`. Generators never emit
//! self-loops.

use std::collections::HashSet;
use std::fmt;

use rand::seq::index;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::duplex::DuplexNetwork;
use crate::error::{Error, Result};
use crate::graph::DirectedLayer;
use crate::seed::derive_seed;

/// Generator for a single layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerModel {
    Er,
    Ba,
}

/// Generator pairing for a duplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DuplexModel {
    #[serde(rename = "ER-ER", alias = "er")]
    ErEr,
    #[serde(rename = "BA-BA", alias = "ba")]
    BaBa,
    /// Layer 1 ER, layer 2 BA.
    #[serde(rename = "ER-BA", alias = "hybrid")]
    ErBa,
}

impl DuplexModel {
    pub const ALL: [DuplexModel; 3] = [DuplexModel::ErEr, DuplexModel::BaBa, DuplexModel::ErBa];

    pub fn layers(self) -> (LayerModel, LayerModel) {
        match self {
            DuplexModel::ErEr => (LayerModel::Er, LayerModel::Er),
            DuplexModel::BaBa => (LayerModel::Ba, LayerModel::Ba),
            DuplexModel::ErBa => (LayerModel::Er, LayerModel::Ba),
        }
    }

    pub fn parse(s: &str) -> Result<DuplexModel> {
        match s.to_ascii_uppercase().as_str() {
            "ER-ER" | "ER" => Ok(DuplexModel::ErEr),
            "BA-BA" | "BA" => Ok(DuplexModel::BaBa),
            "ER-BA" | "HYBRID" => Ok(DuplexModel::ErBa),
            _ => Err(Error::InvalidParameter(format!("unknown model `{s}`"))),
        }
    }
}

impl fmt::Display for DuplexModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DuplexModel::ErEr => "ER-ER",
            DuplexModel::BaBa => "BA-BA",
            DuplexModel::ErBa => "ER-BA",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub model: DuplexModel,
    pub n: usize,
    pub avg_degree: f64,
    /// Target Jaccard similarity of the two edge sets.
    #[serde(default)]
    pub overlap: Option<f64>,
    pub seed: u64,
}

fn check_degree(n: usize, avg_degree: f64) -> Result<()> {
    if !avg_degree.is_finite() || avg_degree < 0.0 {
        return Err(Error::InvalidParameter(format!("average degree {avg_degree} must be finite and ≥ 0")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("node count must be ≥ 1".into()));
    }
    Ok(())
}

/// Maps a pair index in `0..n(n−1)` to an ordered pair without self-loops.
fn pair_at(n: usize, idx: usize) -> (usize, usize) {
    let u = idx / (n - 1);
    let r = idx % (n - 1);
    (u, if r >= u { r + 1 } else { r })
}

/// Directed Erdős–Rényi layer with exactly `round(n⟨k⟩/2)` edges drawn
/// uniformly without replacement from the `n(n−1)` ordered pairs.
pub fn gen_er(n: usize, avg_degree: f64, seed: u64) -> Result<DirectedLayer> {
    check_degree(n, avg_degree)?;
    if avg_degree > (n - 1) as f64 {
        return Err(Error::InfeasibleDensity(format!(
            "⟨k⟩ = {avg_degree} exceeds n − 1 = {}",
            n - 1
        )));
    }
    let m = (n as f64 * avg_degree / 2.0).round() as usize;
    if m == 0 {
        return Ok(DirectedLayer::empty(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = n * (n - 1);
    let edges = index::sample(&mut rng, total, m).into_iter().map(|i| pair_at(n, i));
    DirectedLayer::new(n, edges)
}

/// Attachment count `round(⟨k⟩/2)` used by [`gen_ba`].
pub fn ba_attachment(avg_degree: f64) -> usize {
    (avg_degree / 2.0).round() as usize
}

fn ba_undirected(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity((n - m) * m);
    let mut targets: Vec<usize> = (0..m).collect();
    let mut repeated: Vec<usize> = Vec::with_capacity(2 * (n - m) * m);
    let mut chosen = HashSet::with_capacity(m);
    for source in m..n {
        for &t in &targets {
            edges.push((source, t));
        }
        repeated.extend_from_slice(&targets);
        repeated.extend(std::iter::repeat_n(source, m));
        chosen.clear();
        targets.clear();
        while targets.len() < m {
            let x = repeated[rng.gen_range(0..repeated.len())];
            if chosen.insert(x) {
                targets.push(x);
            }
        }
    }
    edges
}

/// Barabási–Albert preferential attachment with `m = round(⟨k⟩/2)` edges per
/// new node, then a fair coin for each edge's direction. Node `m` attaches to
/// the seed nodes `0..m`, giving `(n − m)·m` edges.
pub fn gen_ba(n: usize, avg_degree: f64, seed: u64) -> Result<DirectedLayer> {
    check_degree(n, avg_degree)?;
    let m = ba_attachment(avg_degree);
    if m == 0 {
        return Err(Error::InfeasibleDensity(format!(
            "⟨k⟩ = {avg_degree} gives attachment count 0; BA needs ⟨k⟩ ≥ 1"
        )));
    }
    if m >= n {
        return Err(Error::InfeasibleDensity(format!(
            "attachment count {m} needs more than {n} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let undirected = ba_undirected(n, m, &mut rng);
    let edges: Vec<(usize, usize)> = undirected
        .into_iter()
        .map(|(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
        .collect();
    DirectedLayer::new(n, edges)
}

/// `|A ∩ B| / |A ∪ B|` of two edge sets; 1 when both are empty.
pub fn jaccard(a: &DirectedLayer, b: &DirectedLayer) -> f64 {
    let sa: HashSet<&(usize, usize)> = a.edges().iter().collect();
    let inter = b.edges().iter().filter(|e| sa.contains(e)).count();
    let union = a.edge_count() + b.edge_count() - inter;
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

/// Tolerance on achieved Jaccard similarity.
pub const JACCARD_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone)]
pub struct OverlapReport {
    pub layer: DirectedLayer,
    pub target: f64,
    pub achieved: f64,
}

impl OverlapReport {
    pub fn within_tolerance(&self) -> bool {
        (self.achieved - self.target).abs() <= JACCARD_TOLERANCE
    }
}

/// A second layer with the same node and edge count as `base` whose edge set
/// has Jaccard similarity close to `rho` with it.
///
/// Keeps `r = round(2mρ/(1+ρ))` random base edges and draws the other `m − r`
/// from outside the base set, so `J = r/(2m − r)`. ER draws uniform pairs; BA
/// draws edges of fresh BA layers of matching density.
pub fn gen_overlapped_layer(base: &DirectedLayer, rho: f64, model: LayerModel, seed: u64) -> Result<OverlapReport> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::InvalidParameter(format!("overlap {rho} outside [0, 1]")));
    }
    let n = base.node_count();
    let m = base.edge_count();
    let keep = ((2.0 * m as f64 * rho / (1.0 + rho)).round() as usize).min(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base_set: HashSet<(usize, usize)> = base.edges().iter().copied().collect();
    let mut edges: Vec<(usize, usize)> = index::sample(&mut rng, m, keep)
        .into_iter()
        .map(|i| base.edges()[i])
        .collect();
    let mut taken: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let need = m - keep;
    let available = if n > 1 { n * (n - 1) - m } else { 0 };
    let target_len = keep + need.min(available);
    let fresh = |e: &(usize, usize), taken: &HashSet<(usize, usize)>| !base_set.contains(e) && !taken.contains(e);

    if model == LayerModel::Ba && n > 1 {
        let avg = 2.0 * m as f64 / n as f64;
        let mut round = 0u64;
        while edges.len() < target_len && round < 64 && ba_attachment(avg) >= 1 && ba_attachment(avg) < n {
            let layer = gen_ba(n, avg, derive_seed(seed, 0xBA, round))?;
            let mut pool = layer.edges().to_vec();
            pool.sort_unstable();
            let mut order: Vec<usize> = (0..pool.len()).collect();
            rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
            for i in order {
                if edges.len() >= target_len {
                    break;
                }
                let e = pool[i];
                if fresh(&e, &taken) {
                    taken.insert(e);
                    edges.push(e);
                }
            }
            round += 1;
        }
    }
    if edges.len() < target_len {
        // Uniform pairs; dense complements are enumerated instead of rejected.
        let total = n * (n - 1);
        if (total - taken.len().max(m)) * 4 < total {
            let mut rest: Vec<(usize, usize)> = (0..total)
                .map(|i| pair_at(n, i))
                .filter(|e| fresh(e, &taken))
                .collect();
            rand::seq::SliceRandom::shuffle(rest.as_mut_slice(), &mut rng);
            rest.truncate(target_len - edges.len());
            edges.extend(rest);
        } else {
            while edges.len() < target_len {
                let e = pair_at(n, rng.gen_range(0..total));
                if fresh(&e, &taken) {
                    taken.insert(e);
                    edges.push(e);
                }
            }
        }
    }
    let layer = DirectedLayer::new(n, edges)?;
    let achieved = jaccard(base, &layer);
    Ok(OverlapReport {
        layer,
        target: rho,
        achieved,
    })
}

#[derive(Debug, Clone)]
pub struct GeneratedDuplex {
    pub net: DuplexNetwork,
    pub spec: GenSpec,
    /// Jaccard similarity of the generated edge sets.
    pub jaccard: f64,
}

impl GeneratedDuplex {
    /// False only when an overlap was requested and missed by more than the tolerance.
    pub fn overlap_within_tolerance(&self) -> bool {
        self.spec
            .overlap
            .is_none_or(|rho| (self.jaccard - rho).abs() <= JACCARD_TOLERANCE)
    }
}

fn gen_layer(model: LayerModel, n: usize, avg_degree: f64, seed: u64) -> Result<DirectedLayer> {
    match model {
        LayerModel::Er => gen_er(n, avg_degree, seed),
        LayerModel::Ba => gen_ba(n, avg_degree, seed),
    }
}

/// Both layers from one spec; layer streams are derived from `spec.seed`.
pub fn generate_duplex(spec: &GenSpec) -> Result<GeneratedDuplex> {
    let (m1, m2) = spec.model.layers();
    let l1 = gen_layer(m1, spec.n, spec.avg_degree, derive_seed(spec.seed, 1, 0))?;
    let l2 = match spec.overlap {
        Some(rho) => gen_overlapped_layer(&l1, rho, m2, derive_seed(spec.seed, 2, 1))?.layer,
        None => gen_layer(m2, spec.n, spec.avg_degree, derive_seed(spec.seed, 2, 0))?,
    };
    let jaccard = jaccard(&l1, &l2);
    Ok(GeneratedDuplex {
        net: DuplexNetwork::new(l1, l2)?,
        spec: *spec,
        jaccard,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_edge_count_and_no_self_loops() {
        let l = gen_er(1000, 4.0, 1).unwrap();
        assert_eq!(l.edge_count(), 2000);
        assert!(l.edges().iter().all(|&(u, v)| u != v));
    }

    #[test]
    fn er_zero_degree_is_empty() {
        assert_eq!(gen_er(50, 0.0, 3).unwrap().edge_count(), 0);
    }

    #[test]
    fn er_is_deterministic_per_seed() {
        assert_eq!(gen_er(200, 5.0, 7).unwrap(), gen_er(200, 5.0, 7).unwrap());
        assert_ne!(gen_er(200, 5.0, 7).unwrap(), gen_er(200, 5.0, 8).unwrap());
    }

    #[test]
    fn er_rejects_impossible_density() {
        assert!(matches!(gen_er(5, 4.5, 0), Err(Error::InfeasibleDensity(_))));
        assert_eq!(gen_er(5, 4.0, 0).unwrap().edge_count(), 10);
    }

    #[test]
    fn pair_index_mapping_is_a_bijection() {
        let n = 6;
        let pairs: HashSet<_> = (0..n * (n - 1)).map(|i| pair_at(n, i)).collect();
        assert_eq!(pairs.len(), n * (n - 1));
        assert!(pairs.iter().all(|&(u, v)| u != v && u < n && v < n));
    }

    #[test]
    fn ba_closed_form_edge_count() {
        let l = gen_ba(1000, 4.0, 11).unwrap();
        assert_eq!(l.edge_count(), 1996);
        assert!(l.edges().iter().all(|&(u, v)| u != v));
    }

    #[test]
    fn ba_minimal_size_is_the_seed_star() {
        let l = gen_ba(3, 4.0, 0).unwrap();
        assert_eq!(l.edge_count(), 2);
        let mut und: Vec<_> = l.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        und.sort_unstable();
        assert_eq!(und, vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn ba_is_heavy_tailed() {
        let l = gen_ba(2000, 4.0, 5).unwrap();
        let max_deg = (0..2000)
            .map(|v| l.out_neighbors(v).len() + l.in_neighbors(v).len())
            .max()
            .unwrap();
        assert!(max_deg > 12, "max degree {max_deg}");
    }

    #[test]
    fn ba_rejects_zero_attachment() {
        assert!(gen_ba(10, 0.5, 0).is_err());
        assert!(gen_ba(2, 4.0, 0).is_err());
    }

    #[test]
    fn full_overlap_copies_the_base() {
        let base = gen_er(300, 4.0, 2).unwrap();
        let r = gen_overlapped_layer(&base, 1.0, LayerModel::Er, 9).unwrap();
        assert_eq!(r.layer, base);
        assert_eq!(r.achieved, 1.0);
    }

    #[test]
    fn zero_overlap_is_disjoint() {
        let base = gen_er(500, 4.0, 2).unwrap();
        for model in [LayerModel::Er, LayerModel::Ba] {
            let r = gen_overlapped_layer(&base, 0.0, model, 9).unwrap();
            assert_eq!(r.layer.edge_count(), base.edge_count());
            assert_eq!(r.achieved, 0.0);
        }
    }

    #[test]
    fn overlap_targets_are_met() {
        for seed in 0..10 {
            let base = gen_er(1000, 4.0, seed).unwrap();
            for i in 1..=9 {
                let rho = i as f64 / 10.0;
                let r = gen_overlapped_layer(&base, rho, LayerModel::Er, seed + 100).unwrap();
                assert!(r.within_tolerance(), "rho {rho}: achieved {}", r.achieved);
                assert_eq!(r.layer.edge_count(), base.edge_count());
            }
        }
    }

    #[test]
    fn dense_overlap_reports_best_effort() {
        // Complete digraph: no edges outside the base exist.
        let base = DirectedLayer::new(4, (0..12).map(|i| pair_at(4, i))).unwrap();
        let r = gen_overlapped_layer(&base, 0.0, LayerModel::Er, 1).unwrap();
        assert!(r.layer.edge_count() < base.edge_count());
        assert_eq!(r.achieved, 0.0);
    }

    #[test]
    fn duplex_spec_round_trip() {
        let spec = GenSpec {
            model: DuplexModel::ErBa,
            n: 500,
            avg_degree: 6.0,
            overlap: None,
            seed: 4,
        };
        let g = generate_duplex(&spec).unwrap();
        assert_eq!(g.net.node_count(), 500);
        assert_eq!(g.net.layer(crate::graph::Layer::One).edge_count(), 1500);
        assert_eq!(g.net.layer(crate::graph::Layer::Two).edge_count(), 3 * 497);
        assert!(g.overlap_within_tolerance());
        let again = generate_duplex(&spec).unwrap();
        assert_eq!(g.net, again.net);
    }

    #[test]
    fn model_names_parse() {
        assert_eq!(DuplexModel::parse("er-ba").unwrap(), DuplexModel::ErBa);
        assert_eq!(DuplexModel::parse("BA").unwrap(), DuplexModel::BaBa);
        assert!(DuplexModel::parse("ws").is_err());
    }
}
