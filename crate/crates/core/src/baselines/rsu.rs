//! Random sample-and-union.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use crate::baselines::BaselineResult;
use crate::duplex::DuplexNetwork;
use crate::error::{Error, Result};
use crate::graph::Layer;
use crate::matching::{driver_set, max_matching, DriverSet};
use crate::seed::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RsuConfig {
    /// Maximum matchings drawn per layer.
    pub samples_per_layer: usize,
    pub seed: u64,
}

impl Default for RsuConfig {
    fn default() -> Self {
        RsuConfig {
            samples_per_layer: 20,
            seed: 0,
        }
    }
}

/// Driver sets of sample `0..k` for one layer. Sample 0 is the deterministic
/// matching, so a single sample reproduces the initial state's driver set.
fn samples(net: &DuplexNetwork, layer: Layer, cfg: &RsuConfig) -> Vec<DriverSet> {
    let b = net.bipartite(layer);
    (0..cfg.samples_per_layer)
        .map(|i| {
            let seed = (i > 0).then(|| derive_seed(cfg.seed, layer.index() as u64, i as u64));
            driver_set(&max_matching(b, seed), net.node_count())
        })
        .collect()
}

/// First occurrence of every distinct set, keeping sample order.
fn distinct(sets: Vec<DriverSet>) -> Vec<DriverSet> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for d in sets {
        if !seen.contains_key(d.members()) {
            seen.insert(d.members().to_vec(), out.len());
            out.push(d);
        }
    }
    out
}

/// Smallest union over all `K × K` sample pairs, ties broken by sample index.
pub fn rsu(net: &DuplexNetwork, cfg: RsuConfig) -> Result<BaselineResult> {
    if cfg.samples_per_layer == 0 {
        return Err(Error::InvalidParameter("RSU needs at least one sample per layer".into()));
    }
    let start = Instant::now();
    let d1 = distinct(samples(net, Layer::One, &cfg));
    let d2 = distinct(samples(net, Layer::Two, &cfg));
    let hashed: Vec<HashSet<usize>> = d1.iter().map(|d| d.iter().collect()).collect();
    let floor = d1[0].len().max(d2[0].len());

    let mut best = (usize::MAX, 0, 0);
    let mut evaluated = 0;
    'outer: for (i, h1) in hashed.iter().enumerate() {
        for (j, s2) in d2.iter().enumerate() {
            evaluated += 1;
            let size = h1.len() + s2.iter().filter(|v| !h1.contains(v)).count();
            if size < best.0 {
                best = (size, i, j);
                if size == floor {
                    break 'outer;
                }
            }
        }
    }
    let (size, i, j) = best;
    Ok(BaselineResult {
        final_union_size: size,
        drivers: (d1[i].clone(), d2[j].clone()),
        elapsed_secs: start.elapsed().as_secs_f64(),
        work: evaluated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duplex::DuplexState;

    fn sample_net() -> DuplexNetwork {
        DuplexNetwork::from_edges(
            7,
            [(0, 1), (0, 2), (1, 3), (2, 3), (4, 5), (4, 6)],
            [(0, 4), (1, 5), (1, 6), (2, 0), (3, 1)],
        )
        .unwrap()
    }

    #[test]
    fn single_sample_is_the_initial_union() {
        let net = sample_net();
        let r = rsu(&net, RsuConfig { samples_per_layer: 1, seed: 9 }).unwrap();
        let s = DuplexState::init(&net, None);
        assert_eq!(r.final_union_size, s.union_size());
        assert_eq!(r.drivers.0, s.drivers(Layer::One));
        assert_eq!(r.drivers.1, s.drivers(Layer::Two));
    }

    #[test]
    fn same_seed_same_result() {
        let net = sample_net();
        let cfg = RsuConfig { samples_per_layer: 8, seed: 3 };
        assert_eq!(rsu(&net, cfg).unwrap().drivers, rsu(&net, cfg).unwrap().drivers);
    }

    #[test]
    fn more_samples_never_hurt() {
        let net = sample_net();
        let mut last = usize::MAX;
        for k in 1..=10 {
            let r = rsu(&net, RsuConfig { samples_per_layer: k, seed: 5 }).unwrap();
            assert!(r.final_union_size <= last);
            last = r.final_union_size;
        }
    }

    #[test]
    fn zero_samples_rejected() {
        let net = sample_net();
        assert!(rsu(&net, RsuConfig { samples_per_layer: 0, seed: 0 }).is_err());
    }
}
