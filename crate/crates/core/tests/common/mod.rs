//! Independent helpers shared by the integration tests.

#![allow(dead_code)]

use std::ops::{Range, RangeInclusive};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use uds_core::{DuplexNetwork, Layer};

/// Random duplex: every ordered pair (self-loops included) is an edge with
/// probability `p`, drawn separately per layer.
pub fn random_duplex(rng: &mut ChaCha8Rng, n: RangeInclusive<usize>, p: Range<f64>) -> DuplexNetwork {
    let n = rng.gen_range(n);
    let p1 = rng.gen_range(p.clone());
    let p2 = rng.gen_range(p);
    let mut layer = |p: f64| {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        edges
    };
    let e1 = layer(p1);
    let e2 = layer(p2);
    DuplexNetwork::from_edges(n, e1, e2).unwrap()
}

/// Driver sets (as bitmasks over `V⁻`) of every maximum matching, found by
/// trying all edge subsets from largest to smallest.
pub fn brute_force_driver_masks(net: &DuplexNetwork, layer: Layer) -> Vec<u32> {
    let edges = net.layer(layer).edges();
    let n = net.node_count();
    assert!(edges.len() <= 22, "brute force limited to small layers");
    let mut best = 0;
    let mut masks = Vec::new();
    for subset in 0u32..(1 << edges.len()) {
        let size = subset.count_ones() as usize;
        if size < best {
            continue;
        }
        let (mut plus, mut minus) = (0u32, 0u32);
        let mut ok = true;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if subset >> i & 1 == 1 {
                if plus >> u & 1 == 1 || minus >> v & 1 == 1 {
                    ok = false;
                    break;
                }
                plus |= 1 << u;
                minus |= 1 << v;
            }
        }
        if !ok {
            continue;
        }
        if size > best {
            best = size;
            masks.clear();
        }
        masks.push(((1u32 << n) - 1) & !minus);
    }
    masks.sort_unstable();
    masks.dedup();
    masks
}

pub fn brute_force_min_union(net: &DuplexNetwork) -> usize {
    let a = brute_force_driver_masks(net, Layer::One);
    let b = brute_force_driver_masks(net, Layer::Two);
    a.iter()
        .flat_map(|x| b.iter().map(move |y| (x | y).count_ones() as usize))
        .min()
        .unwrap()
}
