//! Shortestness of found CLAPs against an independent layered BFS.
//!
//! The oracle below re-derives single-layer reachability straight from the
//! matchings and ignores witness disjointness, so its distance is a lower
//! bound on any CLAP's length. A verified CLAP meeting that bound is shortest.

mod common;

use std::collections::VecDeque;

use common::random_duplex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uds_core::baselines::enumerate_families;
use uds_core::{find_shortest_clap, verify_clap, DuplexNetwork, DuplexState, Layer, NodeClass, OracleLimits};

/// Nodes that can take over the layer-1 driver role from `s`.
fn layer1_targets(s: &DuplexState<'_>, start: usize) -> Vec<usize> {
    let m = s.matching(Layer::One);
    let l = s.network().layer(Layer::One);
    let mut seen = vec![false; s.node_count()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        for &x in l.in_neighbors(w) {
            if m.mate_of_plus(x) == Some(w) {
                continue;
            }
            if let Some(z) = m.mate_of_plus(x) {
                if !seen[z] {
                    seen[z] = true;
                    out.push(z);
                    queue.push_back(z);
                }
            }
        }
    }
    out
}

/// Layer-2 drivers that can hand their role to the matched node `start`.
fn layer2_targets(s: &DuplexState<'_>, start: usize) -> Vec<usize> {
    let m = s.matching(Layer::Two);
    let l = s.network().layer(Layer::Two);
    let mut seen = vec![false; s.node_count()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        let x = m.mate_of_minus(w).expect("only matched nodes are expanded");
        for &y in l.out_neighbors(x) {
            if y == w || seen[y] {
                continue;
            }
            seen[y] = true;
            if m.is_minus_matched(y) {
                queue.push_back(y);
            } else {
                out.push(y);
            }
        }
    }
    out
}

/// Fewest segments from any `DD₁` node to any `DD₂` node, alternating layers.
fn lower_bound(s: &DuplexState<'_>) -> Option<usize> {
    let n = s.node_count();
    let mut dist = vec![[usize::MAX; 2]; n];
    let mut queue = VecDeque::new();
    for v in (0..n).filter(|&v| s.class(v) == NodeClass::Dd1) {
        for l in 0..2 {
            dist[v][l] = 0;
            queue.push_back((v, l));
        }
    }
    while let Some((v, l)) = queue.pop_front() {
        let d = dist[v][l] + 1;
        let (targets, relay, next) = if l == 0 {
            (layer1_targets(s, v), NodeClass::Cms, 1)
        } else {
            (layer2_targets(s, v), NodeClass::Cds, 0)
        };
        for t in targets {
            match s.class(t) {
                NodeClass::Dd2 => return Some(d),
                c if c == relay && dist[t][next] == usize::MAX => {
                    dist[t][next] = d;
                    queue.push_back((t, next));
                }
                _ => {}
            }
        }
    }
    None
}

fn states(net: &DuplexNetwork) -> Vec<DuplexState<'_>> {
    let [f1, f2] = enumerate_families(net, OracleLimits::default()).unwrap();
    let mut out = Vec::new();
    for (_, m1) in &f1.representatives {
        for (_, m2) in &f2.representatives {
            out.push(DuplexState::from_matchings(net, m1.clone(), m2.clone()).unwrap());
        }
    }
    out
}

#[test]
fn found_claps_meet_the_lower_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5407);
    let mut longest = 0;
    for _ in 0..300 {
        let net = random_duplex(&mut rng, 2..=8, 0.08..0.35);
        for s in states(&net) {
            let bound = lower_bound(&s);
            let found = find_shortest_clap(&s);
            assert_eq!(found.as_ref().map(|c| c.len()), bound, "{net:?}");
            if let Some(c) = found {
                assert!(verify_clap(&c, &s));
                longest = longest.max(c.len());
            }
        }
    }
    assert!(longest >= 2, "corpus should exercise multi-segment CLAPs");
}
