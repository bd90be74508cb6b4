//! CLAP-G: apply single improving segments until none is left.

use std::time::Instant;

use crate::baselines::BaselineResult;
use crate::duplex::{DuplexState, NodeClass};
use crate::engine::{alt_path_with, apply_clap, ClapPath, Flood, Segment};
use crate::graph::Layer;

/// Runs greedy passes over `DD₁` in ascending id order. For each start it
/// tries layer 1, then layer 2, and takes the smallest reachable `DD₂` node.
/// Only a one-segment CLAP changes `|U|`, so scanning `DD₁` is exhaustive.
pub fn clap_g(state: &mut DuplexState<'_>) -> BaselineResult {
    let start = Instant::now();
    let mut flood = Flood::new(state.node_count());
    let mut moves = 0;
    loop {
        let mut moved = false;
        let starts: Vec<usize> = state.nodes_in(NodeClass::Dd1).collect();
        for s in starts {
            if state.class(s) != NodeClass::Dd1 || state.class_count(NodeClass::Dd2) == 0 {
                continue;
            }
            for layer in Layer::BOTH {
                flood.run(state, layer, &[s]);
                let target = flood
                    .reached
                    .iter()
                    .copied()
                    .filter(|&v| state.class(v) == NodeClass::Dd2)
                    .min();
                if let Some(t) = target {
                    let witness = alt_path_with(&mut flood, state, layer, s, t).expect("reached target has a witness");
                    let clap = ClapPath::new(vec![Segment {
                        from_node: s,
                        to_node: t,
                        layer,
                        witness,
                    }]);
                    apply_clap(state, &clap).expect("single segment from DD1 to DD2 is feasible");
                    moves += 1;
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            break;
        }
    }
    BaselineResult {
        final_union_size: state.union_size(),
        drivers: (state.drivers(Layer::One), state.drivers(Layer::Two)),
        elapsed_secs: start.elapsed().as_secs_f64(),
        work: moves,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duplex::DuplexNetwork;
    use crate::engine::clap_s;
    use crate::matching::Matching;

    #[test]
    fn zero_difference_mass_means_zero_moves() {
        let e = [(0, 1), (2, 1)];
        let net = DuplexNetwork::from_edges(3, e, e).unwrap();
        let mut s = DuplexState::init(&net, None);
        let r = clap_g(&mut s);
        assert_eq!(r.work, 0);
    }

    #[test]
    fn greedy_stalls_where_a_relay_is_needed() {
        // Only CLAP is three segments long.
        let net = DuplexNetwork::from_edges(4, [(3, 1), (3, 0), (1, 3), (1, 2)], [(3, 1), (3, 2), (2, 0)]).unwrap();
        let mk = || {
            let m1 = Matching::from_pairs(net.bipartite(Layer::One), [(3, 1), (1, 3)]).unwrap();
            let m2 = Matching::from_pairs(net.bipartite(Layer::Two), [(3, 1), (2, 0)]).unwrap();
            DuplexState::from_matchings(&net, m1, m2).unwrap()
        };
        let mut g = mk();
        let greedy = clap_g(&mut g);
        let mut c = mk();
        let log = clap_s(&mut c);
        assert_eq!(greedy.work, 0);
        assert_eq!(greedy.final_union_size, 3);
        assert_eq!(log.final_union, 2);
    }
}
