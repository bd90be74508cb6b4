//! Meta-graph accounting and certificates on random feasible state pairs.

mod common;

use common::random_duplex;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uds_core::baselines::enumerate_families;
use uds_core::meta::{
    admissible_directions, build_meta_graph, certify_optimal_or_find_witness, component_delta_contributions, Certificate,
    NodeSignature, SignatureClass,
};
use uds_core::{apply_clap, clap_s, verify_clap, DuplexNetwork, DuplexState, OracleLimits};

fn all_states(net: &DuplexNetwork) -> Vec<DuplexState<'_>> {
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
fn accounting_identity_and_structure_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3E7A);
    let mut pairs = 0;
    while pairs < 800 {
        let net = random_duplex(&mut rng, 2..=8, 0.1..0.4);
        let states = all_states(&net);
        for _ in 0..4 {
            let a = states.choose(&mut rng).unwrap();
            let b = states.choose(&mut rng).unwrap();
            let meta = build_meta_graph(a, b).unwrap();
            let parts = component_delta_contributions(&meta, a, b);
            let expected = a.difference_mass() as i64 - b.difference_mass() as i64;
            assert_eq!(parts.iter().sum::<i64>(), expected);
            assert!(meta.max_degree() <= 2);
            assert!(meta.labels_alternate());
            for e in &meta.edges {
                assert_eq!(admissible_directions(a, e.layer, e.from, e.to), 1);
            }
            for c in &meta.components {
                for &v in &c.nodes {
                    if meta.degree(v) == 2 {
                        let class = NodeSignature::of(a, b, v).class();
                        assert!(matches!(
                            class,
                            SignatureClass::CPlus
                                | SignatureClass::CMinus
                                | SignatureClass::XPlus
                                | SignatureClass::XMinus
                                | SignatureClass::Z
                        ));
                    }
                }
                if c.is_cycle {
                    assert_eq!(parts[meta.components.iter().position(|x| x == c).unwrap()], 0);
                }
            }
            pairs += 1;
        }
    }
}

#[test]
fn stable_states_certify_and_unstable_ones_yield_verified_claps() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xCE27);
    for _ in 0..150 {
        let net = random_duplex(&mut rng, 2..=7, 0.1..0.4);
        let states = all_states(&net);

        let mut stable = DuplexState::init(&net, None);
        clap_s(&mut stable);
        let cert = certify_optimal_or_find_witness(&stable, &states).unwrap();
        assert!(matches!(cert, Certificate::Optimal { .. }));

        for s in &states {
            match certify_optimal_or_find_witness(s, &states).unwrap() {
                Certificate::Optimal { .. } => assert_eq!(s.union_size(), stable.union_size()),
                Certificate::Improvable { witness, .. } => {
                    assert!(verify_clap(&witness, s));
                    let mut t = s.clone();
                    let r = apply_clap(&mut t, &witness).unwrap();
                    assert_eq!(r.union_before, r.union_after + 1);
                }
            }
        }
    }
}
