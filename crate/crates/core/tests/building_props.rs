use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dihedral_schubert::building::{
    admissible_radii, attach_mpod, bar_step, check_n1_isometric, complete_apartment, find_antipodal_tuple,
    girth_at_least, graph_metrics, stage_map, ChamberGraph,
};
use dihedral_schubert::dihedral::Side;

/// Applies one random operation; precondition failures leave the graph as is.
fn random_op(g: &mut ChamberGraph, op: u8, rng: &mut ChaCha8Rng) {
    let n = g.n();
    let chambers = g.chambers();
    let a = chambers[rng.gen_range(0..chambers.len())];
    let far: Vec<_> = chambers.iter().copied().filter(|b| g.antipodal(&a, b)).collect();
    match op {
        0 if !far.is_empty() => {
            let b = far[rng.gen_range(0..far.len())];
            let radii = admissible_radii(n, 2);
            if !radii.is_empty() {
                let r = &radii[rng.gen_range(0..radii.len())];
                let t = if rng.gen_bool(0.5) { Side::One } else { Side::Two };
                let _ = attach_mpod(g, &[a, b], r, t);
            }
        }
        1 => {
            bar_step(g, 24, true).unwrap();
        }
        2 if !far.is_empty() => {
            let b = far[rng.gen_range(0..far.len())];
            complete_apartment(g, &a, &b).unwrap();
        }
        _ => {
            let _ = find_antipodal_tuple(g, 3);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn girth_survives_random_operations(n in 2u32..=5, seed in any::<u64>(), ops in prop::collection::vec(0u8..4, 1..5)) {
        let mut g = ChamberGraph::apartment(n, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for op in ops {
            let before = g.clone();
            random_op(&mut g, op, &mut rng);
            prop_assert!(girth_at_least(&g, 2 * n), "n={} op={}", n, op);
            if before.vertex_count() <= 60 {
                prop_assert!(check_n1_isometric(&before, &g, &stage_map(&before)));
            }
        }
    }
}

#[test]
fn graph_json_round_trip() {
    for n in 2..=5 {
        let mut g = ChamberGraph::apartment(n, 3).unwrap();
        g.next_stage();
        bar_step(&mut g, 100, true).unwrap();
        find_antipodal_tuple(&mut g, 3).unwrap();
        let back = ChamberGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back.to_json(), g.to_json());
        assert_eq!(graph_metrics(&back), graph_metrics(&g));
    }
}

#[test]
fn seeded_builds_are_reproducible() {
    let build = |seed| {
        let mut g = ChamberGraph::apartment(4, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for op in [0, 3, 1, 2, 0] {
            random_op(&mut g, op, &mut rng);
        }
        serde_json::to_string(&g.to_json()).unwrap()
    };
    assert_eq!(build(9), build(9));
}
