//! Property tests for the matching transformations and the solver pair.

use groupmatch::graphs::{
    commuting_graph, enhanced_power_graph, power_graph, GraphKind, SimpleGraph,
};
use groupmatch::group::{
    direct_product, from_permutation_generators, make_cyclic, make_dicyclic, make_dihedral,
    make_elementary_abelian_2, make_symmetric, permutations_from_cycles, GroupTable,
};
use groupmatch::matching::{
    brute_force_matching_number, max_matching, normalize_matching, rematch_enhanced_to_power,
    verify_matching, Matching,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn build_group(choice: usize) -> GroupTable {
    match choice % 16 {
        0 => make_cyclic(5).unwrap(),
        1 => make_cyclic(8).unwrap(),
        2 => make_cyclic(12).unwrap(),
        3 => make_cyclic(9).unwrap(),
        4 => make_dihedral(3).unwrap(),
        5 => make_dihedral(4).unwrap(),
        6 => make_dihedral(5).unwrap(),
        7 => make_elementary_abelian_2(2).unwrap(),
        8 => make_elementary_abelian_2(3).unwrap(),
        9 => make_dicyclic(2).unwrap(),
        10 => make_dicyclic(3).unwrap(),
        11 => direct_product(&make_cyclic(2).unwrap(), &make_cyclic(4).unwrap()).unwrap(),
        12 => make_symmetric(3).unwrap(),
        13 => make_symmetric(4).unwrap(),
        14 => {
            let gens =
                permutations_from_cycles(&["(0 1 2)".to_string(), "(0 1)(2 3)".to_string()])
                    .unwrap();
            from_permutation_generators(&gens).unwrap()
        }
        _ => make_cyclic(15).unwrap(),
    }
}

/// A random (not necessarily maximal) matching: shuffle the edges, keep a
/// random-length prefix, insert greedily.
fn random_matching(graph: &SimpleGraph, seed: u64) -> Matching {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = graph.edges();
    edges.shuffle(&mut rng);
    let keep = if edges.is_empty() {
        0
    } else {
        rng.gen_range(0..=edges.len())
    };
    let mut m = Matching::empty(graph.n());
    for &(u, v) in edges.iter().take(keep) {
        if m.mate(u).is_none() && m.mate(v).is_none() {
            m.add_pair(u, v);
        }
    }
    m
}

proptest! {
    #[test]
    fn normalize_moves_all_unmatched_vertices_into_t(choice in 0usize..16, seed in any::<u64>()) {
        let g = build_group(choice);
        let p = power_graph(&g);
        let m = random_matching(&p, seed);
        let out = normalize_matching(&g, &p, &m).unwrap();
        prop_assert!(verify_matching(&p, &out));
        prop_assert!(out.size() >= m.size());
        let t = g.square_roots_of_identity();
        for v in out.unmatched() {
            prop_assert!(t.contains(v), "unmatched vertex {v} outside T");
        }
        let n = g.order();
        if n % 2 == 0 {
            prop_assert!(out.size() >= 1 + (n - t.count()) / 2);
        } else {
            prop_assert_eq!(out.size(), (n - 1) / 2);
        }
    }

    #[test]
    fn normalize_applies_to_any_graph_with_inverse_edges(
        choice in 0usize..16,
        which in 0usize..3,
        seed in any::<u64>(),
    ) {
        let g = build_group(choice);
        let graph = match which {
            0 => power_graph(&g),
            1 => enhanced_power_graph(&g),
            _ => commuting_graph(&g),
        };
        let m = random_matching(&graph, seed);
        let out = normalize_matching(&g, &graph, &m).unwrap();
        prop_assert!(verify_matching(&graph, &out));
        let t = g.square_roots_of_identity();
        for v in out.unmatched() {
            prop_assert!(t.contains(v));
        }
    }

    #[test]
    fn rematch_lands_any_enhanced_matching_on_power_edges(
        choice in 0usize..16,
        seed in any::<u64>(),
    ) {
        let g = build_group(choice);
        let e = enhanced_power_graph(&g);
        let m = random_matching(&e, seed);
        let out = rematch_enhanced_to_power(&g, &m).unwrap();
        prop_assert_eq!(out.size(), m.size());
        prop_assert!(verify_matching(&power_graph(&g), &out));
    }

    #[test]
    fn blossom_agrees_with_brute_force(
        n in 1usize..=10,
        raw_edges in prop::collection::vec((0usize..10, 0usize..10), 0..40),
    ) {
        let mut graph = SimpleGraph::new(n, GraphKind::Generic);
        for (a, b) in raw_edges {
            let (u, v) = (a % n, b % n);
            if u != v {
                graph.add_edge(u, v);
            }
        }
        let mu = max_matching(&graph).size();
        prop_assert_eq!(mu, brute_force_matching_number(&graph).unwrap());
    }

    #[test]
    fn group_file_round_trips(choice in 0usize..16) {
        let g = build_group(choice);
        let doc = groupmatch::group::GroupFile::from(&g);
        let text = doc.to_json();
        let parsed = groupmatch::group::GroupFile::from_json(&text).unwrap();
        let back = groupmatch::group::from_cayley_table(&parsed).unwrap();
        prop_assert_eq!(back.rows(), g.rows());
        prop_assert_eq!(groupmatch::group::GroupFile::from(&back).to_json(), text);
    }
}
