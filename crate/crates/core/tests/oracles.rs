mod common;

use gsn_core::catalog::{family_collection, graphs_of_size, CountingMode, Family};
use gsn_core::features::structural_features;
use gsn_core::generators::{bicyclopentyl, decalin, erdos_renyi, rook_4x4, shrikhande};
use gsn_core::iso::distinct_matches;
use gsn_core::rng::seeded;
use gsn_core::{compute_orbits, count_distinct_subgraphs, enumerate_matches, Graph, MatchOptions};
use rand::Rng;

fn connected_patterns(max: usize) -> Vec<Graph> {
    (1..=max)
        .flat_map(graphs_of_size)
        .filter(Graph::is_connected)
        .collect()
}

fn random_targets(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = seeded(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let p = rng.gen_range(0.1..0.9);
            erdos_renyi(n, p, &mut rng)
        })
        .collect()
}

#[test]
fn matcher_agrees_with_injective_map_enumeration() {
    let patterns = connected_patterns(4);
    assert_eq!(patterns.len(), 1 + 1 + 2 + 6);
    for g in random_targets(25, 8, 11) {
        for h in &patterns {
            let aut = common::automorphism_count(h);
            for induced in [true, false] {
                let opts = MatchOptions {
                    induced,
                    allow_disconnected: false,
                };
                let want = common::injective_maps(h, &g, induced);
                assert_eq!(
                    enumerate_matches(h, &g, opts).unwrap().count(),
                    want,
                    "{h:?} in {g:?}"
                );
                assert_eq!(count_distinct_subgraphs(h, &g, opts).unwrap(), want / aut);
            }
        }
    }
}

#[test]
fn single_vertex_pattern_counts_every_vertex() {
    let g = rook_4x4();
    for opts in [MatchOptions::induced(), MatchOptions::non_induced()] {
        assert_eq!(
            count_distinct_subgraphs(&Graph::empty(1), &g, opts).unwrap(),
            16
        );
    }
}

#[test]
fn disconnected_pattern_needs_opt_in() {
    let h = Graph::empty(2);
    assert!(enumerate_matches(&h, &rook_4x4(), MatchOptions::induced()).is_err());
    let opts = MatchOptions::non_induced().allow_disconnected(true);
    assert_eq!(
        count_distinct_subgraphs(&h, &Graph::empty(4), opts).unwrap(),
        6
    );
}

#[test]
fn orbits_agree_with_permutation_oracle() {
    for g in (1..=6).flat_map(graphs_of_size) {
        let o = compute_orbits(&g).unwrap();
        let brute = common::brute_orbits(&g);
        for v in 0..g.n() {
            for u in 0..g.n() {
                assert_eq!(
                    o.vertex_orbit_of(u) == o.vertex_orbit_of(v),
                    brute[u] == brute[v],
                    "{g:?}"
                );
            }
        }
        assert_eq!(o.aut_size, common::automorphism_count(&g) as u64, "{g:?}");
    }
}

#[test]
fn cycle_features_match_cycle_enumeration() {
    let coll = family_collection(Family::Cycle, 6, CountingMode::Graphlet).unwrap();
    let motifs = family_collection(Family::Cycle, 6, CountingMode::Motif).unwrap();
    let mut graphs = vec![decalin(), bicyclopentyl()];
    graphs.extend(random_targets(10, 9, 5));
    for g in &graphs {
        let f = structural_features(g, &coll).unwrap();
        let fm = structural_features(g, &motifs).unwrap();
        for (col, k) in (3..=6).enumerate() {
            let induced = common::induced_cycles_through_vertices(g, k);
            let plain = common::cycles_through_vertices(g, k);
            for v in 0..g.n() {
                assert_eq!(f.vertex_counts[v][col], induced[v]);
                assert_eq!(fm.vertex_counts[v][col], plain[v]);
            }
        }
    }
    let (a, b) = (
        structural_features(&decalin(), &coll).unwrap(),
        structural_features(&bicyclopentyl(), &coll).unwrap(),
    );
    let mut ra = a.vertex_counts.clone();
    let mut rb = b.vertex_counts.clone();
    ra.sort();
    rb.sort();
    assert_ne!(ra, rb);
}

#[test]
fn clique_counts_on_strongly_regular_pair() {
    let k4 = family_collection(Family::Clique, 4, CountingMode::Graphlet)
        .unwrap()
        .patterns[1]
        .graph
        .clone();
    let opts = MatchOptions::induced();
    assert_eq!(
        count_distinct_subgraphs(&k4, &rook_4x4(), opts).unwrap(),
        common::cliques(&rook_4x4(), 4)
    );
    assert_eq!(common::cliques(&rook_4x4(), 4), 8);
    assert_eq!(
        count_distinct_subgraphs(&k4, &shrikhande(), opts).unwrap(),
        0
    );
    assert_eq!(common::cliques(&shrikhande(), 4), 0);
}

#[test]
fn distinct_matches_cover_distinct_vertex_sets() {
    let h = gsn_core::generators::path(3);
    for g in random_targets(10, 8, 3) {
        let ms = distinct_matches(&h, &g, MatchOptions::induced()).unwrap();
        let mut sets: Vec<Vec<usize>> = ms.iter().map(|m| m.image_vertices()).collect();
        sets.sort();
        sets.dedup();
        assert_eq!(sets.len(), ms.len());
    }
}
