//! Subgraph matching, full isomorphism and automorphism orbits.

pub mod matcher;
pub mod orbits;
pub mod refine;

pub use matcher::{
    count_distinct_subgraphs, count_distinct_until, distinct_matches, enumerate_matches, Match,
    MatchOptions, Matches,
};
pub use orbits::{
    compute_orbits, compute_orbits_with_cap, EdgeOrbit, OrbitPartition, DEFAULT_ORBIT_CAP,
};
pub use refine::{canonical_form, find_isomorphism, CanonicalForm};

use crate::graph::Graph;

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort_unstable();
    v
}

/// True iff an adjacency- and label-preserving bijection `g1 -> g2` exists.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    if g1.degree_sequence() != g2.degree_sequence() {
        return false;
    }
    let labels = |g: &Graph| sorted((0..g.n()).map(|v| g.vertex_label(v)).collect());
    if labels(g1) != labels(g2) {
        return false;
    }
    find_isomorphism(g1, g2).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn examples() {
        assert!(are_isomorphic(&complete(3), &cycle(3)));
        assert!(!are_isomorphic(&rook_4x4(), &shrikhande()));
        assert!(!are_isomorphic(&path(4), &star(3)));
        assert!(!are_isomorphic(&decalin(), &bicyclopentyl()));
    }

    #[test]
    fn labels_are_respected() {
        let a = path(3).with_vertex_labels(vec![1, 0, 0]).unwrap();
        let b = path(3).with_vertex_labels(vec![0, 1, 0]).unwrap();
        let c = path(3).with_vertex_labels(vec![0, 0, 1]).unwrap();
        assert!(!are_isomorphic(&a, &b));
        assert!(are_isomorphic(&a, &c));
    }

    #[test]
    fn equivalence_relation_on_small_graphs() {
        let mut rng = crate::rng::seeded(4);
        let gs: Vec<Graph> = (0..24)
            .map(|i| erdos_renyi(6, 0.2 + 0.05 * (i % 6) as f64, &mut rng))
            .collect();
        for a in &gs {
            assert!(are_isomorphic(a, a));
            for b in &gs {
                let ab = are_isomorphic(a, b);
                assert_eq!(ab, are_isomorphic(b, a));
                assert_eq!(ab, canonical_form(a).code == canonical_form(b).code);
                for c in &gs {
                    if ab && are_isomorphic(b, c) {
                        assert!(are_isomorphic(a, c));
                    }
                }
            }
        }
    }
}
