//! Named and random graph constructors.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

pub fn path(n: usize) -> Graph {
    assert!(n >= 1, "path needs at least 1 vertex");
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_adjacency(n, |_, _| true)
}

/// The star `K_{1,leaves}`; vertex 0 is the centre.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
}

/// Cartesian product `K4 x K4`: cells of a 4x4 board, adjacent when they share
/// a row or a column.
pub fn rook_4x4() -> Graph {
    Graph::from_adjacency(16, |u, v| u / 4 == v / 4 || u % 4 == v % 4).with_name("rook_4x4")
}

/// Cayley graph of `Z4 x Z4` with connection set `{±(1,0), ±(0,1), ±(1,1)}`.
pub fn shrikhande() -> Graph {
    Graph::from_adjacency(16, |u, v| {
        let (dx, dy) = ((v / 4 + 4 - u / 4) % 4, (v % 4 + 4 - u % 4) % 4);
        matches!(
            (dx, dy),
            (1, 0) | (3, 0) | (0, 1) | (0, 3) | (1, 1) | (3, 3)
        )
    })
    .with_name("shrikhande")
}

/// Carbon skeleton of decalin: two hexagons sharing the edge `{0, 5}`.
pub fn decalin() -> Graph {
    Graph::from_edges(
        10,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 0),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (9, 0),
        ],
    )
    .expect("valid decalin")
    .with_name("decalin")
}

/// Carbon skeleton of bicyclopentyl: two pentagons joined by the edge `{0, 5}`.
pub fn bicyclopentyl() -> Graph {
    Graph::from_edges(
        10,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (9, 5),
            (0, 5),
        ],
    )
    .expect("valid bicyclopentyl")
    .with_name("bicyclopentyl")
}

/// Disjoint union of two graphs; vertices of `b` are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    Graph::from_edges(a.n() + b.n(), edges).expect("union of valid graphs")
}

/// Triangular graph `T(m)`: line graph of `K_m`.
pub fn triangular(m: usize) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    Graph::from_adjacency(pairs.len(), |a, b| {
        let (p, q) = (pairs[a], pairs[b]);
        p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1
    })
}

/// Seidel switching of `g` with respect to the vertex set marked in `side`.
pub fn seidel_switch(g: &Graph, side: &[bool]) -> Graph {
    Graph::from_adjacency(g.n(), |u, v| g.has_edge(u, v) ^ (side[u] != side[v]))
}

/// The three Chang graphs, SR(28,12,6,4) graphs not isomorphic to `T(8)`.
///
/// Each is `T(8)` switched with respect to the edges of a 2-regular or
/// 1-regular spanning subgraph of `K8`: a perfect matching, `C8`, `C3 + C5`.
pub fn chang_graphs() -> [Graph; 3] {
    let pairs: Vec<(usize, usize)> = (0..8)
        .flat_map(|i| (i + 1..8).map(move |j| (i, j)))
        .collect();
    let t8 = triangular(8);
    let switch = |sel: &[(usize, usize)]| {
        let side: Vec<bool> = pairs
            .iter()
            .map(|&(a, b)| sel.iter().any(|&(x, y)| (x.min(y), x.max(y)) == (a, b)))
            .collect();
        seidel_switch(&t8, &side)
    };
    [
        switch(&[(0, 1), (2, 3), (4, 5), (6, 7)]),
        switch(&[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 0),
        ]),
        switch(&[
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 3),
        ]),
    ]
}

/// Erdos-Renyi `G(n, p)`.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_sorted_unique(n, edges)
}

/// Sparse `G(n, m)` with exactly `m` distinct edges sampled uniformly.
pub fn random_sparse<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let max = n * n.saturating_sub(1) / 2;
    let m = m.min(max);
    let mut set = std::collections::BTreeSet::new();
    while set.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            set.insert((u.min(v), u.max(v)));
        }
    }
    Graph::from_sorted_unique(n, set.into_iter().collect())
}

/// Uniform random labelled tree on `n` vertices via a random Pruefer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    if n == 2 {
        return path(2);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    tree_from_pruefer(n, &seq)
}

/// Decodes a Pruefer sequence of length `n - 2` into a tree on `n` vertices.
pub fn tree_from_pruefer(n: usize, seq: &[usize]) -> Graph {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges).expect("Pruefer decoding yields a tree")
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
