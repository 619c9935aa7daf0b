//! Simple undirected graphs with optional categorical vertex and edge labels.
//!
//! A [`Graph`] is immutable once built. Vertices are dense `0..n` indices and
//! every other module in the crate relies on that.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest vertex count for which a dense adjacency bit matrix is kept.
const DENSE_LIMIT: usize = 4096;

/// Row-major bit matrix used for O(1) adjacency queries on small graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64).max(1);
        BitMatrix {
            words_per_row,
            bits: vec![0; words_per_row * n],
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words_per_row + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }
}

#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    dense: Option<BitMatrix>,
    vertex_labels: Option<Vec<u32>>,
    edge_labels: Option<BTreeMap<(usize, usize), u32>>,
    name: Option<String>,
}

#[inline]
fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push(ordered(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// Internal constructor; `edges` must be sorted, deduplicated, `u < v < n`.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let dense = (n <= DENSE_LIMIT).then(|| {
            let mut m = BitMatrix::new(n);
            for &(u, v) in &edges {
                m.set(u, v);
                m.set(v, u);
            }
            m
        });
        Graph {
            n,
            adj,
            edges,
            dense,
            vertex_labels: None,
            edge_labels: None,
            name: None,
        }
    }

    /// Builds a graph from a dense 0/1 adjacency predicate.
    pub fn from_adjacency(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn with_vertex_labels(mut self, labels: Vec<u32>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelLength {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.vertex_labels = Some(labels);
        Ok(self)
    }

    pub fn with_edge_labels<I>(mut self, labels: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = ((usize, usize), u32)>,
    {
        let mut map = BTreeMap::new();
        for ((u, v), label) in labels {
            if !self.has_edge(u, v) {
                return Err(GraphError::LabelOnNonEdge(u, v));
            }
            map.insert(ordered(u, v), label);
        }
        if map.len() != self.edges.len() {
            return Err(GraphError::LabelLength {
                expected: self.edges.len(),
                found: map.len(),
            });
        }
        self.edge_labels = Some(map);
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.dense {
            Some(m) => m.get(u, v),
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_labels(&self) -> Option<&[u32]> {
        self.vertex_labels.as_deref()
    }

    pub fn edge_labels(&self) -> Option<&BTreeMap<(usize, usize), u32>> {
        self.edge_labels.as_ref()
    }

    /// Label of `v`, or 0 for unlabelled graphs.
    #[inline]
    pub fn vertex_label(&self, v: usize) -> u32 {
        self.vertex_labels.as_ref().map_or(0, |l| l[v])
    }

    /// Label of edge `{u, v}`, or 0 when the graph carries no edge labels.
    #[inline]
    pub fn edge_label(&self, u: usize, v: usize) -> u32 {
        self.edge_labels
            .as_ref()
            .and_then(|m| m.get(&ordered(u, v)).copied())
            .unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    ///
    /// Labels and the name follow their vertices.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| ordered(perm[u], perm[v]))
            .collect();
        edges.sort_unstable();
        let mut g = Self::from_sorted_unique(self.n, edges);
        if let Some(labels) = &self.vertex_labels {
            let mut out = vec![0; self.n];
            for (v, &l) in labels.iter().enumerate() {
                out[perm[v]] = l;
            }
            g.vertex_labels = Some(out);
        }
        if let Some(map) = &self.edge_labels {
            g.edge_labels = Some(
                map.iter()
                    .map(|(&(u, v), &l)| (ordered(perm[u], perm[v]), l))
                    .collect(),
            );
        }
        g.name = self.name.clone();
        g
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if self.has_edge(vertices[i], vertices[j]) {
                    edges.push((i, j));
                }
            }
        }
        let mut g = Self::from_sorted_unique(k, edges);
        if let Some(labels) = &self.vertex_labels {
            g.vertex_labels = Some(vertices.iter().map(|&v| labels[v]).collect());
        }
        if self.edge_labels.is_some() {
            let map = g
                .edges
                .iter()
                .map(|&(i, j)| ((i, j), self.edge_label(vertices[i], vertices[j])))
                .collect();
            g.edge_labels = Some(map);
        }
        g
    }

    /// The vertex-deleted subgraph `G - v`.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    pub fn complement(&self) -> Graph {
        Graph::from_adjacency(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Plain structural copy without labels or name.
    pub fn unlabeled(&self) -> Graph {
        Self::from_sorted_unique(self.n, self.edges.clone())
    }
}

impl PartialEq for Graph {
    /// Labelled equality on the same vertex numbering (not isomorphism).
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges == other.edges
            && self.vertex_labels == other.vertex_labels
            && self.edge_labels == other.edge_labels
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Graph");
        if let Some(name) = &self.name {
            s.field("name", name);
        }
        s.field("n", &self.n).field("edges", &self.edges);
        if let Some(l) = &self.vertex_labels {
            s.field("vertex_labels", l);
        }
        if let Some(l) = &self.edge_labels {
            s.field("edge_labels", l);
        }
        s.finish()
    }
}

/// Parameters `(n, d, lambda, mu)` of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrParameters {
    pub n: usize,
    pub d: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl fmt::Display for SrParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SR({},{},{},{})", self.n, self.d, self.lambda, self.mu)
    }
}

/// Returns the strongly regular parameters of `g`, or `None` if `g` is not
/// strongly regular.
///
/// Complete and edgeless graphs are accepted: the count for the pair type that
/// does not occur is reported as 0.
pub fn check_strongly_regular(g: &Graph) -> Option<SrParameters> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    let d = g.degree(0);
    if (0..n).any(|v| g.degree(v) != d) {
        return None;
    }
    let mut lambda = None;
    let mut mu = None;
    let mut marks = vec![false; n];
    for u in 0..n {
        for &w in g.neighbors(u) {
            marks[w] = true;
        }
        for v in u + 1..n {
            let common = g.neighbors(v).iter().filter(|&&w| marks[w]).count();
            let slot = if g.has_edge(u, v) {
                &mut lambda
            } else {
                &mut mu
            };
            match *slot {
                None => *slot = Some(common),
                Some(c) if c != common => return None,
                Some(_) => {}
            }
        }
        for &w in g.neighbors(u) {
            marks[w] = false;
        }
    }
    Some(SrParameters {
        n,
        d,
        lambda: lambda.unwrap_or(0),
        mu: mu.unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn brute_force_sr(g: &Graph) -> Option<SrParameters> {
        let n = g.n();
        let d = g.degree(0);
        for v in 0..n {
            if g.degree(v) != d {
                return None;
            }
        }
        let (mut lam, mut mu) = (None::<usize>, None::<usize>);
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let c = (0..n)
                    .filter(|&z| z != a && z != b && g.has_edge(a, z) && g.has_edge(b, z))
                    .count();
                let slot = if g.has_edge(a, b) { &mut lam } else { &mut mu };
                if slot.is_some_and(|x| x != c) {
                    return None;
                }
                *slot = Some(c);
            }
        }
        Some(SrParameters {
            n,
            d,
            lambda: lam.unwrap_or(0),
            mu: mu.unwrap_or(0),
        })
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(2, 2)]),
            Err(GraphError::SelfLoop(2))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(Graph::empty(2).with_vertex_labels(vec![1]).is_err());
    }

    #[test]
    fn strongly_regular_examples() {
        let sr = SrParameters {
            n: 16,
            d: 6,
            lambda: 2,
            mu: 2,
        };
        assert_eq!(check_strongly_regular(&generators::rook_4x4()), Some(sr));
        assert_eq!(check_strongly_regular(&generators::shrikhande()), Some(sr));
        assert_eq!(check_strongly_regular(&generators::path(3)), None);
        assert_eq!(
            check_strongly_regular(&generators::cycle(5)),
            Some(SrParameters {
                n: 5,
                d: 2,
                lambda: 0,
                mu: 1
            })
        );
    }

    #[test]
    fn strongly_regular_matches_triple_loop_on_small_graphs() {
        let mut rng = crate::rng::seeded(7);
        for n in 1..=10 {
            for _ in 0..60 {
                let g = generators::erdos_renyi(n, 0.5, &mut rng);
                assert_eq!(check_strongly_regular(&g), brute_force_sr(&g), "{g:?}");
            }
        }
        for n in 3..=10 {
            for g in [
                generators::cycle(n),
                generators::complete(n),
                Graph::empty(n),
            ] {
                assert_eq!(check_strongly_regular(&g), brute_force_sr(&g));
            }
        }
    }

    #[test]
    fn permutation_and_subgraphs() {
        let g = generators::path(4)
            .with_vertex_labels(vec![1, 2, 3, 4])
            .unwrap();
        let p = g.permuted(&[3, 2, 1, 0]);
        assert_eq!(p.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(p.vertex_labels().unwrap(), &[4, 3, 2, 1]);
        let h = g.remove_vertex(1);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges(), &[(1, 2)]);
        assert_eq!(h.vertex_labels().unwrap(), &[1, 3, 4]);
        assert_eq!(generators::complete(4).complement().edge_count(), 0);
    }
}
