//! Vertex and edge structural identifiers, one-hot encoding and the
//! disambiguation score.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::catalog::{all_graphs_of_size, Collection, CountingMode};
use crate::error::FeatureError;
use crate::graph::Graph;
use crate::iso::{are_isomorphic, distinct_matches};

/// Per-vertex counts `x^V` (n x D) and per-arc counts `x^E`.
///
/// Arc counts are stored in adjacency order: the arcs leaving `u` are
/// `(u, neighbors(u)[j])` for consecutive `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralFeatures {
    pub n: usize,
    pub vertex_dims: usize,
    pub edge_dims: usize,
    pub vertex_counts: Vec<Vec<u64>>,
    #[serde(skip)]
    arc_offsets: Vec<usize>,
    #[serde(skip)]
    arc_targets: Vec<usize>,
    #[serde(skip)]
    arc_counts: Vec<Vec<u64>>,
    pub mode: CountingMode,
    pub collection: String,
}

impl StructuralFeatures {
    fn zeros(g: &Graph, c: &Collection) -> Self {
        let mut arc_offsets = Vec::with_capacity(g.n() + 1);
        let mut arc_targets = Vec::new();
        for v in 0..g.n() {
            arc_offsets.push(arc_targets.len());
            arc_targets.extend_from_slice(g.neighbors(v));
        }
        arc_offsets.push(arc_targets.len());
        StructuralFeatures {
            n: g.n(),
            vertex_dims: c.vertex_dims(),
            edge_dims: c.edge_dims(),
            vertex_counts: vec![vec![0; c.vertex_dims()]; g.n()],
            arc_counts: vec![vec![0; c.edge_dims()]; arc_targets.len()],
            arc_offsets,
            arc_targets,
            mode: c.mode,
            collection: c.label.clone(),
        }
    }

    fn arc_index(&self, u: usize, v: usize) -> Option<usize> {
        let (lo, hi) = (self.arc_offsets[u], self.arc_offsets[u + 1]);
        self.arc_targets[lo..hi]
            .binary_search(&v)
            .ok()
            .map(|j| lo + j)
    }

    /// Edge counts of the ordered pair `(u, v)`, or `None` if not adjacent.
    pub fn edge(&self, u: usize, v: usize) -> Option<&[u64]> {
        self.arc_index(u, v).map(|i| self.arc_counts[i].as_slice())
    }

    /// All arcs with their counts, in `(u, v)` lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = ((usize, usize), &[u64])> + '_ {
        (0..self.n).flat_map(move |u| {
            (self.arc_offsets[u]..self.arc_offsets[u + 1])
                .map(move |i| ((u, self.arc_targets[i]), self.arc_counts[i].as_slice()))
        })
    }

    /// Same features with the edge part dropped.
    pub fn vertex_only(&self) -> StructuralFeatures {
        let mut f = self.clone();
        f.edge_dims = 0;
        f.arc_counts.iter_mut().for_each(|c| c.clear());
        f
    }

    /// Writes one CSV row per vertex: `graph_id, vertex_id, <D columns>`.
    pub fn write_vertex_csv<W: Write + ?Sized>(
        &self,
        out: &mut W,
        graph_id: &str,
        columns: &[String],
        header: bool,
    ) -> std::io::Result<()> {
        if header {
            write!(out, "graph_id,vertex_id")?;
            for c in columns {
                write!(out, ",{c}")?;
            }
            writeln!(out)?;
        }
        for (v, row) in self.vertex_counts.iter().enumerate() {
            write!(out, "{graph_id},{v}")?;
            for x in row {
                write!(out, ",{x}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// JSON object with vertex rows and `[u, v, counts]` arc entries.
    pub fn to_json_value(&self) -> serde_json::Value {
        let arcs: Vec<serde_json::Value> = self
            .arcs()
            .map(|((u, v), c)| serde_json::json!([u, v, c]))
            .collect();
        serde_json::json!({
            "n": self.n,
            "collection": self.collection,
            "mode": self.mode,
            "vertex_counts": self.vertex_counts,
            "edge_counts": arcs,
        })
    }
}

/// Computes both vertex and edge features of `g` for every pattern in `c`.
///
/// Each distinct subgraph is attributed through the first match found.
/// Arcs of reversible edge orbits count in both directions; other arcs only
/// in the orbit's canonical direction.
pub fn structural_features(g: &Graph, c: &Collection) -> Result<StructuralFeatures, FeatureError> {
    let mut f = StructuralFeatures::zeros(g, c);
    let opts = c.match_options();
    let (voff, eoff) = (c.vertex_offsets(), c.edge_offsets());
    for (pi, p) in c.patterns.iter().enumerate() {
        let h = &p.graph;
        for m in distinct_matches(h, g, opts)? {
            for (a, &img) in m.mapping.iter().enumerate() {
                f.vertex_counts[img][voff[pi] + p.orbits.vertex_orbit_of(a)] += 1;
            }
            for &(a, b) in h.edges() {
                let (orbit, forward) = p.orbits.arc_class(a, b).expect("pattern edge");
                let (x, y) = (m.mapping[a], m.mapping[b]);
                let dim = eoff[pi] + orbit;
                if p.orbits.edge_orbits[orbit].reversible {
                    let i = f.arc_index(x, y).expect("image edge");
                    let j = f.arc_index(y, x).expect("image edge");
                    f.arc_counts[i][dim] += 1;
                    f.arc_counts[j][dim] += 1;
                } else {
                    let (s, t) = if forward { (x, y) } else { (y, x) };
                    let i = f.arc_index(s, t).expect("image edge");
                    f.arc_counts[i][dim] += 1;
                }
            }
        }
    }
    Ok(f)
}

/// Vertex part only (edge vectors have zero width).
pub fn vertex_features(g: &Graph, c: &Collection) -> Result<StructuralFeatures, FeatureError> {
    Ok(structural_features(g, c)?.vertex_only())
}

/// Same as [`structural_features`]; kept for symmetry with [`vertex_features`].
pub fn edge_features(g: &Graph, c: &Collection) -> Result<StructuralFeatures, FeatureError> {
    structural_features(g, c)
}

/// Rebuilds the vertex counts from the edge counts alone:
/// `x^V_i(v) = (1 / deg O_i) * sum over u in N(v) of the arc counts of orbits
/// touching O_i`, read in the direction that leaves `v` from orbit `i`.
pub fn reconstruct_vertex_from_edge(
    g: &Graph,
    c: &Collection,
    f: &StructuralFeatures,
) -> Result<Vec<Vec<u64>>, FeatureError> {
    let (voff, eoff) = (c.vertex_offsets(), c.edge_offsets());
    let mut out = vec![vec![0u64; c.vertex_dims()]; g.n()];
    for (pi, p) in c.patterns.iter().enumerate() {
        let h = &p.graph;
        let orbit_degree: Vec<usize> = p
            .orbits
            .vertex_orbits
            .iter()
            .map(|o| h.degree(o[0]))
            .collect();
        if orbit_degree.contains(&0) {
            return Err(FeatureError::IsolatedPatternVertex { pattern: pi });
        }
        for v in 0..g.n() {
            for (i, &deg) in orbit_degree.iter().enumerate() {
                let mut sum = 0u64;
                for &u in g.neighbors(v) {
                    let out_arc = f.edge(v, u).expect("adjacent");
                    let in_arc = f.edge(u, v).expect("adjacent");
                    for (e, orbit) in p.orbits.edge_orbits.iter().enumerate() {
                        if orbit.tail == i {
                            sum += out_arc[eoff[pi] + e];
                        }
                        if !orbit.reversible && orbit.head == i {
                            sum += in_arc[eoff[pi] + e];
                        }
                    }
                }
                debug_assert_eq!(sum % deg as u64, 0);
                out[v][voff[pi] + i] = sum / deg as u64;
            }
        }
    }
    Ok(out)
}

/// Outcome of the deck identity check for one graph.
#[derive(Clone, Debug, Serialize)]
pub struct DeckReport {
    pub holds: bool,
    /// Per pattern: (sum of vertex counts, (n - 1) * multiplicity in the deck).
    pub sides: Vec<(u64, u64)>,
}

/// Checks `sum_v sum_i x^V_{H_j,i}(v) = (n - 1) D_j(G)` for every graph `H_j`
/// on `n - 1` vertices, with the deck counted by deleting each vertex.
pub fn deck_check(g: &Graph) -> Result<DeckReport, FeatureError> {
    let n = g.n();
    if !(4..=8).contains(&n) {
        return Err(FeatureError::DeckSize(n));
    }
    deck_check_with(g, &all_graphs_of_size(n - 1)?)
}

/// [`deck_check`] with a prebuilt `all_graphs_of_size(n - 1)` collection.
pub fn deck_check_with(g: &Graph, c: &Collection) -> Result<DeckReport, FeatureError> {
    let n = g.n();
    if !(4..=8).contains(&n) {
        return Err(FeatureError::DeckSize(n));
    }
    let f = vertex_features(g, c)?;
    let deck: Vec<Graph> = (0..n).map(|v| g.remove_vertex(v)).collect();
    let offs = c.vertex_offsets();
    let mut sides = Vec::with_capacity(c.len());
    for (j, p) in c.patterns.iter().enumerate() {
        let lhs: u64 = f
            .vertex_counts
            .iter()
            .map(|row| row[offs[j]..offs[j] + p.vertex_dims()].iter().sum::<u64>())
            .sum();
        let dj = deck
            .iter()
            .filter(|card| are_isomorphic(card, &p.graph))
            .count() as u64;
        sides.push((lhs, (n as u64 - 1) * dj));
    }
    Ok(DeckReport {
        holds: sides.iter().all(|(a, b)| a == b),
        sides,
    })
}

/// Per-dimension sorted list of observed count values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vocabulary {
    pub values: Vec<Vec<u64>>,
}

impl Vocabulary {
    /// Builds the vocabulary from rows of equal width.
    pub fn build<'a>(
        rows: impl IntoIterator<Item = &'a [u64]>,
        width: usize,
    ) -> Result<Self, FeatureError> {
        let mut sets: Vec<std::collections::BTreeSet<u64>> = vec![Default::default(); width];
        for row in rows {
            if row.len() != width {
                return Err(FeatureError::WidthMismatch {
                    expected: width,
                    found: row.len(),
                });
            }
            for (s, &x) in sets.iter_mut().zip(row) {
                s.insert(x);
            }
        }
        Ok(Vocabulary {
            values: sets
                .into_iter()
                .map(|s| {
                    if s.is_empty() {
                        vec![0]
                    } else {
                        s.into_iter().collect()
                    }
                })
                .collect(),
        })
    }

    /// Vertex vocabulary over a dataset of feature sets.
    pub fn for_vertices(features: &[&StructuralFeatures]) -> Result<Self, FeatureError> {
        let width = features.first().map_or(0, |f| f.vertex_dims);
        Self::build(
            features
                .iter()
                .flat_map(|f| f.vertex_counts.iter().map(|r| r.as_slice())),
            width,
        )
    }

    /// Edge vocabulary over a dataset of feature sets.
    pub fn for_edges(features: &[&StructuralFeatures]) -> Result<Self, FeatureError> {
        let width = features.first().map_or(0, |f| f.edge_dims);
        Self::build(
            features.iter().flat_map(|f| f.arcs().map(|(_, c)| c)),
            width,
        )
    }

    /// Total one-hot width.
    pub fn width(&self) -> usize {
        self.values.iter().map(Vec::len).sum()
    }

    /// Hot index of each dimension.
    pub fn indices(&self, row: &[u64]) -> Result<Vec<usize>, FeatureError> {
        if row.len() != self.values.len() {
            return Err(FeatureError::WidthMismatch {
                expected: self.values.len(),
                found: row.len(),
            });
        }
        row.iter()
            .zip(&self.values)
            .enumerate()
            .map(|(dim, (&x, vocab))| {
                vocab
                    .binary_search(&x)
                    .map_err(|_| FeatureError::UnknownValue { dim, value: x })
            })
            .collect()
    }

    /// Concatenated one-hot blocks for one row.
    pub fn one_hot(&self, row: &[u64]) -> Result<Vec<f64>, FeatureError> {
        let idx = self.indices(row)?;
        let mut out = vec![0.0; self.width()];
        let mut base = 0;
        for (i, vocab) in idx.iter().zip(&self.values) {
            out[base + i] = 1.0;
            base += vocab.len();
        }
        Ok(out)
    }
}

/// One-hot encoded vertex identifiers of a dataset.
#[derive(Clone, Debug)]
pub struct EncodedIdentifiers {
    pub vocabulary: Vocabulary,
    /// `encoded[g][v]` is the one-hot row of vertex `v` of graph `g`.
    pub encoded: Vec<Vec<Vec<f64>>>,
}

/// Builds a vocabulary over the dataset and encodes every vertex row.
pub fn one_hot_encode(
    features: &[&StructuralFeatures],
) -> Result<EncodedIdentifiers, FeatureError> {
    let vocabulary = Vocabulary::for_vertices(features)?;
    let encoded = features
        .iter()
        .map(|f| {
            f.vertex_counts
                .iter()
                .map(|r| vocabulary.one_hot(r))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Ok(EncodedIdentifiers {
        vocabulary,
        encoded,
    })
}

/// Number of distinct `(input label, identifier)` tuples among the vertices.
pub fn unique_tuples(g: &Graph, f: &StructuralFeatures) -> usize {
    let set: HashSet<(u32, &[u64])> = (0..g.n())
        .map(|v| (g.vertex_label(v), f.vertex_counts[v].as_slice()))
        .collect();
    set.len()
}

/// `delta = sum_G u_G / sum_G |V_G|`. Edge identifiers are not used.
pub fn disambiguation_score(graphs: &[Graph], c: &Collection) -> Result<f64, FeatureError> {
    use rayon::prelude::*;
    let total: usize = graphs.iter().map(Graph::n).sum();
    if graphs.is_empty() || total == 0 {
        return Err(FeatureError::EmptyDataset);
    }
    let unique: Vec<usize> = graphs
        .par_iter()
        .map(|g| vertex_features(g, c).map(|f| unique_tuples(g, &f)))
        .collect::<Result<_, _>>()?;
    Ok(unique.iter().sum::<usize>() as f64 / total as f64)
}

/// Sorted `(label, vertex row)` pairs and sorted arc rows.
pub type FeatureMultiset = (Vec<(u32, Vec<u64>)>, Vec<Vec<u64>>);

/// Multiset summary of a graph's identifiers. Equal summaries mean the
/// features alone cannot separate the graphs.
pub fn feature_multiset(g: &Graph, f: &StructuralFeatures) -> FeatureMultiset {
    let mut vs: Vec<(u32, Vec<u64>)> = (0..g.n())
        .map(|v| (g.vertex_label(v), f.vertex_counts[v].clone()))
        .collect();
    vs.sort();
    let mut es: Vec<Vec<u64>> = f.arcs().map(|(_, c)| c.to_vec()).collect();
    es.sort();
    (vs, es)
}

/// Count totals per vertex column, used by reports.
pub fn column_totals(f: &StructuralFeatures) -> Vec<u64> {
    let mut t = vec![0; f.vertex_dims];
    for row in &f.vertex_counts {
        for (a, x) in t.iter_mut().zip(row) {
            *a += x;
        }
    }
    t
}

/// Histogram of vertex rows, keyed by row.
pub fn row_histogram(f: &StructuralFeatures) -> BTreeMap<Vec<u64>, usize> {
    let mut h = BTreeMap::new();
    for r in &f.vertex_counts {
        *h.entry(r.clone()).or_default() += 1;
    }
    h
}
