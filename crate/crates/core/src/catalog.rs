//! Substructure collections: families of small patterns with their orbits.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CatalogError;
use crate::generators::{complete, cycle, path, star};
use crate::graph::Graph;
use crate::iso::{
    are_isomorphic, canonical_form, compute_orbits_with_cap, MatchOptions, OrbitPartition,
};

/// Largest tree size accepted by [`family_collection`].
pub const TREE_CAP: usize = 12;
/// Largest size for the other families (automorphism enumeration cap).
pub const FAMILY_CAP: usize = 10;
/// Largest size accepted by [`all_graphs_of_size`].
pub const ALL_GRAPHS_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cycle,
    Path,
    Clique,
    Tree,
    Star,
    Custom,
    AllGraphs,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Clique => "clique",
            Family::Tree => "tree",
            Family::Star => "star",
            Family::Custom => "custom",
            Family::AllGraphs => "all-graphs",
        }
    }

    /// Smallest and largest pattern size for `family_collection`.
    pub fn size_range(self) -> (usize, usize) {
        match self {
            Family::Cycle | Family::Clique => (3, FAMILY_CAP),
            Family::Path | Family::Star => (2, FAMILY_CAP),
            Family::Tree => (2, TREE_CAP),
            Family::Custom | Family::AllGraphs => (1, ALL_GRAPHS_CAP),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "cycle" | "cycles" => Family::Cycle,
            "path" | "paths" => Family::Path,
            "clique" | "cliques" => Family::Clique,
            "tree" | "trees" => Family::Tree,
            "star" | "stars" => Family::Star,
            "custom" => Family::Custom,
            "all-graphs" | "all" => Family::AllGraphs,
            _ => return Err(CatalogError::UnknownFamily(s.to_string())),
        })
    }
}

/// Graphlets are matched as induced subgraphs, motifs as plain subgraphs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountingMode {
    #[default]
    Graphlet,
    Motif,
}

impl CountingMode {
    pub fn induced(self) -> bool {
        self == CountingMode::Graphlet
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CountingMode::Graphlet => "graphlet",
            CountingMode::Motif => "motif",
        }
    }
}

impl fmt::Display for CountingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CountingMode {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graphlet" | "graphlets" | "induced" => Ok(CountingMode::Graphlet),
            "motif" | "motifs" | "non-induced" => Ok(CountingMode::Motif),
            _ => Err(CatalogError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubstructurePattern {
    #[serde(serialize_with = "ser_edges")]
    pub graph: Graph,
    pub orbits: OrbitPartition,
    pub family: Family,
    pub size: usize,
}

fn ser_edges<S: serde::Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Graph", 2)?;
    st.serialize_field("n", &g.n())?;
    st.serialize_field("edges", g.edges())?;
    st.end()
}

impl SubstructurePattern {
    /// Relabels `graph` canonically and computes its orbits.
    pub fn new(graph: &Graph, family: Family) -> Result<Self, CatalogError> {
        let cap = graph.n().max(crate::iso::DEFAULT_ORBIT_CAP);
        let canon = canonical_form(graph);
        let graph = graph.permuted(&canon.labeling);
        let orbits = compute_orbits_with_cap(&graph, cap)?;
        Ok(SubstructurePattern {
            size: graph.n(),
            graph,
            orbits,
            family,
        })
    }

    pub fn vertex_dims(&self) -> usize {
        self.orbits.d()
    }

    pub fn edge_dims(&self) -> usize {
        self.orbits.edge_orbits.len()
    }
}

/// Ordered, pairwise non-isomorphic set of patterns.
#[derive(Clone, Debug, Serialize)]
pub struct Collection {
    pub patterns: Vec<SubstructurePattern>,
    pub mode: CountingMode,
    /// Set for deck collections, which contain disconnected graphs.
    pub allow_disconnected: bool,
    /// Human-readable description, e.g. `cycle<=6`.
    pub label: String,
}

impl Collection {
    /// Collection with no patterns (no structural identifiers).
    pub fn empty(mode: CountingMode) -> Self {
        Collection {
            patterns: Vec::new(),
            mode,
            allow_disconnected: false,
            label: "none".to_string(),
        }
    }

    /// Builds a collection from arbitrary connected patterns, rejecting
    /// isomorphic duplicates.
    pub fn custom(graphs: &[Graph], mode: CountingMode) -> Result<Self, CatalogError> {
        for i in 0..graphs.len() {
            for j in i + 1..graphs.len() {
                if are_isomorphic(&graphs[i], &graphs[j]) {
                    return Err(CatalogError::DuplicatePattern(i, j));
                }
            }
        }
        let mut patterns = graphs
            .iter()
            .map(|g| SubstructurePattern::new(g, Family::Custom))
            .collect::<Result<Vec<_>, _>>()?;
        sort_patterns(&mut patterns);
        let c = Collection {
            patterns,
            mode,
            allow_disconnected: false,
            label: "custom".to_string(),
        };
        c.check_connected()?;
        Ok(c)
    }

    fn check_connected(&self) -> Result<(), CatalogError> {
        if !self.allow_disconnected && self.patterns.iter().any(|p| !p.graph.is_connected()) {
            return Err(crate::error::IsoError::DisconnectedPattern.into());
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// `D`: total number of vertex orbits.
    pub fn vertex_dims(&self) -> usize {
        self.patterns.iter().map(|p| p.vertex_dims()).sum()
    }

    pub fn edge_dims(&self) -> usize {
        self.patterns.iter().map(|p| p.edge_dims()).sum()
    }

    /// Column offset of each pattern in the vertex feature matrix.
    pub fn vertex_offsets(&self) -> Vec<usize> {
        offsets(self.patterns.iter().map(|p| p.vertex_dims()))
    }

    pub fn edge_offsets(&self) -> Vec<usize> {
        offsets(self.patterns.iter().map(|p| p.edge_dims()))
    }

    pub fn match_options(&self) -> MatchOptions {
        MatchOptions {
            induced: self.mode.induced(),
            allow_disconnected: self.allow_disconnected,
        }
    }

    /// Concatenation of two collections with the same mode. Patterns of `other`
    /// isomorphic to one already present are skipped.
    pub fn union(&self, other: &Collection) -> Collection {
        let mut patterns = self.patterns.clone();
        for p in &other.patterns {
            if !patterns.iter().any(|q| are_isomorphic(&q.graph, &p.graph)) {
                patterns.push(p.clone());
            }
        }
        sort_patterns(&mut patterns);
        Collection {
            patterns,
            mode: self.mode,
            allow_disconnected: self.allow_disconnected || other.allow_disconnected,
            label: format!("{}+{}", self.label, other.label),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("collection serializes")
    }

    /// Names of the vertex feature columns, `<pattern>_o<orbit>`.
    pub fn vertex_column_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, p) in self.patterns.iter().enumerate() {
            let name = pattern_name(p, i);
            for o in 0..p.vertex_dims() {
                out.push(format!("{name}_o{o}"));
            }
        }
        out
    }
}

fn pattern_name(p: &SubstructurePattern, i: usize) -> String {
    match p.family {
        Family::Cycle => format!("C{}", p.size),
        Family::Path => format!("P{}", p.size),
        Family::Clique => format!("K{}", p.size),
        Family::Star => format!("S{}", p.size - 1),
        _ => format!("H{i}"),
    }
}

fn offsets(widths: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = 0;
    widths
        .map(|w| {
            let o = acc;
            acc += w;
            o
        })
        .collect()
}

fn sort_patterns(patterns: &mut [SubstructurePattern]) {
    patterns.sort_by_cached_key(|p| (p.size, canonical_form(&p.graph).code));
}

/// All members of `family` with size up to `k_max`.
pub fn family_collection(
    family: Family,
    k_max: usize,
    mode: CountingMode,
) -> Result<Collection, CatalogError> {
    let (min, max) = family.size_range();
    if matches!(family, Family::Custom | Family::AllGraphs) {
        return Err(CatalogError::UnknownFamily(family.to_string()));
    }
    if k_max < min || k_max > max {
        return Err(CatalogError::SizeOutOfRange {
            family: family.to_string(),
            k: k_max,
            min,
            max,
        });
    }
    let graphs: Vec<Graph> = match family {
        Family::Cycle => (3..=k_max).map(cycle).collect(),
        Family::Path => (2..=k_max).map(path).collect(),
        Family::Clique => (3..=k_max).map(complete).collect(),
        Family::Star => (2..=k_max).map(|k| star(k - 1)).collect(),
        Family::Tree => (2..=k_max).flat_map(trees_of_size).collect(),
        Family::Custom | Family::AllGraphs => unreachable!(),
    };
    let mut patterns = graphs
        .iter()
        .map(|g| SubstructurePattern::new(g, family))
        .collect::<Result<Vec<_>, _>>()?;
    sort_patterns(&mut patterns);
    Ok(Collection {
        patterns,
        mode,
        allow_disconnected: false,
        label: format!("{family}<={k_max}"),
    })
}

/// Rooted-tree code in the style of Aho, Hopcroft and Ullman.
fn rooted_code(g: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| rooted_code(g, u, v))
        .collect();
    kids.sort_unstable();
    format!("({})", kids.concat())
}

/// Isomorphism-invariant code of an unrooted tree, rooted at its centre(s).
pub fn tree_code(g: &Graph) -> String {
    let n = g.n();
    if n <= 1 {
        return "()".repeat(n);
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in g.neighbors(v) {
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| rooted_code(g, c, usize::MAX))
        .min()
        .expect("a tree has a centre")
}

/// All non-isomorphic trees on `m` vertices, grown leaf by leaf.
pub fn trees_of_size(m: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1)];
    for size in 2..=m {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let edges = t.edges().iter().copied().chain([(v, size - 1)]);
                let g = Graph::from_edges(size, edges).expect("leaf extension is simple");
                if seen.insert(tree_code(&g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    if m == 0 {
        Vec::new()
    } else {
        level
    }
}

/// Every simple graph on `m` vertices up to isomorphism, connected or not,
/// as an induced-counting collection that accepts disconnected patterns.
pub fn all_graphs_of_size(m: usize) -> Result<Collection, CatalogError> {
    if m == 0 || m > ALL_GRAPHS_CAP {
        return Err(CatalogError::SizeOutOfRange {
            family: Family::AllGraphs.to_string(),
            k: m,
            min: 1,
            max: ALL_GRAPHS_CAP,
        });
    }
    let mut patterns = graphs_of_size(m)
        .iter()
        .map(|g| SubstructurePattern::new(g, Family::AllGraphs))
        .collect::<Result<Vec<_>, _>>()?;
    sort_patterns(&mut patterns);
    Ok(Collection {
        patterns,
        mode: CountingMode::Graphlet,
        allow_disconnected: true,
        label: format!("all-graphs={m}"),
    })
}

/// Isomorphism classes of graphs on `m` vertices, by adding one vertex with
/// every possible neighbourhood to each class on `m - 1` vertices.
pub fn graphs_of_size(m: usize) -> Vec<Graph> {
    if m == 0 {
        return vec![Graph::empty(0)];
    }
    let mut level = vec![Graph::empty(1)];
    for size in 2..=m {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..(1 << (size - 1)) {
                let new_edges = (0..size - 1)
                    .filter(|&u| mask >> u & 1 == 1)
                    .map(|u| (u, size - 1));
                let h = Graph::from_edges(size, g.edges().iter().copied().chain(new_edges))
                    .expect("simple");
                if seen.insert(canonical_form(&h).code) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_examples() {
        let c = family_collection(Family::Cycle, 6, CountingMode::Graphlet).unwrap();
        assert_eq!((c.len(), c.vertex_dims()), (4, 4));
        let c = family_collection(Family::Clique, 5, CountingMode::Graphlet).unwrap();
        assert_eq!((c.len(), c.vertex_dims()), (3, 3));
        let c = family_collection(Family::Path, 5, CountingMode::Motif).unwrap();
        assert_eq!(c.len(), 4);
        let c = family_collection(Family::Tree, 5, CountingMode::Motif).unwrap();
        assert_eq!(c.len(), 7);
        assert!(c.patterns.windows(2).all(|w| w[0].size <= w[1].size));
        assert!(matches!(
            family_collection(Family::Cycle, 2, CountingMode::Graphlet),
            Err(CatalogError::SizeOutOfRange { .. })
        ));
        assert!(matches!(
            family_collection(Family::Tree, 13, CountingMode::Graphlet),
            Err(CatalogError::SizeOutOfRange { .. })
        ));
        assert!(matches!(
            "hexagon".parse::<Family>(),
            Err(CatalogError::UnknownFamily(_))
        ));
    }

    /// Trees up to isomorphism by brute force over all Pruefer sequences.
    fn brute_tree_count(m: usize) -> usize {
        let mut classes: Vec<Graph> = Vec::new();
        let total = m.pow(m as u32 - 2);
        for code in 0..total {
            let mut seq = Vec::new();
            let mut c = code;
            for _ in 0..m - 2 {
                seq.push(c % m);
                c /= m;
            }
            let t = crate::generators::tree_from_pruefer(m, &seq);
            if !classes.iter().any(|x| are_isomorphic(x, &t)) {
                classes.push(t);
            }
        }
        classes.len()
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=12).map(|m| trees_of_size(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]);
        for m in 3..=7 {
            assert_eq!(brute_tree_count(m), trees_of_size(m).len());
        }
    }

    fn brute_graph_count(m: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .collect();
        let mut classes: Vec<Graph> = Vec::new();
        for mask in 0u64..(1 << pairs.len()) {
            let g = Graph::from_edges(
                m,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .unwrap();
            if !classes.iter().any(|x| are_isomorphic(x, &g)) {
                classes.push(g);
            }
        }
        classes.len()
    }

    #[test]
    fn all_graph_counts() {
        let counts: Vec<usize> = (1..=7)
            .map(|m| all_graphs_of_size(m).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156, 1044]);
        for m in 1..=5 {
            assert_eq!(brute_graph_count(m), counts[m - 1]);
        }
        assert!(all_graphs_of_size(8).is_err());
    }

    #[test]
    fn custom_rejects_duplicates_and_serializes() {
        let err = Collection::custom(
            &[cycle(4), path(3), cycle(4).permuted(&[1, 2, 3, 0])],
            CountingMode::Motif,
        );
        assert!(matches!(err, Err(CatalogError::DuplicatePattern(0, 2))));
        let c = Collection::custom(&[complete(4)], CountingMode::Graphlet).unwrap();
        let json: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(json["patterns"][0]["orbits"]["aut_size"], 24);
        assert_eq!(
            json["patterns"][0]["graph"]["edges"]
                .as_array()
                .unwrap()
                .len(),
            6
        );
    }
}
