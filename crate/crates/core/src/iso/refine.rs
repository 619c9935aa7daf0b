//! Label-invariant colour refinement and individualisation-refinement search.
//!
//! Colours are renamed every round to the rank of their signature among all
//! signatures present, so the result depends only on the isomorphism class
//! of the (coloured) input, never on vertex numbering.

use std::collections::BTreeMap;

use crate::graph::Graph;

type Signature = (u32, Vec<(u32, u32)>);

fn signature(g: &Graph, colors: &[u32], v: usize) -> Signature {
    let mut neigh: Vec<(u32, u32)> = g
        .neighbors(v)
        .iter()
        .map(|&u| (g.edge_label(v, u), colors[u]))
        .collect();
    neigh.sort_unstable();
    (colors[v], neigh)
}

/// Refines the colourings of several graphs jointly until the combined
/// partition is stable. Colours are dense ranks shared across all graphs.
pub fn refine_jointly(graphs: &[&Graph], colors: &mut [Vec<u32>]) {
    normalize(colors);
    let mut count = distinct(colors);
    loop {
        let sigs: Vec<Vec<Signature>> = graphs
            .iter()
            .zip(colors.iter())
            .map(|(g, c)| (0..g.n()).map(|v| signature(g, c, v)).collect())
            .collect();
        let mut ranks: BTreeMap<&Signature, u32> = BTreeMap::new();
        for s in sigs.iter().flatten() {
            ranks.insert(s, 0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i as u32;
        }
        for (c, s) in colors.iter_mut().zip(&sigs) {
            for (x, sig) in c.iter_mut().zip(s) {
                *x = ranks[sig];
            }
        }
        let next = ranks.len();
        if next == count {
            return;
        }
        count = next;
    }
}

/// Replaces colours by their rank among the distinct values present.
fn normalize(colors: &mut [Vec<u32>]) {
    let mut values: Vec<u32> = colors.iter().flatten().copied().collect();
    values.sort_unstable();
    values.dedup();
    for c in colors.iter_mut().flat_map(|c| c.iter_mut()) {
        *c = values.binary_search(c).expect("value present") as u32;
    }
}

fn distinct(colors: &[Vec<u32>]) -> usize {
    let mut values: Vec<u32> = colors.iter().flatten().copied().collect();
    values.sort_unstable();
    values.dedup();
    values.len()
}

/// Stable label-invariant colouring of a single graph, starting from vertex
/// labels.
pub fn stable_colors(g: &Graph) -> Vec<u32> {
    let mut c = vec![(0..g.n()).map(|v| g.vertex_label(v)).collect()];
    refine_jointly(&[g], &mut c);
    c.pop().expect("one colouring")
}

fn histogram(c: &[u32]) -> Vec<u32> {
    let mut h = c.to_vec();
    h.sort_unstable();
    h
}

/// First non-singleton colour class (smallest size, then smallest colour).
fn target_cell(c: &[u32]) -> Option<u32> {
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for &x in c {
        *sizes.entry(x).or_default() += 1;
    }
    sizes
        .into_iter()
        .filter(|&(_, s)| s > 1)
        .min_by_key(|&(col, s)| (s, col))
        .map(|(col, _)| col)
}

fn individualize(c: &[u32], v: usize) -> Vec<u32> {
    // shift everything so the new singleton sorts directly before its old cell
    c.iter()
        .enumerate()
        .map(|(u, &x)| if u == v { 2 * x } else { 2 * x + 1 })
        .collect()
}

fn is_isomorphism(g1: &Graph, g2: &Graph, map: &[usize]) -> bool {
    (0..g1.n()).all(|v| g1.vertex_label(v) == g2.vertex_label(map[v]))
        && g1.edges().iter().all(|&(u, v)| {
            g2.has_edge(map[u], map[v]) && g1.edge_label(u, v) == g2.edge_label(map[u], map[v])
        })
}

/// Searches for an isomorphism `g1 -> g2` by individualisation-refinement.
///
/// Sound and complete: every branch of the target cell of `g2` is tried for
/// a fixed vertex of `g1`, and leaves are verified edge by edge.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let c1 = (0..g1.n()).map(|v| g1.vertex_label(v)).collect();
    let c2 = (0..g2.n()).map(|v| g2.vertex_label(v)).collect();
    search(g1, g2, c1, c2)
}

fn search(g1: &Graph, g2: &Graph, c1: Vec<u32>, c2: Vec<u32>) -> Option<Vec<usize>> {
    let mut cs = vec![c1, c2];
    refine_jointly(&[g1, g2], &mut cs);
    let c2 = cs.pop().expect("two colourings");
    let c1 = cs.pop().expect("two colourings");
    if histogram(&c1) != histogram(&c2) {
        return None;
    }
    let Some(cell) = target_cell(&c1) else {
        let mut by_color = vec![usize::MAX; g2.n()];
        for (w, &x) in c2.iter().enumerate() {
            by_color[x as usize] = w;
        }
        let map: Vec<usize> = c1.iter().map(|&x| by_color[x as usize]).collect();
        return is_isomorphism(g1, g2, &map).then_some(map);
    };
    let v = c1
        .iter()
        .position(|&x| x == cell)
        .expect("cell is non-empty");
    let left = individualize(&c1, v);
    for w in (0..g2.n()).filter(|&w| c2[w] == cell) {
        if let Some(map) = search(g1, g2, left.clone(), individualize(&c2, w)) {
            return Some(map);
        }
    }
    None
}

/// Canonical labelling: `labeling[v]` is the canonical position of `v`, and
/// `code` is the relabelled adjacency (plus labels) that is minimal over the
/// search tree. Isomorphic graphs get equal codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub labeling: Vec<usize>,
    pub code: Vec<u64>,
}

/// Computes a canonical form by exhaustive individualisation-refinement.
///
/// Meant for small graphs. Branches on one representative per class of
/// twin vertices, which keeps complete graphs, stars and edgeless graphs cheap.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let c = (0..g.n()).map(|v| g.vertex_label(v)).collect();
    let mut best: Option<CanonicalForm> = None;
    canon_search(g, c, &mut best);
    best.unwrap_or(CanonicalForm {
        labeling: Vec::new(),
        code: Vec::new(),
    })
}

fn leaf_code(g: &Graph, labeling: &[usize]) -> Vec<u64> {
    let n = g.n();
    let mut inv = vec![0; n];
    for (v, &p) in labeling.iter().enumerate() {
        inv[p] = v;
    }
    let mut code = Vec::with_capacity(n + n * n / 64 + 1);
    code.extend(inv.iter().map(|&v| g.vertex_label(v) as u64));
    let mut word = 0u64;
    let mut bits = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (inv[i], inv[j]);
            let cell = if g.has_edge(a, b) {
                1 + g.edge_label(a, b) as u64
            } else {
                0
            };
            if g.edge_labels().is_some() {
                code.push(cell);
            } else {
                word = (word << 1) | cell;
                bits += 1;
                if bits == 64 {
                    code.push(word);
                    word = 0;
                    bits = 0;
                }
            }
        }
    }
    if bits > 0 {
        code.push(word << (64 - bits));
    }
    code
}

fn twins(g: &Graph, a: usize, b: usize) -> bool {
    if g.vertex_label(a) != g.vertex_label(b) || g.degree(a) != g.degree(b) {
        return false;
    }
    let strip = |x: usize, other: usize| -> Vec<(usize, u32)> {
        g.neighbors(x)
            .iter()
            .filter(|&&u| u != other)
            .map(|&u| (u, g.edge_label(x, u)))
            .collect()
    };
    strip(a, b) == strip(b, a)
}

fn canon_search(g: &Graph, c: Vec<u32>, best: &mut Option<CanonicalForm>) {
    let mut cs = vec![c];
    refine_jointly(&[g], &mut cs);
    let c = cs.pop().expect("one colouring");
    let Some(cell) = target_cell(&c) else {
        let labeling: Vec<usize> = c.iter().map(|&x| x as usize).collect();
        let code = leaf_code(g, &labeling);
        if best.as_ref().is_none_or(|b| code < b.code) {
            *best = Some(CanonicalForm { labeling, code });
        }
        return;
    };
    let members: Vec<usize> = (0..g.n()).filter(|&v| c[v] == cell).collect();
    let mut reps: Vec<usize> = Vec::new();
    for &v in &members {
        if !reps.iter().any(|&r| twins(g, r, v)) {
            reps.push(v);
        }
    }
    for v in reps {
        canon_search(g, individualize(&c, v), best);
    }
}
