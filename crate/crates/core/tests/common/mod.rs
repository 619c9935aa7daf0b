//! Brute-force oracles, deliberately independent of the library's matcher.
#![allow(dead_code)]

use gsn_core::Graph;

/// Number of injective maps `h -> g` preserving edges (and non-edges when
/// `induced`), by extending partial maps vertex by vertex.
pub fn injective_maps(h: &Graph, g: &Graph, induced: bool) -> usize {
    fn go(h: &Graph, g: &Graph, induced: bool, map: &mut Vec<usize>, used: &mut [bool]) -> usize {
        let a = map.len();
        if a == h.n() {
            return 1;
        }
        let mut total = 0;
        for x in 0..g.n() {
            if used[x] {
                continue;
            }
            let ok = (0..a).all(|b| {
                let he = h.has_edge(a, b);
                let ge = g.has_edge(x, map[b]);
                if induced {
                    he == ge
                } else {
                    !he || ge
                }
            });
            if ok {
                used[x] = true;
                map.push(x);
                total += go(h, g, induced, map, used);
                map.pop();
                used[x] = false;
            }
        }
        total
    }
    go(h, g, induced, &mut Vec::new(), &mut vec![false; g.n()])
}

/// `|Aut(h)|` by trying all permutations.
pub fn automorphism_count(h: &Graph) -> usize {
    injective_maps(h, h, true)
}

/// Vertex orbits of `h` as a colour per vertex (the smallest vertex of the
/// orbit), from all automorphisms found by trying every permutation.
pub fn brute_orbits(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut color: Vec<usize> = (0..n).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        if h.edges().iter().all(|&(a, b)| h.has_edge(p[a], p[b])) {
            for v in 0..n {
                color[p[v]] = color[p[v]].min(v);
            }
        }
    });
    color
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Simple cycles of length `k` through each vertex (each cycle counted once
/// per vertex on it), by DFS over vertex sequences.
pub fn cycles_through_vertices(g: &Graph, k: usize) -> Vec<u64> {
    let n = g.n();
    let mut per_vertex = vec![0u64; n];
    let mut seen = std::collections::HashSet::new();
    fn dfs(
        g: &Graph,
        k: usize,
        path: &mut Vec<usize>,
        seen: &mut std::collections::HashSet<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        if path.len() == k {
            if g.has_edge(last, path[0]) {
                // edge set as key: distinct cycles on the same vertices differ
                let mut edges: Vec<usize> = (0..k)
                    .map(|i| {
                        let (a, b) = (path[i], path[(i + 1) % k]);
                        a.min(b) * 1000 + a.max(b)
                    })
                    .collect();
                edges.sort_unstable();
                seen.insert(edges);
            }
            return;
        }
        for &u in g.neighbors(last) {
            if !path.contains(&u) {
                path.push(u);
                dfs(g, k, path, seen);
                path.pop();
            }
        }
    }
    for s in 0..n {
        dfs(g, k, &mut vec![s], &mut seen);
    }
    for cyc in &seen {
        let mut vs: Vec<usize> = cyc.iter().flat_map(|e| [e / 1000, e % 1000]).collect();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            per_vertex[v] += 1;
        }
    }
    per_vertex
}

/// Induced `k`-cycles through each vertex, by testing every `k`-subset.
pub fn induced_cycles_through_vertices(g: &Graph, k: usize) -> Vec<u64> {
    let n = g.n();
    let mut per_vertex = vec![0u64; n];
    let mut subset = Vec::new();
    fn rec(g: &Graph, k: usize, start: usize, subset: &mut Vec<usize>, out: &mut [u64]) {
        if subset.len() == k {
            let sub = g.induced_subgraph(subset);
            if sub.edge_count() == k && (0..k).all(|v| sub.degree(v) == 2) && sub.is_connected() {
                for &v in subset.iter() {
                    out[v] += 1;
                }
            }
            return;
        }
        for v in start..g.n() {
            subset.push(v);
            rec(g, k, v + 1, subset, out);
            subset.pop();
        }
    }
    rec(g, k, 0, &mut subset, &mut per_vertex);
    per_vertex
}

/// Number of `k`-subsets inducing a complete graph.
pub fn cliques(g: &Graph, k: usize) -> usize {
    fn rec(g: &Graph, k: usize, start: usize, cur: &mut Vec<usize>) -> usize {
        if cur.len() == k {
            return 1;
        }
        let mut t = 0;
        for v in start..g.n() {
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                t += rec(g, k, v + 1, cur);
                cur.pop();
            }
        }
        t
    }
    rec(g, k, 0, &mut Vec::new())
}
