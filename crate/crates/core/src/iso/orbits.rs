use serde::Serialize;

use crate::error::IsoError;
use crate::graph::Graph;
use crate::iso::matcher::{enumerate_matches, MatchOptions};
use crate::iso::refine::stable_colors;

/// Default cap on pattern size for automorphism enumeration.
pub const DEFAULT_ORBIT_CAP: usize = 10;

/// An edge orbit and the vertex orbits of its endpoints.
///
/// For an orbit whose edges cannot be reversed by any automorphism, the
/// canonical direction runs from `tail` to `head`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeOrbit {
    pub edges: Vec<(usize, usize)>,
    pub tail: usize,
    pub head: usize,
    pub reversible: bool,
}

/// Vertex and edge orbits of `Aut(H)` in a reproducible order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub vertex_orbits: Vec<Vec<usize>>,
    pub edge_orbits: Vec<EdgeOrbit>,
    pub aut_size: u64,
    #[serde(skip)]
    vertex_orbit_of: Vec<usize>,
    /// For arc `(a, b)` at `a * k + b`: edge orbit and whether the arc points
    /// in the canonical direction.
    #[serde(skip)]
    arc_class: Vec<Option<(usize, bool)>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

impl OrbitPartition {
    /// Number of vertex orbits (the per-pattern vertex feature width).
    pub fn d(&self) -> usize {
        self.vertex_orbits.len()
    }

    pub fn vertex_orbit_of(&self, v: usize) -> usize {
        self.vertex_orbit_of[v]
    }

    /// Edge orbit of the arc `(a, b)` and whether the arc runs in the orbit's
    /// canonical direction. `None` if `{a, b}` is not an edge.
    pub fn arc_class(&self, a: usize, b: usize) -> Option<(usize, bool)> {
        let k = self.vertex_orbit_of.len();
        self.arc_class[a * k + b]
    }

    /// Builds the partition from an explicit list of automorphisms.
    pub fn from_automorphisms(h: &Graph, automorphisms: &[Vec<usize>]) -> Self {
        let k = h.n();
        let mut vuf = UnionFind::new(k);
        let edges = h.edges();
        let arc_id = |a: usize, b: usize| -> usize {
            let e = edges
                .binary_search(&(a.min(b), a.max(b)))
                .expect("arc of an edge");
            2 * e + usize::from(a > b)
        };
        let mut auf = UnionFind::new(2 * edges.len());
        for g in automorphisms {
            for v in 0..k {
                vuf.union(v, g[v]);
            }
            for &(a, b) in edges {
                auf.union(arc_id(a, b), arc_id(g[a], g[b]));
                auf.union(arc_id(b, a), arc_id(g[b], g[a]));
            }
        }

        // vertex orbits in canonical order
        let colors = stable_colors(h);
        let mut vclasses = vuf.classes();
        vclasses.sort_by_key(|c| (c.len(), h.degree(c[0]), colors[c[0]], c[0]));
        let mut vertex_orbit_of = vec![0; k];
        for (i, c) in vclasses.iter().enumerate() {
            for &v in c {
                vertex_orbit_of[v] = i;
            }
        }

        // group arc orbits into edge orbits
        let arc_of = |id: usize| -> (usize, usize) {
            let (a, b) = edges[id / 2];
            if id.is_multiple_of(2) {
                (a, b)
            } else {
                (b, a)
            }
        };
        let mut arc_root = vec![0; 2 * edges.len()];
        for (id, root) in arc_root.iter_mut().enumerate() {
            *root = auf.find(id);
        }
        let mut raw: Vec<(EdgeOrbit, usize)> = Vec::new();
        let mut seen_edge = vec![false; edges.len()];
        for e in 0..edges.len() {
            if seen_edge[e] {
                continue;
            }
            let fwd = arc_root[2 * e];
            let bwd = arc_root[2 * e + 1];
            let reversible = fwd == bwd;
            let mut members = Vec::new();
            for f in 0..edges.len() {
                if arc_root[2 * f] == fwd || arc_root[2 * f] == bwd {
                    seen_edge[f] = true;
                    members.push(edges[f]);
                }
            }
            // canonical arc orbit: tail in the lower vertex orbit, else the
            // orbit holding the smallest arc of the smallest edge
            let (a, b) = edges[e];
            let (oa, ob) = (vertex_orbit_of[a], vertex_orbit_of[b]);
            let canonical = if oa > ob { bwd } else { fwd };
            let (t, hd) = arc_of(canonical);
            raw.push((
                EdgeOrbit {
                    edges: members,
                    tail: vertex_orbit_of[t],
                    head: vertex_orbit_of[hd],
                    reversible,
                },
                canonical,
            ));
        }
        raw.sort_by(|(x, _), (y, _)| {
            (
                x.edges.len(),
                x.tail.min(x.head),
                x.tail.max(x.head),
                x.edges[0],
            )
                .cmp(&(
                    y.edges.len(),
                    y.tail.min(y.head),
                    y.tail.max(y.head),
                    y.edges[0],
                ))
        });
        let mut arc_class = vec![None; k * k];
        for (i, (orbit, canonical)) in raw.iter().enumerate() {
            for &(a, b) in &orbit.edges {
                let (f, r) = (arc_id(a, b), arc_id(b, a));
                let fwd_canon = orbit.reversible || arc_root[f] == *canonical;
                let bwd_canon = orbit.reversible || arc_root[r] == *canonical;
                arc_class[a * k + b] = Some((i, fwd_canon));
                arc_class[b * k + a] = Some((i, bwd_canon));
            }
        }
        OrbitPartition {
            vertex_orbits: vclasses,
            edge_orbits: raw.into_iter().map(|(o, _)| o).collect(),
            aut_size: automorphisms.len() as u64,
            vertex_orbit_of,
            arc_class,
        }
    }
}

/// Computes `Aut(H)` by matching `H` into itself and derives its orbits.
pub fn compute_orbits(h: &Graph) -> Result<OrbitPartition, IsoError> {
    compute_orbits_with_cap(h, DEFAULT_ORBIT_CAP)
}

pub fn compute_orbits_with_cap(h: &Graph, cap: usize) -> Result<OrbitPartition, IsoError> {
    if h.n() > cap {
        return Err(IsoError::PatternTooLarge { n: h.n(), cap });
    }
    let opts = MatchOptions::induced().allow_disconnected(true);
    let autos: Vec<Vec<usize>> = enumerate_matches(h, h, opts)?.map(|m| m.mapping).collect();
    Ok(OrbitPartition::from_automorphisms(h, &autos))
}
