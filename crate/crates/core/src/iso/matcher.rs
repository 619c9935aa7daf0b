use std::collections::HashSet;
use std::time::Instant;

use crate::error::IsoError;
use crate::graph::Graph;

/// How pattern edges and non-edges constrain a match.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MatchOptions {
    /// Require pattern non-edges to map to target non-edges (graphlets).
    pub induced: bool,
    /// Accept disconnected patterns.
    pub allow_disconnected: bool,
}

impl MatchOptions {
    pub fn induced() -> Self {
        MatchOptions {
            induced: true,
            allow_disconnected: false,
        }
    }

    pub fn non_induced() -> Self {
        MatchOptions::default()
    }

    pub fn allow_disconnected(mut self, allow: bool) -> Self {
        self.allow_disconnected = allow;
        self
    }
}

/// One injective, adjacency-preserving map from pattern vertices into the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Match {
    /// `mapping[p]` is the target image of pattern vertex `p`.
    pub mapping: Vec<usize>,
}

impl Match {
    /// Sorted image vertex set.
    pub fn image_vertices(&self) -> Vec<usize> {
        let mut v = self.mapping.clone();
        v.sort_unstable();
        v
    }

    /// Sorted image of the pattern's edges, each as `(min, max)`.
    pub fn image_edges(&self, pattern: &Graph) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = pattern
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.mapping[a], self.mapping[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        e.sort_unstable();
        e
    }
}

/// Per-depth precomputed constraints of the search plan.
#[derive(Clone, Debug)]
struct Step {
    vertex: usize,
    label: Option<u32>,
    degree: usize,
    /// Earlier pattern vertices adjacent to `vertex`.
    linked: Vec<usize>,
    /// Earlier pattern vertices not adjacent to `vertex` (checked when induced).
    unlinked: Vec<usize>,
}

/// Orders pattern vertices for backtracking: the highest-degree vertex first,
/// then repeatedly the vertex with most already-placed neighbours, ties by
/// degree (descending) and index.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.n();
    let mut placed = vec![false; k];
    let mut links = vec![0usize; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                (links[a], pattern.degree(a))
                    .cmp(&(links[b], pattern.degree(b)))
                    .then(b.cmp(&a))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for &u in pattern.neighbors(next) {
            links[u] += 1;
        }
    }
    order
}

/// Streaming enumerator of all matches of `pattern` in `target`.
///
/// Candidates for a pattern vertex with an already-mapped neighbour are drawn
/// from the neighbourhood of that neighbour's image (the one of smallest
/// degree); otherwise from all target vertices.
pub struct Matches<'a> {
    pattern: &'a Graph,
    target: &'a Graph,
    induced: bool,
    check_edge_labels: bool,
    steps: Vec<Step>,
    mapping: Vec<usize>,
    used: Vec<bool>,
    /// Candidate cursor per depth: `(anchor image or usize::MAX, position)`.
    frames: Vec<(usize, usize)>,
    assigned: Vec<Option<usize>>,
    done: bool,
    deadline: Option<Instant>,
    ticks: u32,
    timed_out: bool,
}

impl<'a> Matches<'a> {
    pub fn new(
        pattern: &'a Graph,
        target: &'a Graph,
        opts: MatchOptions,
    ) -> Result<Self, IsoError> {
        let k = pattern.n();
        if k == 0 {
            return Err(IsoError::EmptyPattern);
        }
        if !opts.allow_disconnected && !pattern.is_connected() {
            return Err(IsoError::DisconnectedPattern);
        }
        let order = search_order(pattern);
        let mut pos = vec![0; k];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let steps = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let (mut linked, mut unlinked) = (Vec::new(), Vec::new());
                for &w in &order[..i] {
                    if pattern.has_edge(v, w) {
                        linked.push(w);
                    } else {
                        unlinked.push(w);
                    }
                }
                Step {
                    vertex: v,
                    label: pattern.vertex_labels().map(|l| l[v]),
                    degree: pattern.degree(v),
                    linked,
                    unlinked,
                }
            })
            .collect();
        let done = k > target.n();
        let mut m = Matches {
            pattern,
            target,
            induced: opts.induced,
            check_edge_labels: pattern.edge_labels().is_some(),
            steps,
            mapping: vec![usize::MAX; k],
            used: vec![false; target.n()],
            frames: Vec::with_capacity(k),
            assigned: vec![None; k],
            done,
            deadline: None,
            ticks: 0,
            timed_out: false,
        };
        if !m.done {
            let anchor = m.anchor(0);
            m.frames.push((anchor, 0));
        }
        Ok(m)
    }

    /// Stops the enumeration once `deadline` has passed; see [`Matches::timed_out`].
    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    /// True if the enumeration was cut short by the deadline.
    pub fn timed_out(&self) -> bool {
        self.timed_out
    }

    /// Image of the linked earlier pattern vertex with the smallest target
    /// degree, or `usize::MAX` if the step has no linked vertex.
    fn anchor(&self, depth: usize) -> usize {
        self.steps[depth]
            .linked
            .iter()
            .map(|&w| self.mapping[w])
            .min_by_key(|&x| self.target.degree(x))
            .unwrap_or(usize::MAX)
    }

    fn feasible(&self, depth: usize, c: usize) -> bool {
        let step = &self.steps[depth];
        let t = self.target;
        if self.used[c] || t.degree(c) < step.degree {
            return false;
        }
        if let Some(l) = step.label {
            if t.vertex_label(c) != l {
                return false;
            }
        }
        for &w in &step.linked {
            let cw = self.mapping[w];
            if !t.has_edge(c, cw) {
                return false;
            }
            if self.check_edge_labels
                && self.pattern.edge_label(step.vertex, w) != t.edge_label(c, cw)
            {
                return false;
            }
        }
        if self.induced {
            for &w in &step.unlinked {
                if t.has_edge(c, self.mapping[w]) {
                    return false;
                }
            }
        }
        true
    }

    fn next_candidate(&mut self, depth: usize) -> Option<usize> {
        loop {
            let (anchor, pos) = self.frames[depth];
            let c = if anchor == usize::MAX {
                if pos >= self.target.n() {
                    return None;
                }
                pos
            } else {
                *self.target.neighbors(anchor).get(pos)?
            };
            self.frames[depth].1 += 1;
            if let Some(deadline) = self.deadline {
                self.ticks = self.ticks.wrapping_add(1);
                if self.ticks.is_multiple_of(4096) && Instant::now() >= deadline {
                    self.timed_out = true;
                    self.done = true;
                    return None;
                }
            }
            if self.feasible(depth, c) {
                return Some(c);
            }
        }
    }
}

impl Iterator for Matches<'_> {
    type Item = Match;

    fn next(&mut self) -> Option<Match> {
        if self.done {
            return None;
        }
        let k = self.steps.len();
        while let Some(depth) = self.frames.len().checked_sub(1) {
            if self.done {
                return None;
            }
            if let Some(prev) = self.assigned[depth].take() {
                self.used[prev] = false;
                self.mapping[self.steps[depth].vertex] = usize::MAX;
            }
            match self.next_candidate(depth) {
                None => {
                    self.frames.pop();
                }
                Some(c) => {
                    self.assigned[depth] = Some(c);
                    self.used[c] = true;
                    self.mapping[self.steps[depth].vertex] = c;
                    if depth + 1 == k {
                        return Some(Match {
                            mapping: self.mapping.clone(),
                        });
                    }
                    let anchor = self.anchor(depth + 1);
                    self.frames.push((anchor, 0));
                }
            }
        }
        self.done = true;
        None
    }
}

/// Enumerates every (induced or non-induced) match of `pattern` in `target`.
///
/// The number of matches equals the number of distinct subgraphs times
/// `|Aut(pattern)|`. A pattern larger than the target yields nothing.
pub fn enumerate_matches<'a>(
    pattern: &'a Graph,
    target: &'a Graph,
    opts: MatchOptions,
) -> Result<Matches<'a>, IsoError> {
    Matches::new(pattern, target, opts)
}

/// Key identifying the subgraph a match covers: the vertex set for induced
/// matching, vertex and edge sets otherwise (the vertex set matters only for
/// patterns with isolated vertices).
fn subgraph_key(pattern: &Graph, m: &Match, induced: bool, n: usize) -> Vec<u64> {
    let mut key: Vec<u64> = m.image_vertices().into_iter().map(|v| v as u64).collect();
    if !induced {
        key.push(u64::MAX);
        key.extend(
            m.image_edges(pattern)
                .into_iter()
                .map(|(a, b)| (a * n + b) as u64),
        );
    }
    key
}

/// One representative match per distinct subgraph, in discovery order.
pub fn distinct_matches(
    pattern: &Graph,
    target: &Graph,
    opts: MatchOptions,
) -> Result<Vec<Match>, IsoError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in enumerate_matches(pattern, target, opts)? {
        if seen.insert(subgraph_key(pattern, &m, opts.induced, target.n())) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Distinct-subgraph count with a deadline; `None` if it ran out of time.
pub fn count_distinct_until(
    pattern: &Graph,
    target: &Graph,
    opts: MatchOptions,
    deadline: Instant,
) -> Result<Option<usize>, IsoError> {
    let mut seen = HashSet::new();
    let mut it = enumerate_matches(pattern, target, opts)?.with_deadline(deadline);
    for m in it.by_ref() {
        seen.insert(subgraph_key(pattern, &m, opts.induced, target.n()));
    }
    Ok(if it.timed_out() {
        None
    } else {
        Some(seen.len())
    })
}

/// Number of distinct subgraphs of `target` isomorphic to `pattern`.
pub fn count_distinct_subgraphs(
    pattern: &Graph,
    target: &Graph,
    opts: MatchOptions,
) -> Result<usize, IsoError> {
    Ok(distinct_matches(pattern, target, opts)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    fn count(h: &Graph, g: &Graph, induced: bool) -> (usize, usize) {
        let opts = MatchOptions {
            induced,
            allow_disconnected: true,
        };
        (
            enumerate_matches(h, g, opts).unwrap().count(),
            count_distinct_subgraphs(h, g, opts).unwrap(),
        )
    }

    #[test]
    fn spec_examples() {
        assert_eq!(count(&complete(3), &complete(4), true), (24, 4));
        assert_eq!(count(&path(2), &path(3), false), (4, 2));
        assert_eq!(count(&path(3), &complete(3), false), (6, 3));
        assert_eq!(count(&cycle(4), &complete(4), true), (0, 0));
        assert_eq!(count(&cycle(4), &complete(4), false), (24, 3));
        assert_eq!(count(&complete(3), &cycle(6), false).1, 0);
    }

    #[test]
    fn larger_pattern_is_empty_and_disconnected_needs_flag() {
        assert_eq!(count(&complete(5), &complete(4), false), (0, 0));
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            enumerate_matches(&two_edges, &complete(4), MatchOptions::induced()),
            Err(IsoError::DisconnectedPattern)
        ));
        // 3 perfect matchings of K4, each with |Aut| = 8
        assert_eq!(count(&two_edges, &complete(4), false), (24, 3));
        assert!(matches!(
            enumerate_matches(&Graph::empty(0), &complete(3), MatchOptions::default()),
            Err(IsoError::EmptyPattern)
        ));
    }

    #[test]
    fn labels_restrict_matches() {
        let h = path(2).with_vertex_labels(vec![1, 2]).unwrap();
        let g = path(3).with_vertex_labels(vec![1, 2, 1]).unwrap();
        assert_eq!(count(&h, &g, false), (2, 2));
        let he = path(2).with_edge_labels([((0, 1), 5)]).unwrap();
        let ge = path(3)
            .with_edge_labels([((0, 1), 5), ((1, 2), 4)])
            .unwrap();
        assert_eq!(count(&he, &ge, false), (2, 1));
    }

    #[test]
    fn deadline_stops_enumeration() {
        let g = complete(12);
        let past = Instant::now();
        let opts = MatchOptions::default();
        assert_eq!(
            count_distinct_until(&cycle(6), &g, opts, past).unwrap(),
            None
        );
        let later = Instant::now() + std::time::Duration::from_secs(60);
        assert_eq!(
            count_distinct_until(&complete(3), &g, opts, later).unwrap(),
            Some(220)
        );
    }

    #[test]
    fn iterator_is_fused_after_exhaustion() {
        let h = path(2);
        let g = path(3);
        let mut it = enumerate_matches(&h, &g, MatchOptions::default()).unwrap();
        assert_eq!(it.by_ref().count(), 4);
        assert!(it.next().is_none());
    }
}
