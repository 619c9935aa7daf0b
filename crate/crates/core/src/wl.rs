//! 1-WL colour refinement and the Folklore k-WL test for k in {2, 3}.
//!
//! Colours are interned in one dictionary shared by every graph refined
//! together, so histograms of different graphs are directly comparable.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::WlError;
use crate::graph::Graph;

/// Default vertex caps for k-FWL (memory grows as n^k).
pub const FWL2_CAP: usize = 40;
pub const FWL3_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<u32>,
    /// Round at which stability was detected.
    pub round: usize,
    /// Sorted `(colour, multiplicity)` pairs.
    pub histogram: Vec<(u32, usize)>,
}

impl Coloring {
    fn new(colors: Vec<u32>, round: usize) -> Self {
        let mut sorted = colors.clone();
        sorted.sort_unstable();
        let mut histogram: Vec<(u32, usize)> = Vec::new();
        for c in sorted {
            match histogram.last_mut() {
                Some((x, m)) if *x == c => *m += 1,
                _ => histogram.push((c, 1)),
            }
        }
        Coloring {
            colors,
            round,
            histogram,
        }
    }

    pub fn num_colors(&self) -> usize {
        self.histogram.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WlTest {
    Wl1,
    Fwl2,
    Fwl3,
}

impl fmt::Display for WlTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WlTest::Wl1 => "wl1",
            WlTest::Fwl2 => "fwl2",
            WlTest::Fwl3 => "fwl3",
        })
    }
}

impl FromStr for WlTest {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "wl1" | "1wl" | "1-wl" => Ok(WlTest::Wl1),
            "fwl2" | "2fwl" | "2-fwl" => Ok(WlTest::Fwl2),
            "fwl3" | "3fwl" | "3-fwl" => Ok(WlTest::Fwl3),
            other => Err(format!(
                "unknown test '{other}' (expected wl1, fwl2 or fwl3)"
            )),
        }
    }
}

/// Injective colour dictionary.
#[derive(Default)]
struct Interner<K> {
    map: HashMap<K, u32>,
}

impl<K: std::hash::Hash + Eq> Interner<K> {
    fn id(&mut self, key: K) -> u32 {
        let next = self.map.len() as u32;
        *self.map.entry(key).or_insert(next)
    }
}

fn class_count(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Wl1Options {
    /// Pair each neighbour colour with the connecting edge label.
    pub edge_labels: bool,
}

/// 1-WL on a single graph. The initial colouring defaults to vertex labels.
pub fn wl1_refine(g: &Graph, initial: Option<&[u32]>) -> Result<Coloring, WlError> {
    let init = initial.map(|c| vec![c.to_vec()]);
    Ok(
        wl1_refine_jointly(&[g], init.as_deref(), Wl1Options::default())?
            .pop()
            .expect("one colouring"),
    )
}

/// 1-WL on several graphs in one interning context. All graphs are refined
/// for the same number of rounds, until no graph's partition changes.
pub fn wl1_refine_jointly(
    graphs: &[&Graph],
    initial: Option<&[Vec<u32>]>,
    opts: Wl1Options,
) -> Result<Vec<Coloring>, WlError> {
    let mut interner: Interner<(u32, Vec<(u32, u32)>)> = Interner::default();
    let mut init_interner: Interner<u32> = Interner::default();
    let mut colors: Vec<Vec<u32>> = Vec::with_capacity(graphs.len());
    for (gi, g) in graphs.iter().enumerate() {
        let raw: Vec<u32> = match initial {
            Some(init) => {
                let c = &init[gi];
                if c.len() != g.n() {
                    return Err(WlError::InitialLength {
                        expected: g.n(),
                        found: c.len(),
                    });
                }
                c.clone()
            }
            None => (0..g.n()).map(|v| g.vertex_label(v)).collect(),
        };
        colors.push(raw.into_iter().map(|x| init_interner.id(x)).collect());
    }
    let mut counts: Vec<usize> = colors.iter().map(|c| class_count(c)).collect();
    let mut round = 0;
    loop {
        round += 1;
        let next: Vec<Vec<u32>> = graphs
            .iter()
            .zip(&colors)
            .map(|(g, c)| {
                (0..g.n())
                    .map(|v| {
                        let mut neigh: Vec<(u32, u32)> = g
                            .neighbors(v)
                            .iter()
                            .map(|&u| {
                                let l = if opts.edge_labels {
                                    g.edge_label(v, u)
                                } else {
                                    0
                                };
                                (l, c[u])
                            })
                            .collect();
                        neigh.sort_unstable();
                        interner.id((c[v], neigh))
                    })
                    .collect()
            })
            .collect();
        let next_counts: Vec<usize> = next.iter().map(|c| class_count(c)).collect();
        colors = next;
        if next_counts == counts {
            break;
        }
        counts = next_counts;
    }
    Ok(colors
        .into_iter()
        .map(|c| Coloring::new(c, round))
        .collect())
}

fn fwl_cap(k: usize) -> Result<usize, WlError> {
    match k {
        2 => Ok(FWL2_CAP),
        3 => Ok(FWL3_CAP),
        _ => Err(WlError::UnsupportedK(k)),
    }
}

/// Isomorphism type of a k-tuple: equality pattern, adjacency and edge
/// labels between positions, and vertex labels.
fn tuple_type(g: &Graph, t: &[usize]) -> Vec<u32> {
    let mut key = Vec::new();
    for i in 0..t.len() {
        key.push(g.vertex_label(t[i]));
        for j in i + 1..t.len() {
            let rel = if t[i] == t[j] {
                0
            } else if g.has_edge(t[i], t[j]) {
                2 + g.edge_label(t[i], t[j])
            } else {
                1
            };
            key.push(rel);
        }
    }
    key
}

fn decode(mut idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

/// k-FWL on a single graph.
pub fn kfwl_refine(g: &Graph, k: usize) -> Result<Coloring, WlError> {
    Ok(kfwl_refine_jointly(&[g], k)?.pop().expect("one colouring"))
}

/// Folklore k-WL on several graphs in one interning context. Tuple `t` is
/// stored at index `sum_i t[i] * n^(k-1-i)`.
pub fn kfwl_refine_jointly(graphs: &[&Graph], k: usize) -> Result<Vec<Coloring>, WlError> {
    let cap = fwl_cap(k)?;
    if let Some(g) = graphs.iter().find(|g| g.n() > cap) {
        return Err(WlError::TooLarge { k, n: g.n(), cap });
    }
    let mut types: Interner<Vec<u32>> = Interner::default();
    let mut colors: Vec<Vec<u32>> = graphs
        .iter()
        .map(|g| {
            let n = g.n();
            (0..n.pow(k as u32))
                .map(|i| types.id(tuple_type(g, &decode(i, n, k))))
                .collect()
        })
        .collect();
    let mut interner: Interner<(u32, Vec<u32>)> = Interner::default();
    let mut counts: Vec<usize> = colors.iter().map(|c| class_count(c)).collect();
    let mut round = 0;
    loop {
        round += 1;
        let next: Vec<Vec<u32>> = graphs
            .iter()
            .zip(&colors)
            .map(|(g, c)| {
                let n = g.n();
                let pow: Vec<usize> = (0..k).map(|i| n.pow((k - 1 - i) as u32)).collect();
                (0..c.len())
                    .map(|idx| {
                        let t = decode(idx, n, k);
                        // for each u: colours of t with position i replaced by u
                        let mut multiset: Vec<Vec<u32>> = (0..n)
                            .map(|u| {
                                (0..k)
                                    .map(|i| {
                                        let j = idx - t[i] * pow[i] + u * pow[i];
                                        c[j]
                                    })
                                    .collect()
                            })
                            .collect();
                        multiset.sort_unstable();
                        interner.id((c[idx], multiset.concat()))
                    })
                    .collect()
            })
            .collect();
        let next_counts: Vec<usize> = next.iter().map(|c| class_count(c)).collect();
        colors = next;
        if next_counts == counts {
            break;
        }
        counts = next_counts;
    }
    Ok(colors
        .into_iter()
        .map(|c| Coloring::new(c, round))
        .collect())
}

/// True iff the stable histograms differ (the graphs are told apart).
pub fn wl_distinguish(g1: &Graph, g2: &Graph, test: WlTest) -> Result<bool, WlError> {
    if g1.n() != g2.n() {
        return Ok(true);
    }
    let cs = match test {
        WlTest::Wl1 => wl1_refine_jointly(&[g1, g2], None, Wl1Options::default())?,
        WlTest::Fwl2 => kfwl_refine_jointly(&[g1, g2], 2)?,
        WlTest::Fwl3 => kfwl_refine_jointly(&[g1, g2], 3)?,
    };
    Ok(cs[0].histogram != cs[1].histogram)
}

/// Vertex partition as sorted classes.
pub fn partition(colors: &[u32]) -> Vec<Vec<usize>> {
    let mut by: HashMap<u32, Vec<usize>> = HashMap::new();
    for (v, &c) in colors.iter().enumerate() {
        by.entry(c).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = by.into_values().collect();
    classes.sort();
    classes
}

/// True if every class of `fine` lies inside a class of `coarse`.
pub fn refines(fine: &[u32], coarse: &[u32]) -> bool {
    let mut map: HashMap<u32, u32> = HashMap::new();
    fine.iter()
        .zip(coarse)
        .all(|(f, c)| *map.entry(*f).or_insert(*c) == *c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn wl1_examples() {
        let c = wl1_refine(&rook_4x4(), None).unwrap();
        assert_eq!(c.histogram.len(), 1);
        assert_eq!(c.histogram[0].1, 16);
        assert_eq!(c.round, 1);
        let p = wl1_refine(&path(3), None).unwrap();
        assert_eq!(partition(&p.colors), vec![vec![0, 2], vec![1]]);
        assert!(!wl_distinguish(&decalin(), &bicyclopentyl(), WlTest::Wl1).unwrap());
    }

    #[test]
    fn fwl_examples() {
        let r = kfwl_refine(&rook_4x4(), 2).unwrap();
        let mut mult: Vec<usize> = r.histogram.iter().map(|x| x.1).collect();
        mult.sort_unstable();
        assert_eq!(mult, vec![16, 16 * 6, 16 * 15 - 16 * 6]);
        assert!(!wl_distinguish(&rook_4x4(), &shrikhande(), WlTest::Fwl2).unwrap());
        let two_triangles = disjoint_union(&cycle(3), &cycle(3));
        assert!(!wl_distinguish(&cycle(6), &two_triangles, WlTest::Wl1).unwrap());
        assert!(wl_distinguish(&cycle(6), &two_triangles, WlTest::Fwl2).unwrap());
        assert!(wl_distinguish(&cycle(6), &two_triangles, WlTest::Fwl3).unwrap());
        assert_eq!(kfwl_refine(&cycle(5), 4), Err(WlError::UnsupportedK(4)));
        assert!(matches!(
            kfwl_refine(&cycle(41), 2),
            Err(WlError::TooLarge { .. })
        ));
    }

    #[test]
    fn sound_on_permuted_copies() {
        let mut rng = crate::rng::seeded(3);
        for i in 0..40 {
            let n = 4 + i % 7;
            let g = erdos_renyi(n, 0.4, &mut rng);
            let h = g.permuted(&random_permutation(n, &mut rng));
            assert!(!wl_distinguish(&g, &h, WlTest::Wl1).unwrap());
            assert!(!wl_distinguish(&g, &h, WlTest::Fwl2).unwrap());
            if n <= 8 {
                assert!(!wl_distinguish(&g, &h, WlTest::Fwl3).unwrap());
            }
        }
    }

    #[test]
    fn initial_length_checked() {
        assert_eq!(
            wl1_refine(&path(3), Some(&[0, 1])),
            Err(WlError::InitialLength {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn edge_labels_flag() {
        let a = path(3)
            .with_edge_labels([((0, 1), 1), ((1, 2), 2)])
            .unwrap();
        let plain = wl1_refine_jointly(&[&a], None, Wl1Options::default()).unwrap();
        let labelled = wl1_refine_jointly(&[&a], None, Wl1Options { edge_labels: true }).unwrap();
        assert_eq!(plain[0].num_colors(), 2);
        assert_eq!(labelled[0].num_colors(), 3);
    }
}
