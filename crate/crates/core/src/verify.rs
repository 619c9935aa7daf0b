//! Executable checks of the structural results: equivariance, edge-to-vertex
//! reconstruction, the deck identity, 2-FWL on strongly regular graphs and
//! the refinement order between 1-WL, orbits and identifiers.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{
    all_graphs_of_size, family_collection, graphs_of_size, Collection, CountingMode, Family,
};
use crate::encoder::{Encoder, EncoderConfig, InputVocab, Variant};
use crate::error::ExperimentError;
use crate::features::{
    deck_check_with, reconstruct_vertex_from_edge, structural_features, StructuralFeatures,
};
use crate::generators::{erdos_renyi, random_permutation};
use crate::graph::{check_strongly_regular, Graph};
use crate::iso::compute_orbits_with_cap;
use crate::rng::seeded;
use crate::wl::{kfwl_refine, kfwl_refine_jointly, refines, wl1_refine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Equivariance,
    Reconstruction,
    Deck,
    Fwl2Sr,
    WlRefinement,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::Equivariance,
        Theorem::Reconstruction,
        Theorem::Deck,
        Theorem::Fwl2Sr,
        Theorem::WlRefinement,
    ];
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Equivariance => "equivariance",
            Theorem::Reconstruction => "reconstruction",
            Theorem::Deck => "deck",
            Theorem::Fwl2Sr => "fwl2_sr",
            Theorem::WlRefinement => "wl_refinement",
        })
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.to_string() == s.replace('-', "_"))
            .ok_or_else(|| format!("unknown check '{s}'"))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Descriptions of the first few failing cases.
    pub details: Vec<String>,
}

impl CheckReport {
    fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.details.len() < 10 {
                self.details.push(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

fn random_graph(rng: &mut crate::rng::Rng, min_n: usize, max_n: usize) -> Graph {
    let n = rng.gen_range(min_n..=max_n);
    let p = rng.gen_range(0.15..0.6);
    erdos_renyi(n, p, rng)
}

/// Permuting a graph permutes its identifiers and leaves every encoder
/// output bit-identical.
pub fn verify_equivariance(trials: usize, seed: u64) -> Result<CheckReport, ExperimentError> {
    let mut rep = CheckReport::new("equivariance");
    let coll = family_collection(Family::Cycle, 5, CountingMode::Graphlet)?
        .union(&family_collection(Family::Path, 4, CountingMode::Graphlet)?);
    let mut rng = seeded(seed);
    for t in 0..trials {
        let g = random_graph(&mut rng, 5, 14);
        let perm = random_permutation(g.n(), &mut rng);
        let h = g.permuted(&perm);
        let (fg, fh) = (
            structural_features(&g, &coll)?,
            structural_features(&h, &coll)?,
        );
        let rows_ok = (0..g.n()).all(|v| fg.vertex_counts[v] == fh.vertex_counts[perm[v]]);
        let arcs_ok = fg
            .arcs()
            .all(|((u, v), x)| fh.edge(perm[u], perm[v]) == Some(x));
        let mut enc_ok = true;
        let vocab = InputVocab::build(&[&g, &h], Some(&[&fg, &fh]))?;
        for variant in [Variant::Mpnn, Variant::GsnV, Variant::GsnE] {
            let cfg = EncoderConfig {
                variant,
                seed: t as u64,
                ..Default::default()
            };
            let enc = Encoder::new(cfg, vocab.clone())?;
            enc_ok &= enc.encode(&g, Some(&fg))?.vector == enc.encode(&h, Some(&fh))?.vector;
        }
        rep.record(rows_ok && arcs_ok && enc_ok, || {
            format!("trial {t}: rows {rows_ok} arcs {arcs_ok} encoder {enc_ok}")
        });
    }
    Ok(rep)
}

/// Collections used by the reconstruction check.
pub fn reconstruction_collections() -> Result<Vec<Collection>, ExperimentError> {
    Ok(vec![
        family_collection(Family::Cycle, 6, CountingMode::Graphlet)?,
        family_collection(Family::Clique, 5, CountingMode::Graphlet)?,
        family_collection(Family::Path, 5, CountingMode::Graphlet)?,
    ])
}

/// Vertex identifiers rebuilt from edge identifiers equal the direct ones.
pub fn verify_reconstruction(
    graphs: usize,
    max_n: usize,
    seed: u64,
) -> Result<CheckReport, ExperimentError> {
    let mut rep = CheckReport::new("reconstruction");
    let colls = reconstruction_collections()?;
    let mut rng = seeded(seed);
    let gs: Vec<Graph> = (0..graphs)
        .map(|_| random_graph(&mut rng, 4, max_n))
        .collect();
    let results: Vec<Vec<bool>> = gs
        .par_iter()
        .map(|g| {
            colls
                .iter()
                .map(|c| {
                    let f = structural_features(g, c)?;
                    Ok(reconstruct_vertex_from_edge(g, c, &f)? == f.vertex_counts)
                })
                .collect::<Result<Vec<bool>, ExperimentError>>()
        })
        .collect::<Result<_, _>>()?;
    for (gi, row) in results.iter().enumerate() {
        for (ci, &ok) in row.iter().enumerate() {
            rep.record(ok, || format!("graph {gi} collection {}", colls[ci].label));
        }
    }
    Ok(rep)
}

/// Deck identity on every graph with `exhaustive` vertex counts and on
/// `random` sampled graphs with `random_n` vertices.
pub fn verify_deck(
    exhaustive: &[usize],
    random_n: usize,
    random: usize,
    seed: u64,
) -> Result<CheckReport, ExperimentError> {
    let mut rep = CheckReport::new("deck");
    let mut jobs: Vec<Graph> = exhaustive.iter().flat_map(|&n| graphs_of_size(n)).collect();
    let mut rng = seeded(seed);
    jobs.extend((0..random).map(|_| erdos_renyi(random_n, rng.gen_range(0.2..0.8), &mut rng)));
    let mut sizes: Vec<usize> = jobs.iter().map(Graph::n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let colls: Vec<(usize, Collection)> = sizes
        .iter()
        .map(|&n| Ok((n, all_graphs_of_size(n - 1)?)))
        .collect::<Result<_, ExperimentError>>()?;
    let results: Vec<bool> = jobs
        .par_iter()
        .map(|g| {
            let c = &colls
                .iter()
                .find(|(n, _)| *n == g.n())
                .expect("collection per size")
                .1;
            Ok(deck_check_with(g, c)?.holds)
        })
        .collect::<Result<_, ExperimentError>>()?;
    for (g, ok) in jobs.iter().zip(results) {
        rep.record(ok, || format!("{:?}", g));
    }
    Ok(rep)
}

/// Stable 2-FWL colouring of each strongly regular graph has three colours
/// with multiplicities `n`, `nd`, `n(n-1) - nd`, and graphs with equal
/// parameters get equal histograms.
pub fn verify_fwl2_sr(graphs: &[Graph]) -> Result<CheckReport, ExperimentError> {
    let mut rep = CheckReport::new("fwl2_sr");
    let results: Vec<(Option<_>, Vec<usize>)> = graphs
        .par_iter()
        .map(|g| {
            let c = kfwl_refine(g, 2)?;
            let mut mult: Vec<usize> = c.histogram.iter().map(|x| x.1).collect();
            mult.sort_unstable();
            Ok((check_strongly_regular(g), mult))
        })
        .collect::<Result<_, ExperimentError>>()?;
    for (i, (params, mult)) in results.iter().enumerate() {
        let ok = params.is_some_and(|p| {
            let mut want = vec![p.n, p.n * p.d, p.n * (p.n - 1) - p.n * p.d];
            want.sort_unstable();
            *mult == want
        });
        rep.record(ok, || {
            format!("graph {i}: params {params:?} multiplicities {mult:?}")
        });
    }
    let mut groups: Vec<(crate::graph::SrParameters, Vec<&Graph>)> = Vec::new();
    for (g, (p, _)) in graphs.iter().zip(&results) {
        if let Some(p) = p {
            match groups.iter_mut().find(|(q, _)| q == p) {
                Some((_, v)) => v.push(g),
                None => groups.push((*p, vec![g])),
            }
        }
    }
    for (p, gs) in groups.iter().filter(|(_, gs)| gs.len() > 1) {
        let cs = kfwl_refine_jointly(gs, 2)?;
        let ok = cs.iter().all(|c| c.histogram == cs[0].histogram);
        rep.record(ok, || format!("{p}: histograms differ"));
    }
    Ok(rep)
}

/// 1-WL is never finer than the automorphism orbits, and appending
/// structural identifiers to the initial colours never coarsens 1-WL.
pub fn verify_wl_refinement(trials: usize, seed: u64) -> Result<CheckReport, ExperimentError> {
    let mut rep = CheckReport::new("wl_refinement");
    let coll = family_collection(Family::Cycle, 5, CountingMode::Graphlet)?
        .union(&family_collection(Family::Path, 4, CountingMode::Motif)?);
    let mut rng = seeded(seed);
    for t in 0..trials {
        let g = random_graph(&mut rng, 3, 8);
        let wl = wl1_refine(&g, None)?;
        let orbits = compute_orbits_with_cap(&g, 8).map_err(crate::error::FeatureError::from)?;
        let orbit_colors: Vec<u32> = (0..g.n())
            .map(|v| orbits.vertex_orbit_of(v) as u32)
            .collect();
        let ok_orbits = refines(&orbit_colors, &wl.colors);

        let f: StructuralFeatures = structural_features(&g, &coll)?;
        let mut keys: Vec<&Vec<u64>> = f.vertex_counts.iter().collect();
        keys.sort();
        keys.dedup();
        let init: Vec<u32> = f
            .vertex_counts
            .iter()
            .map(|r| keys.binary_search(&r).expect("row present") as u32)
            .collect();
        let with_ids = wl1_refine(&g, Some(&init))?;
        let ok_ids = refines(&with_ids.colors, &wl.colors);
        rep.record(ok_orbits && ok_ids, || {
            format!("trial {t}: orbits {ok_orbits} identifiers {ok_ids}")
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn quick_runs_pass() {
        assert!(verify_equivariance(5, 1).unwrap().passed());
        assert!(verify_reconstruction(5, 10, 1).unwrap().passed());
        assert!(verify_deck(&[4], 6, 3, 1).unwrap().passed());
        assert!(verify_fwl2_sr(&[rook_4x4(), shrikhande()])
            .unwrap()
            .passed());
        assert!(verify_wl_refinement(20, 1).unwrap().passed());
        assert_eq!("fwl2-sr".parse::<Theorem>(), Ok(Theorem::Fwl2Sr));
    }

    #[test]
    fn non_sr_graph_fails_closed_form() {
        let r = verify_fwl2_sr(&[path(4)]).unwrap();
        assert_eq!(r.failures, 1);
    }
}
