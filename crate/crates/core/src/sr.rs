//! Pairwise isomorphism experiment on families of strongly regular graphs.

use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{family_collection, Collection, CountingMode, Family};
use crate::encoder::{Encoder, EncoderConfig, InputVocab, Variant};
use crate::error::ExperimentError;
use crate::features::{feature_multiset, structural_features, StructuralFeatures};
use crate::graph::{check_strongly_regular, Graph, SrParameters};
use crate::io::read_graphs;
use crate::wl::{kfwl_refine_jointly, wl1_refine_jointly, Wl1Options};

/// Vertex count of the largest families in the default (desk-scale) run.
pub const DESK_MAX_N: usize = 29;

#[derive(Clone, Debug)]
pub struct SrFamily {
    pub name: String,
    pub params: Option<SrParameters>,
    pub graphs: Vec<Graph>,
}

impl SrFamily {
    pub fn n(&self) -> usize {
        self.graphs.first().map_or(0, Graph::n)
    }

    /// Index pairs of graphs with equal vertex count.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let g = &self.graphs;
        (0..g.len())
            .flat_map(|i| (i + 1..g.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| g[i].n() == g[j].n())
            .collect()
    }
}

/// Reads every `*.g6` file of `dir` (sorted by file name) as one family.
pub fn load_sr_dir(dir: &Path) -> Result<Vec<SrFamily>, ExperimentError> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| ExperimentError::Parse(e.into()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "g6"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(ExperimentError::NoData(dir.display().to_string()));
    }
    files
        .iter()
        .map(|p| {
            let graphs = read_graphs(p)?;
            let params = graphs.first().and_then(check_strongly_regular);
            Ok(SrFamily {
                name: p
                    .file_stem()
                    .map_or_else(String::new, |s| s.to_string_lossy().into_owned()),
                params,
                graphs,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "test", rename_all = "snake_case")]
pub enum SrTest {
    Wl1,
    Fwl2,
    Gsn {
        family: Family,
        k: usize,
        mode: CountingMode,
        variant: Variant,
    },
}

impl fmt::Display for SrTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SrTest::Wl1 => f.write_str("wl1"),
            SrTest::Fwl2 => f.write_str("fwl2"),
            SrTest::Gsn {
                family,
                k,
                mode,
                variant,
            } => write!(f, "{variant}:{family}<={k}:{mode}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SrConfig {
    pub test: SrTest,
    pub seeds: Vec<u64>,
    pub epsilon: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SrOutcome {
    pub label: String,
    pub pairs: usize,
    /// Pairs deemed isomorphic (all pairs are non-isomorphic).
    pub failures: usize,
    pub failure_fraction: f64,
    /// Pairs whose identifier multisets coincide (GSN tests only).
    pub precheck_failures: Option<usize>,
    /// Largest scaled distance among failed pairs and smallest among
    /// separated pairs, maximised over seeds (GSN tests only).
    pub max_failed_distance: Option<f64>,
    pub min_separated_distance: Option<f64>,
    pub per_family: Vec<(String, usize, usize)>,
}

/// Restricts each family to a random subset of its pairs.
pub fn sample_pairs(families: &[SrFamily], total: usize, seed: u64) -> Vec<Vec<(usize, usize)>> {
    let mut all: Vec<(usize, (usize, usize))> = families
        .iter()
        .enumerate()
        .flat_map(|(f, fam)| fam.pairs().into_iter().map(move |p| (f, p)))
        .collect();
    let mut rng = crate::rng::seeded(seed);
    all.shuffle(&mut rng);
    all.truncate(total);
    let mut out = vec![Vec::new(); families.len()];
    for (f, p) in all {
        out[f].push(p);
    }
    for v in &mut out {
        v.sort_unstable();
    }
    out
}

/// Runs one test over the given pairs (all same-size pairs when `pairs` is
/// `None`).
pub fn run_sr(
    families: &[SrFamily],
    cfg: &SrConfig,
    pairs: Option<&[Vec<(usize, usize)>]>,
) -> Result<SrOutcome, ExperimentError> {
    let mut out = SrOutcome {
        label: cfg.test.to_string(),
        ..Default::default()
    };
    let mut prechecks = 0;
    let mut max_failed: Option<f64> = None;
    let mut min_sep: Option<f64> = None;
    for (fi, fam) in families.iter().enumerate() {
        let fam_pairs = match pairs {
            Some(p) => p[fi].clone(),
            None => fam.pairs(),
        };
        if fam_pairs.is_empty() {
            continue;
        }
        let refs: Vec<&Graph> = fam.graphs.iter().collect();
        let failed: Vec<bool> = match &cfg.test {
            SrTest::Wl1 => {
                let cs = wl1_refine_jointly(&refs, None, Wl1Options::default())?;
                fam_pairs
                    .iter()
                    .map(|&(i, j)| cs[i].histogram == cs[j].histogram)
                    .collect()
            }
            SrTest::Fwl2 => {
                let cs = kfwl_refine_jointly(&refs, 2)?;
                fam_pairs
                    .iter()
                    .map(|&(i, j)| cs[i].histogram == cs[j].histogram)
                    .collect()
            }
            SrTest::Gsn {
                family,
                k,
                mode,
                variant,
            } => {
                let coll = family_collection(*family, *k, *mode)?;
                let (failed, pre, distances) = gsn_pairs(fam, &coll, *variant, cfg, &fam_pairs)?;
                prechecks += pre;
                for (&f, &d) in failed.iter().zip(&distances) {
                    if f {
                        max_failed = Some(max_failed.map_or(d, |m: f64| m.max(d)));
                    } else {
                        min_sep = Some(min_sep.map_or(d, |m: f64| m.min(d)));
                    }
                }
                failed
            }
        };
        let fails = failed.iter().filter(|&&f| f).count();
        out.pairs += fam_pairs.len();
        out.failures += fails;
        out.per_family
            .push((fam.name.clone(), fam_pairs.len(), fails));
    }
    out.failure_fraction = if out.pairs == 0 {
        0.0
    } else {
        out.failures as f64 / out.pairs as f64
    };
    if matches!(cfg.test, SrTest::Gsn { .. }) {
        out.precheck_failures = Some(prechecks);
        out.max_failed_distance = max_failed;
        out.min_separated_distance = min_sep;
    }
    Ok(out)
}

type GsnPairs = (Vec<bool>, usize, Vec<f64>);

/// Encodes a family once per seed with a vocabulary frozen over the family.
fn gsn_pairs(
    fam: &SrFamily,
    coll: &Collection,
    variant: Variant,
    cfg: &SrConfig,
    pairs: &[(usize, usize)],
) -> Result<GsnPairs, ExperimentError> {
    let feats: Vec<StructuralFeatures> = fam
        .graphs
        .par_iter()
        .map(|g| structural_features(g, coll))
        .collect::<Result<_, _>>()?;
    let frefs: Vec<&StructuralFeatures> = feats.iter().collect();
    let grefs: Vec<&Graph> = fam.graphs.iter().collect();
    let multisets: Vec<_> = fam
        .graphs
        .iter()
        .zip(&feats)
        .map(|(g, f)| {
            let (v, e) = feature_multiset(g, f);
            if variant == Variant::GsnE {
                (Vec::new(), e)
            } else {
                (v, Vec::new())
            }
        })
        .collect();
    let pre = pairs
        .iter()
        .filter(|&&(i, j)| multisets[i] == multisets[j])
        .count();
    let vocab = InputVocab::build(&grefs, Some(&frefs))?;
    let mut best = vec![0.0f64; pairs.len()];
    for &seed in &cfg.seeds {
        let enc = Encoder::new(
            EncoderConfig {
                variant,
                seed,
                epsilon: cfg.epsilon,
                ..Default::default()
            },
            vocab.clone(),
        )?;
        let reps: Vec<_> = fam
            .graphs
            .par_iter()
            .zip(&feats)
            .map(|(g, f)| enc.encode(g, Some(f)))
            .collect::<Result<_, _>>()?;
        for (b, &(i, j)) in best.iter_mut().zip(pairs) {
            *b = b.max(reps[i].scaled_distance(&reps[j]));
        }
    }
    let failed = best.iter().map(|&d| d <= cfg.epsilon).collect();
    Ok((failed, pre, best))
}

/// Number of same-size pairs across all families.
pub fn total_pairs(families: &[SrFamily]) -> usize {
    families.iter().map(|f| f.pairs().len()).sum()
}

/// Families with at most `max_n` vertices.
pub fn desk_subset(families: Vec<SrFamily>, max_n: usize) -> Vec<SrFamily> {
    families.into_iter().filter(|f| f.n() <= max_n).collect()
}
