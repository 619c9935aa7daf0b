//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero when a gating criterion fails.
//!
//! Optional inputs (environment):
//! - `GSN_ZINC_JSON`: JSON graph dataset for the disambiguation-score check.
//! - `GSN_ACCEPT_FULL=1`: include SR families above 29 vertices.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use gsn_core::bench::{loglog_slope, run_bench, BenchOptions};
use gsn_core::catalog::{family_collection, graphs_of_size, Collection, CountingMode, Family};
use gsn_core::encoder::{compare_with_seeds, EncoderConfig, Variant};
use gsn_core::features::{disambiguation_score, structural_features};
use gsn_core::generators::{bicyclopentyl, decalin, erdos_renyi, random_sparse};
use gsn_core::io::read_graphs;
use gsn_core::rng::seeded;
use gsn_core::sr::{
    desk_subset, load_sr_dir, run_sr, total_pairs, SrConfig, SrFamily, SrTest, DESK_MAX_N,
};
use gsn_core::verify;
use gsn_core::wl::{wl_distinguish, WlTest};
use gsn_core::{count_distinct_subgraphs, enumerate_matches, Graph, MatchOptions};
use rand::Rng;

const SEEDS: [u64; 3] = [0, 1, 2];
const DESK_PAIRS: usize = 977;

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;

struct Harness {
    gating_failures: usize,
}

impl Harness {
    fn run(&mut self, id: &str, name: &str, gating: bool, f: impl FnOnce() -> Outcome) {
        let t = Instant::now();
        let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        let status = if ok { "PASS" } else { "FAIL" };
        let tag = if gating { "" } else { " (non-gating)" };
        println!(
            "{status} [{id}] {name}{tag}: {detail} ({:.1}s)",
            t.elapsed().as_secs_f64()
        );
        if gating && !ok {
            self.gating_failures += 1;
        }
    }

    fn skip(&self, id: &str, name: &str, why: &str) {
        println!("SKIP [{id}] {name}: {why}");
    }
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sr")
}

fn sr16() -> Result<Vec<Graph>, Box<dyn std::error::Error>> {
    Ok(read_graphs(&data_dir().join("sr16622.g6"))?)
}

fn gsn_pair(
    a: &Graph,
    b: &Graph,
    c: &Collection,
    variant: Variant,
) -> Result<(bool, Vec<f64>), Box<dyn std::error::Error>> {
    let (fa, fb) = (structural_features(a, c)?, structural_features(b, c)?);
    let cfg = EncoderConfig {
        variant,
        ..Default::default()
    };
    let mut all = true;
    let mut ds = Vec::new();
    for s in SEEDS {
        let o = compare_with_seeds(a, b, Some(&fa), Some(&fb), &cfg, &[s])?;
        all &= o.distinguished;
        ds.extend(o.distances);
    }
    Ok((all, ds))
}

fn sr16_pair() -> Outcome {
    let g = sr16()?;
    let (a, b) = (&g[0], &g[1]);
    let wl1 = wl_distinguish(a, b, WlTest::Wl1)?;
    let fwl2 = wl_distinguish(a, b, WlTest::Fwl2)?;
    let k4 = Collection::custom(&[gsn_core::generators::complete(4)], CountingMode::Graphlet)?;
    let (gsn, ds) = gsn_pair(a, b, &k4, Variant::GsnE)?;
    Ok((
        !wl1 && !fwl2 && gsn,
        format!(
            "1-WL {wl1}, 2-FWL {fwl2}, K4 identifiers {gsn} for seeds 0..2 (distances {ds:.3?})"
        ),
    ))
}

fn decalin_pair() -> Outcome {
    let (a, b) = (decalin(), bicyclopentyl());
    let wl1 = wl_distinguish(&a, &b, WlTest::Wl1)?;
    let c = family_collection(Family::Cycle, 6, CountingMode::Graphlet)?;
    let (gsn, _) = gsn_pair(&a, &b, &c, Variant::GsnE)?;
    Ok((!wl1 && gsn, format!("1-WL {wl1}, cycles<=6 {gsn}")))
}

struct SrRun {
    pairs: usize,
    lines: Vec<String>,
    ok: bool,
}

fn sr_benchmark(families: &[SrFamily]) -> Result<SrRun, Box<dyn std::error::Error>> {
    let cfg = |test| SrConfig {
        test,
        seeds: SEEDS.to_vec(),
        epsilon: gsn_core::encoder::DEFAULT_EPSILON,
    };
    let mut ok = true;
    let mut lines = Vec::new();
    for test in [SrTest::Wl1, SrTest::Fwl2] {
        let o = run_sr(families, &cfg(test), None)?;
        ok &= o.failures == o.pairs;
        lines.push(format!("{} {}/{}", o.label, o.failures, o.pairs));
    }
    let mut gap = (0.0f64, f64::INFINITY);
    for family in [Family::Cycle, Family::Path] {
        let mut prev = usize::MAX;
        let mut fails = Vec::new();
        for k in 3..=6 {
            let test = SrTest::Gsn {
                family,
                k,
                mode: CountingMode::Graphlet,
                variant: Variant::GsnE,
            };
            let o = run_sr(families, &cfg(test), None)?;
            ok &= o.failures <= prev;
            prev = o.failures;
            fails.push(o.failures);
            if let Some(d) = o.max_failed_distance {
                gap.0 = gap.0.max(d);
            }
            if let Some(d) = o.min_separated_distance {
                gap.1 = gap.1.min(d);
            }
        }
        ok &= prev == 0;
        lines.push(format!("{family} k=3..6 failures {fails:?}"));
    }
    lines.push(format!(
        "distance gap: failed <= {:.1e}, separated >= {:.3e}",
        gap.0, gap.1
    ));
    Ok(SrRun {
        pairs: total_pairs(families),
        lines,
        ok,
    })
}

fn oracle_equivalence() -> Outcome {
    let patterns: Vec<Graph> = (1..=5)
        .flat_map(graphs_of_size)
        .filter(Graph::is_connected)
        .collect();
    let mut rng = seeded(6);
    let mut checked = 0;
    let mut mismatches = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.9);
        let g = erdos_renyi(n, p, &mut rng);
        for h in &patterns {
            let aut = common::automorphism_count(h);
            for induced in [true, false] {
                let opts = MatchOptions {
                    induced,
                    allow_disconnected: false,
                };
                let want = common::injective_maps(h, &g, induced);
                let got = enumerate_matches(h, &g, opts)?.count();
                let distinct = count_distinct_subgraphs(h, &g, opts)?;
                checked += 1;
                if got != want || distinct * aut != want {
                    mismatches += 1;
                }
            }
        }
    }
    Ok((
        mismatches == 0,
        format!(
            "{} patterns, {checked} comparisons, {mismatches} mismatches",
            patterns.len()
        ),
    ))
}

fn bench_slope() -> Outcome {
    let mut c = family_collection(Family::Cycle, 6, CountingMode::Graphlet)?;
    c.patterns.retain(|p| p.size == 6);
    let mut rng = seeded(10);
    let graphs: Vec<Graph> = [50usize, 100, 200, 400, 800]
        .iter()
        .map(|&n| random_sparse(n, n * 3 / 2, &mut rng))
        .collect();
    let opts = BenchOptions {
        reps: 3,
        timeout: Duration::from_secs(60),
    };
    let recs = run_bench(&graphs, &c, &opts)?;
    let pts: Vec<(usize, f64)> = recs
        .iter()
        .filter(|r| !r.timed_out)
        .map(|r| (r.n, r.seconds))
        .collect();
    let slope = loglog_slope(&pts).ok_or("fewer than two timed points")?;
    Ok((
        pts.len() == recs.len() && slope < 6.0,
        format!(
            "log-log slope {slope:.2} over n = 50..800 (counts {:?})",
            recs.iter().map(|r| r.count).collect::<Vec<_>>()
        ),
    ))
}

fn zinc_delta(path: &str) -> Outcome {
    let graphs = read_graphs(std::path::Path::new(path))?;
    let expect = [
        (None, 0.196),
        (Some(Family::Cycle), 0.327),
        (Some(Family::Path), 0.895),
        (Some(Family::Tree), 0.897),
    ];
    let mut ok = true;
    let mut got = Vec::new();
    for (family, want) in expect {
        let c = match family {
            None => Collection::empty(CountingMode::Graphlet),
            Some(f) => family_collection(f, 6, CountingMode::Graphlet)?,
        };
        let d = disambiguation_score(&graphs, &c)?;
        ok &= (d - want).abs() <= 0.001;
        got.push(format!(
            "{}={d:.3}",
            family.map_or("none".into(), |f| f.to_string())
        ));
    }
    Ok((ok, got.join(", ")))
}

fn main() {
    let mut h = Harness { gating_failures: 0 };
    h.run("1", "16-vertex strongly regular pair", true, sr16_pair);
    h.run("2", "decalin vs bicyclopentyl", true, decalin_pair);

    let full = std::env::var("GSN_ACCEPT_FULL").is_ok_and(|v| v == "1");
    match load_sr_dir(&data_dir()) {
        Ok(all) => {
            let families = if full {
                all
            } else {
                desk_subset(all, DESK_MAX_N)
            };
            let mut pairs = 0;
            h.run(
                "3",
                "strongly regular benchmark failure fractions",
                true,
                || {
                    let r = sr_benchmark(&families)?;
                    pairs = r.pairs;
                    Ok((r.ok, format!("{} pairs; {}", r.pairs, r.lines.join("; "))))
                },
            );
            if !full {
                h.run("3", "strongly regular benchmark pair count", false, || {
                    let sizes: Vec<String> = families
                        .iter()
                        .map(|f| format!("{}:{}", f.name, f.graphs.len()))
                        .collect();
                    Ok((
                        pairs == DESK_PAIRS,
                        format!(
                            "{pairs} of {DESK_PAIRS} same-size pairs bundled ({})",
                            sizes.join(" ")
                        ),
                    ))
                });
            }
        }
        Err(e) => h.run("3", "strongly regular benchmark", true, || Err(e.into())),
    }

    h.run("4", "edge-to-vertex reconstruction", true, || {
        let r = verify::verify_reconstruction(100, 15, 4)?;
        Ok((
            r.passed() && r.cases == 300,
            format!("{} cases, {} mismatches", r.cases, r.failures),
        ))
    });
    h.run("5", "deck identity", true, || {
        let r = verify::verify_deck(&[4, 5, 6], 7, 50, 5)?;
        Ok((
            r.passed() && r.cases == 11 + 34 + 156 + 50,
            format!("{} graphs, {} violations", r.cases, r.failures),
        ))
    });
    h.run(
        "6",
        "matcher vs brute-force injective maps",
        true,
        oracle_equivalence,
    );
    h.run(
        "7",
        "2-FWL closed form on strongly regular graphs",
        true,
        || {
            let graphs: Vec<Graph> = load_sr_dir(&data_dir())?
                .into_iter()
                .flat_map(|f| f.graphs)
                .collect();
            let r = verify::verify_fwl2_sr(&graphs)?;
            Ok((
                r.passed(),
                format!(
                    "{} graphs, {} cases, {} failures",
                    graphs.len(),
                    r.cases,
                    r.failures
                ),
            ))
        },
    );
    h.run("8", "permutation invariance of encoders", true, || {
        let r = verify::verify_equivariance(100, 8)?;
        Ok((
            r.passed() && r.cases == 100,
            format!("{} trials x 3 variants, {} violations", r.cases, r.failures),
        ))
    });
    match std::env::var("GSN_ZINC_JSON") {
        Ok(p) => h.run("9", "disambiguation scores", false, || zinc_delta(&p)),
        Err(_) => h.skip(
            "9",
            "disambiguation scores",
            "set GSN_ZINC_JSON to a JSON graph dataset",
        ),
    }
    h.run("10", "counting time below worst case", true, bench_slope);

    if h.gating_failures > 0 {
        println!("{} gating criteria failed", h.gating_failures);
        std::process::exit(1);
    }
}
