//! Timing of exact subgraph counting against the `n^k` worst case.

use std::io::Write;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::catalog::Collection;
use crate::error::BenchError;
use crate::graph::Graph;
use crate::iso::count_distinct_until;

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub family: String,
    pub k: usize,
    /// Median wall time over the repetitions.
    pub seconds: f64,
    pub count: usize,
    pub reps: usize,
    pub timed_out: bool,
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub reps: usize,
    pub timeout: Duration,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            reps: 3,
            timeout: DEFAULT_TIMEOUT,
        }
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Benchmarks every (graph, pattern) pair sequentially.
pub fn run_bench(
    dataset: &[Graph],
    c: &Collection,
    opts: &BenchOptions,
) -> Result<Vec<BenchRecord>, BenchError> {
    run_bench_with_hook(dataset, c, opts, |_, _| {})
}

/// Like [`run_bench`], calling `hook(record_index, rep)` inside each timed
/// repetition (used to inject delays in tests).
pub fn run_bench_with_hook(
    dataset: &[Graph],
    c: &Collection,
    opts: &BenchOptions,
    mut hook: impl FnMut(usize, usize),
) -> Result<Vec<BenchRecord>, BenchError> {
    if opts.reps < 3 {
        return Err(BenchError::TooFewReps(opts.reps));
    }
    let mode = c.match_options();
    let mut records = Vec::new();
    for (gi, g) in dataset.iter().enumerate() {
        for p in &c.patterns {
            let idx = records.len();
            // warm-up run, not timed
            let start = Instant::now();
            let mut count = count_distinct_until(&p.graph, g, mode, start + opts.timeout)?;
            let mut times = Vec::with_capacity(opts.reps);
            if count.is_some() {
                for rep in 0..opts.reps {
                    let t = Instant::now();
                    let r = count_distinct_until(&p.graph, g, mode, t + opts.timeout)?;
                    hook(idx, rep);
                    times.push(t.elapsed().as_secs_f64());
                    if r.is_none() {
                        count = None;
                        break;
                    }
                }
            }
            let timed_out = count.is_none();
            records.push(BenchRecord {
                graph_id: g.name().map_or_else(|| format!("g{gi}"), str::to_string),
                n: g.n(),
                m: g.edge_count(),
                family: p.family.to_string(),
                k: p.size,
                seconds: if timed_out {
                    opts.timeout.as_secs_f64()
                } else {
                    median(&mut times)
                },
                count: count.unwrap_or(0),
                reps: opts.reps,
                timed_out,
            });
        }
    }
    Ok(records)
}

pub const CSV_HEADER: &str = "graph_id,n,m,family,k,seconds,count,reps,timed_out";

pub fn write_csv<W: Write + ?Sized>(out: &mut W, records: &[BenchRecord]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{:.9},{},{},{}",
            r.graph_id, r.n, r.m, r.family, r.k, r.seconds, r.count, r.reps, r.timed_out
        )?;
    }
    Ok(())
}

/// Worst-case curve `n^k` scaled to pass through the first point.
/// Returns `(n, seconds)` for every input point.
pub fn reference_curve(points: &[(usize, f64)], k: usize) -> Vec<(usize, f64)> {
    let Some(&(n0, t0)) = points.first() else {
        return Vec::new();
    };
    points
        .iter()
        .map(|&(n, _)| (n, t0 * (n as f64 / n0 as f64).powi(k as i32)))
        .collect()
}

/// Least-squares slope of `log t` against `log n`.
pub fn loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(n, t)| *n > 0 && *t > 0.0)
        .map(|&(n, t)| ((n as f64).ln(), t.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CountingMode;
    use crate::generators::*;
    use crate::iso::count_distinct_subgraphs;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn clique_counts_match_closed_form() {
        let c = Collection::custom(&[complete(4)], CountingMode::Graphlet).unwrap();
        let graphs: Vec<Graph> = (5..=9).map(complete).collect();
        let recs = run_bench(&graphs, &c, &BenchOptions::default()).unwrap();
        for (r, n) in recs.iter().zip(5..) {
            assert_eq!(r.count, binom(n, 4));
            assert!(!r.timed_out);
            assert_eq!(
                r.count,
                count_distinct_subgraphs(&c.patterns[0].graph, &complete(n), c.match_options())
                    .unwrap()
            );
        }
        assert!(matches!(
            run_bench(
                &graphs,
                &c,
                &BenchOptions {
                    reps: 2,
                    ..Default::default()
                }
            ),
            Err(BenchError::TooFewReps(2))
        ));
    }

    #[test]
    fn empty_graph_and_timeout() {
        let c = Collection::custom(&[cycle(3)], CountingMode::Graphlet).unwrap();
        let recs = run_bench(&[Graph::empty(50)], &c, &BenchOptions::default()).unwrap();
        assert_eq!(recs[0].count, 0);
        let c6 = Collection::custom(&[cycle(6)], CountingMode::Motif).unwrap();
        let opts = BenchOptions {
            reps: 3,
            timeout: Duration::from_millis(1),
        };
        let recs = run_bench(&[complete(40)], &c6, &opts).unwrap();
        assert!(recs[0].timed_out);
    }

    #[test]
    fn median_ignores_one_outlier() {
        let c = Collection::custom(&[cycle(3)], CountingMode::Graphlet).unwrap();
        let g = [complete(8)];
        let recs = run_bench_with_hook(
            &g,
            &c,
            &BenchOptions {
                reps: 5,
                ..Default::default()
            },
            |_, rep| {
                if rep == 2 {
                    std::thread::sleep(Duration::from_millis(300));
                }
            },
        )
        .unwrap();
        assert!(recs[0].seconds < 0.3);
        assert_eq!(median(&mut [1.0, 100.0, 2.0]), 2.0);
    }

    #[test]
    fn slope_and_reference() {
        let pts: Vec<(usize, f64)> = [10usize, 20, 40]
            .iter()
            .map(|&n| (n, 1e-6 * (n as f64).powi(2)))
            .collect();
        assert!((loglog_slope(&pts).unwrap() - 2.0).abs() < 1e-9);
        let r = reference_curve(&pts, 3);
        assert!((r[1].1 / r[0].1 - 8.0).abs() < 1e-9);
        let mut buf = Vec::new();
        write_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().trim(), CSV_HEADER);
    }
}
