//! Fixtures shared by the criterion benches and the runtime-study tests.

use gsn_core::bench::{loglog_slope, run_bench, BenchOptions, BenchRecord};
use gsn_core::catalog::{family_collection, CountingMode, Family};
use gsn_core::error::ExperimentError;
use gsn_core::generators::random_sparse;
use gsn_core::rng::seeded;
use gsn_core::Graph;

/// Vertex counts of the sparse runtime study.
pub const SPARSE_SIZES: [usize; 5] = [50, 100, 200, 400, 800];

/// Random graphs with `round(n * avg_degree / 2)` edges for each `n`.
pub fn sparse_graphs(sizes: &[usize], avg_degree: f64, seed: u64) -> Vec<Graph> {
    let mut rng = seeded(seed);
    sizes
        .iter()
        .map(|&n| {
            let m = (n as f64 * avg_degree / 2.0).round() as usize;
            random_sparse(n, m, &mut rng).with_name(format!("sparse{n}"))
        })
        .collect()
}

/// Times the single `family` pattern of size `k` on each graph.
pub fn time_pattern(
    graphs: &[Graph],
    family: Family,
    k: usize,
    opts: &BenchOptions,
) -> Result<Vec<BenchRecord>, ExperimentError> {
    let mut c = family_collection(family, k, CountingMode::Graphlet)?;
    c.patterns.retain(|p| p.size == k);
    Ok(run_bench(graphs, &c, opts)?)
}

/// Log-log slope of median time against `n`, ignoring timed-out records.
pub fn time_slope(records: &[BenchRecord]) -> Option<f64> {
    let pts: Vec<(usize, f64)> = records
        .iter()
        .filter(|r| !r.timed_out)
        .map(|r| (r.n, r.seconds))
        .collect();
    loglog_slope(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_fixture_has_requested_density() {
        let gs = sparse_graphs(&[100, 200], 3.0, 7);
        assert_eq!(gs[0].edge_count(), 150);
        assert_eq!(gs[1].edge_count(), 300);
        assert_eq!(sparse_graphs(&[100], 3.0, 7)[0], gs[0]);
    }
}
