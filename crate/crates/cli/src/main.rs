mod grid;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use gsn_core::bench::{
    loglog_slope, reference_curve, run_bench, write_csv, BenchOptions, BenchRecord,
};
use gsn_core::catalog::{family_collection, Collection, CountingMode, Family};
use gsn_core::encoder::{compare_with_seeds, EncoderConfig, Variant, DEFAULT_EPSILON};
use gsn_core::features::{
    column_totals, disambiguation_score, feature_multiset, structural_features,
};
use gsn_core::generators::{random_sparse, rook_4x4, shrikhande};
use gsn_core::io::read_graphs;
use gsn_core::sr::{
    desk_subset, load_sr_dir, run_sr, sample_pairs, total_pairs, SrConfig, SrTest, DESK_MAX_N,
};
use gsn_core::verify::{self, CheckReport, Theorem};
use gsn_core::wl::{kfwl_refine_jointly, wl1_refine_jointly, Wl1Options, WlTest};
use gsn_core::Graph;

use grid::{parse_grid, parse_list, GridPoint};
use report::RunReport;

#[derive(Parser, Debug, Serialize)]
#[command(
    name = "gsn",
    version,
    about = "Structural identifiers, WL tests and substructure-network isomorphism tests"
)]
struct Cli {
    /// Base seed for sampling, random graphs and encoder weights.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Distance threshold on representations divided by vertex count.
    #[arg(long, global = true, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Per-(graph, pattern) cap for `bench`.
    #[arg(long, global = true, default_value_t = 60)]
    timeout_secs: u64,
    /// Write results here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Per-vertex (and optionally per-edge) substructure counts.
    Count(CountArgs),
    /// Pairwise test on the strongly regular families.
    SrBench(SrBenchArgs),
    /// Weisfeiler-Leman test on every pair of input graphs.
    Wl(WlArgs),
    /// Random-weight substructure network test on every pair of input graphs.
    GsnTest(GsnTestArgs),
    /// Runs the executable checks; exits with 1 if any case fails.
    Verify(VerifyArgs),
    /// Disambiguation score per (family, k).
    Delta(DeltaArgs),
    /// Counting-time measurements against the n^k worst case.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Serialize)]
struct PatternArgs {
    #[arg(long)]
    family: Option<Family>,
    /// Largest pattern size.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "graphlet")]
    mode: CountingMode,
    /// Match induced subgraphs (same as `--mode graphlet`).
    #[arg(long, conflicts_with = "mode")]
    induced: bool,
    /// Custom pattern file (graph6 or JSON) instead of a family.
    #[arg(long, conflicts_with = "family")]
    patterns: Option<PathBuf>,
}

impl PatternArgs {
    fn mode(&self) -> CountingMode {
        if self.induced {
            CountingMode::Graphlet
        } else {
            self.mode
        }
    }

    fn collection(&self) -> anyhow::Result<Collection> {
        if let Some(p) = &self.patterns {
            let graphs =
                read_graphs(p).with_context(|| format!("reading patterns {}", p.display()))?;
            return Ok(Collection::custom(&graphs, self.mode())?);
        }
        let family = self
            .family
            .context("either --family or --patterns is required")?;
        let k = self.k.context("--k is required with --family")?;
        Ok(family_collection(family, k, self.mode())?)
    }
}

#[derive(Args, Debug, Serialize)]
struct CountArgs {
    input: PathBuf,
    #[command(flatten)]
    patterns: PatternArgs,
    /// Emit arc rows `graph_id,u,v,...` instead of vertex rows.
    #[arg(long)]
    edges: bool,
    /// Emit one row per (graph, pattern) with the number of distinct subgraphs.
    #[arg(long, conflicts_with = "edges")]
    summary: bool,
}

#[derive(Args, Debug, Serialize)]
struct SrBenchArgs {
    /// Directory of graph6 files, one family per file.
    #[arg(long, default_value = "data/sr")]
    dir: PathBuf,
    /// Comma-separated `family:k` or `family:kmin-kmax` entries.
    #[arg(long, default_value = "cycle:3-6,path:3-6,clique:3-5")]
    grid: String,
    #[arg(long, default_value = "graphlet")]
    mode: CountingMode,
    #[arg(long, default_value = "gsn_e")]
    variants: String,
    /// Weight seeds; defaults to the base seed and the next two.
    #[arg(long)]
    seeds: Option<String>,
    /// Skip the 1-WL and 2-FWL baselines.
    #[arg(long)]
    no_baselines: bool,
    /// Include families above the desk-scale vertex count.
    #[arg(long)]
    full: bool,
    /// Restrict to a seeded random sample of this many pairs.
    #[arg(long)]
    sample_pairs: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct WlArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, default_value = "wl1")]
    test: WlTest,
}

#[derive(Args, Debug, Serialize)]
struct GsnTestArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    patterns: PatternArgs,
    /// Overrides the variant of `--config`.
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(long)]
    seeds: Option<String>,
    /// Encoder configuration as JSON.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// Checks to run (all when omitted).
    checks: Vec<Theorem>,
    /// Trials for the randomised checks.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Strongly regular graphs for `fwl2_sr` (built-in 16-vertex pair when absent).
    #[arg(long)]
    sr_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct DeltaArgs {
    input: PathBuf,
    /// `none` stands for vertex labels only.
    #[arg(long, default_value = "none,cycle:6,path:6,tree:6")]
    grid: String,
    #[arg(long, default_value = "graphlet")]
    mode: CountingMode,
}

#[derive(Args, Debug, Serialize)]
struct BenchArgs {
    /// Graph file; mutually exclusive with `--random-sparse`.
    #[arg(required_unless_present = "random_sparse")]
    input: Option<PathBuf>,
    /// Comma-separated vertex counts of generated sparse random graphs.
    #[arg(long, conflicts_with = "input")]
    random_sparse: Option<String>,
    #[arg(long, default_value_t = 3.0)]
    avg_degree: f64,
    #[arg(long, default_value = "cycle")]
    family: Family,
    #[arg(long, default_value_t = 6)]
    k: usize,
    #[arg(long, default_value = "graphlet")]
    mode: CountingMode,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Measure graphs concurrently; records are then not comparable.
    #[arg(long)]
    parallel: bool,
}

/// Outcome of a command: `Ok(true)` success, `Ok(false)` failed checks.
type CmdResult = anyhow::Result<bool>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let mut out: Box<dyn Write> = match &cli.output {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let ok = match &cli.cmd {
        Command::Count(a) => cmd_count(cli, a, &mut out)?,
        Command::SrBench(a) => cmd_sr_bench(cli, a, &mut out)?,
        Command::Wl(a) => cmd_wl(cli, a, &mut out)?,
        Command::GsnTest(a) => cmd_gsn_test(cli, a, &mut out)?,
        Command::Verify(a) => cmd_verify(cli, a, &mut out)?,
        Command::Delta(a) => cmd_delta(cli, a, &mut out)?,
        Command::Bench(a) => cmd_bench(cli, a, &mut out)?,
    };
    out.flush()?;
    Ok(ok)
}

fn load(path: &Path) -> anyhow::Result<Vec<Graph>> {
    read_graphs(path).with_context(|| format!("reading {}", path.display()))
}

fn load_all(paths: &[PathBuf]) -> anyhow::Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for p in paths {
        graphs.extend(load(p)?);
    }
    Ok(graphs)
}

fn graph_id(g: &Graph, i: usize) -> String {
    g.name().map_or_else(|| format!("g{i}"), str::to_string)
}

fn seeds_or_default(spec: Option<&str>, base: u64) -> anyhow::Result<Vec<u64>> {
    match spec {
        Some(s) => parse_list(s),
        None => Ok(vec![base, base + 1, base + 2]),
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn cmd_count(cli: &Cli, a: &CountArgs, out: &mut dyn Write) -> CmdResult {
    let graphs = load(&a.input)?;
    let coll = a.patterns.collection()?;
    let feats = graphs
        .par_iter()
        .map(|g| structural_features(g, &coll))
        .collect::<Result<Vec<_>, _>>()?;
    let per_pattern = |f: &gsn_core::features::StructuralFeatures| -> Vec<u64> {
        let totals = column_totals(f);
        let offs = coll.vertex_offsets();
        coll.patterns
            .iter()
            .zip(offs)
            .map(|(p, o)| totals[o..o + p.vertex_dims()].iter().sum::<u64>() / p.size as u64)
            .collect()
    };
    match cli.format {
        Format::Csv if a.summary => {
            writeln!(out, "graph_id,pattern,size,count")?;
            for (i, (g, f)) in graphs.iter().zip(&feats).enumerate() {
                for (pi, c) in per_pattern(f).into_iter().enumerate() {
                    writeln!(
                        out,
                        "{},{pi},{},{c}",
                        graph_id(g, i),
                        coll.patterns[pi].size
                    )?;
                }
            }
        }
        Format::Csv if a.edges => {
            write!(out, "graph_id,u,v")?;
            for e in 0..coll.edge_dims() {
                write!(out, ",e{e}")?;
            }
            writeln!(out)?;
            for (i, (g, f)) in graphs.iter().zip(&feats).enumerate() {
                for ((u, v), row) in f.arcs() {
                    write!(out, "{},{u},{v}", graph_id(g, i))?;
                    for x in row {
                        write!(out, ",{x}")?;
                    }
                    writeln!(out)?;
                }
            }
        }
        Format::Csv => {
            let cols = coll.vertex_column_names();
            for (i, (g, f)) in graphs.iter().zip(&feats).enumerate() {
                f.write_vertex_csv(out, &graph_id(g, i), &cols, i == 0)?;
            }
        }
        Format::Json => {
            let results: Vec<_> = graphs
                .iter()
                .zip(&feats)
                .enumerate()
                .map(|(i, (g, f))| {
                    json!({
                        "graph_id": graph_id(g, i),
                        "pattern_counts": per_pattern(f),
                        "features": f.to_json_value(),
                    })
                })
                .collect();
            RunReport::new("count", cli)
                .collection(&coll)
                .results(results)
                .summary(json!({ "graphs": graphs.len(), "vertex_dims": coll.vertex_dims(), "edge_dims": coll.edge_dims() }))
                .write(out)?;
        }
    }
    Ok(true)
}

fn cmd_sr_bench(cli: &Cli, a: &SrBenchArgs, out: &mut dyn Write) -> CmdResult {
    let mut families = load_sr_dir(&a.dir)?;
    if !a.full {
        families = desk_subset(families, DESK_MAX_N);
    }
    let pairs = a.sample_pairs.map(|n| sample_pairs(&families, n, cli.seed));
    let seeds = seeds_or_default(a.seeds.as_deref(), cli.seed)?;
    let variants: Vec<Variant> = parse_list(&a.variants)?;
    let mut tests = Vec::new();
    if !a.no_baselines {
        tests.push((SrTest::Wl1, None));
        tests.push((SrTest::Fwl2, None));
    }
    for GridPoint { family, k } in parse_grid(&a.grid)? {
        for &variant in &variants {
            tests.push((
                SrTest::Gsn {
                    family,
                    k,
                    mode: a.mode,
                    variant,
                },
                Some((family, k, variant)),
            ));
        }
    }
    let mut outcomes = Vec::new();
    for (test, _) in &tests {
        let cfg = SrConfig {
            test: test.clone(),
            seeds: seeds.clone(),
            epsilon: cli.epsilon,
        };
        let o = run_sr(&families, &cfg, pairs.as_deref())?;
        eprintln!("{}: {}/{} pairs failed", o.label, o.failures, o.pairs);
        outcomes.push(o);
    }
    match cli.format {
        Format::Csv => {
            writeln!(
                out,
                "test,variant,family,k,mode,pairs,failures,failure_fraction,precheck_failures,max_failed_distance,min_separated_distance"
            )?;
            for ((test, point), o) in tests.iter().zip(&outcomes) {
                let opt = |x: Option<f64>| x.map_or_else(String::new, |v| format!("{v:e}"));
                let (name, variant, family, k, mode) = match point {
                    Some((f, k, v)) => (
                        "gsn",
                        v.to_string(),
                        f.to_string(),
                        k.to_string(),
                        a.mode.to_string(),
                    ),
                    None => (
                        if *test == SrTest::Wl1 { "wl1" } else { "fwl2" },
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ),
                };
                writeln!(
                    out,
                    "{name},{variant},{family},{k},{mode},{},{},{},{},{},{}",
                    o.pairs,
                    o.failures,
                    o.failure_fraction,
                    o.precheck_failures
                        .map_or_else(String::new, |p| p.to_string()),
                    opt(o.max_failed_distance),
                    opt(o.min_separated_distance)
                )?;
            }
        }
        Format::Json => {
            let fams: Vec<_> = families
                .iter()
                .map(|f| json!({ "name": f.name, "graphs": f.graphs.len(), "params": f.params.map(|p| p.to_string()) }))
                .collect();
            RunReport::new("sr-bench", cli)
                .extra("seeds", json!(seeds))
                .extra("families", json!(fams))
                .results(outcomes.iter().map(|o| json!(o)).collect())
                .summary(json!({ "pairs": pairs.as_ref().map_or_else(|| total_pairs(&families), |p| p.iter().map(Vec::len).sum()) }))
                .write(out)?;
        }
    }
    Ok(true)
}

fn cmd_wl(cli: &Cli, a: &WlArgs, out: &mut dyn Write) -> CmdResult {
    let graphs = load_all(&a.inputs)?;
    let refs: Vec<&Graph> = graphs.iter().collect();
    let colorings = match a.test {
        WlTest::Wl1 => wl1_refine_jointly(&refs, None, Wl1Options::default())?,
        WlTest::Fwl2 => kfwl_refine_jointly(&refs, 2)?,
        WlTest::Fwl3 => kfwl_refine_jointly(&refs, 3)?,
    };
    let rows: Vec<(usize, usize, bool)> = all_pairs(graphs.len())
        .into_iter()
        .map(|(i, j)| (i, j, colorings[i].histogram != colorings[j].histogram))
        .collect();
    match cli.format {
        Format::Csv => {
            writeln!(out, "graph_a,graph_b,test,distinguished")?;
            for &(i, j, d) in &rows {
                writeln!(
                    out,
                    "{},{},{},{d}",
                    graph_id(&graphs[i], i),
                    graph_id(&graphs[j], j),
                    a.test
                )?;
            }
        }
        Format::Json => {
            let results = rows
                .iter()
                .map(|&(i, j, d)| json!({ "graph_a": graph_id(&graphs[i], i), "graph_b": graph_id(&graphs[j], j), "distinguished": d }))
                .collect();
            let colors: Vec<_> = colorings
                .iter()
                .map(|c| json!({ "colors": c.num_colors(), "round": c.round }))
                .collect();
            RunReport::new("wl", cli)
                .extra("colorings", json!(colors))
                .results(results)
                .summary(json!({ "pairs": rows.len(), "distinguished": rows.iter().filter(|r| r.2).count() }))
                .write(out)?;
        }
    }
    Ok(true)
}

fn cmd_gsn_test(cli: &Cli, a: &GsnTestArgs, out: &mut dyn Write) -> CmdResult {
    let graphs = load_all(&a.inputs)?;
    let mut cfg: EncoderConfig = match &a.config {
        Some(p) => serde_json::from_reader(
            File::open(p).with_context(|| format!("opening {}", p.display()))?,
        )
        .with_context(|| format!("parsing {}", p.display()))?,
        None => EncoderConfig {
            seed: cli.seed,
            epsilon: cli.epsilon,
            ..Default::default()
        },
    };
    if let Some(v) = a.variant {
        cfg.variant = v;
    }
    cfg.validate()?;
    let seeds = seeds_or_default(a.seeds.as_deref(), cfg.seed)?;
    let coll = if cfg.variant.needs_features() {
        Some(a.patterns.collection()?)
    } else {
        None
    };
    let feats = match &coll {
        Some(c) => Some(
            graphs
                .par_iter()
                .map(|g| structural_features(g, c))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let pairs = all_pairs(graphs.len());
    let rows = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (fi, fj) = (feats.as_ref().map(|f| &f[i]), feats.as_ref().map(|f| &f[j]));
            let pre = match (fi, fj) {
                (Some(x), Some(y)) => {
                    let (mx, my) = (
                        feature_multiset(&graphs[i], x),
                        feature_multiset(&graphs[j], y),
                    );
                    Some(if cfg.variant == Variant::GsnE {
                        mx.1 == my.1
                    } else {
                        mx.0 == my.0
                    })
                }
                _ => None,
            };
            let o = compare_with_seeds(&graphs[i], &graphs[j], fi, fj, &cfg, &seeds)?;
            Ok((i, j, pre, o))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    match cli.format {
        Format::Csv => {
            writeln!(
                out,
                "graph_a,graph_b,variant,distinguished,identifiers_equal,max_distance"
            )?;
            for (i, j, pre, o) in &rows {
                let max = o.distances.iter().copied().fold(0.0, f64::max);
                writeln!(
                    out,
                    "{},{},{},{},{},{max:e}",
                    graph_id(&graphs[*i], *i),
                    graph_id(&graphs[*j], *j),
                    cfg.variant,
                    o.distinguished,
                    pre.map_or_else(String::new, |p| p.to_string())
                )?;
            }
        }
        Format::Json => {
            let results = rows
                .iter()
                .map(|(i, j, pre, o)| {
                    json!({
                        "graph_a": graph_id(&graphs[*i], *i),
                        "graph_b": graph_id(&graphs[*j], *j),
                        "distinguished": o.distinguished,
                        "identifiers_equal": pre,
                        "distances": o.distances,
                    })
                })
                .collect();
            let mut r = RunReport::new("gsn-test", cli)
                .extra("encoder", json!(cfg))
                .extra("seeds", json!(seeds));
            if let Some(c) = &coll {
                r = r.collection(c);
            }
            r.results(results)
                .summary(json!({ "pairs": rows.len(), "distinguished": rows.iter().filter(|r| r.3.distinguished).count() }))
                .write(out)?;
        }
    }
    Ok(true)
}

fn sr_graphs(dir: Option<&Path>) -> anyhow::Result<Vec<Graph>> {
    match dir {
        Some(d) => Ok(load_sr_dir(d)?.into_iter().flat_map(|f| f.graphs).collect()),
        None => Ok(vec![rook_4x4(), shrikhande()]),
    }
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let checks: Vec<Theorem> = if a.checks.is_empty() {
        Theorem::ALL.to_vec()
    } else {
        a.checks.clone()
    };
    let mut reports: Vec<CheckReport> = Vec::new();
    for t in checks {
        let r = match t {
            Theorem::Equivariance => verify::verify_equivariance(a.trials, cli.seed)?,
            Theorem::Reconstruction => verify::verify_reconstruction(a.trials, 15, cli.seed)?,
            Theorem::Deck => verify::verify_deck(&[4, 5, 6], 7, a.trials.min(50), cli.seed)?,
            Theorem::Fwl2Sr => verify::verify_fwl2_sr(&sr_graphs(a.sr_dir.as_deref())?)?,
            Theorem::WlRefinement => verify::verify_wl_refinement(a.trials, cli.seed)?,
        };
        eprintln!("{}: {} cases, {} failures", r.name, r.cases, r.failures);
        reports.push(r);
    }
    let ok = reports.iter().all(CheckReport::passed);
    match cli.format {
        Format::Csv => {
            writeln!(out, "check,cases,failures,passed")?;
            for r in &reports {
                writeln!(out, "{},{},{},{}", r.name, r.cases, r.failures, r.passed())?;
            }
        }
        Format::Json => {
            RunReport::new("verify", cli)
                .results(reports.iter().map(|r| json!(r)).collect())
                .summary(json!({ "passed": ok }))
                .write(out)?;
        }
    }
    Ok(ok)
}

fn parse_delta_grid(spec: &str) -> anyhow::Result<Vec<GridPoint>> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "none" {
            out.push(GridPoint {
                family: Family::Custom,
                k: 0,
            });
        } else {
            out.extend(parse_grid(item)?);
        }
    }
    if out.is_empty() {
        bail!("empty grid");
    }
    Ok(out)
}

fn cmd_delta(cli: &Cli, a: &DeltaArgs, out: &mut dyn Write) -> CmdResult {
    let graphs = load(&a.input)?;
    let grid = parse_delta_grid(&a.grid)?;
    let mut rows = Vec::new();
    for p in &grid {
        let coll = p.collection(a.mode)?;
        let d = disambiguation_score(&graphs, &coll)?;
        let family = if p.k == 0 {
            "none".to_string()
        } else {
            p.family.to_string()
        };
        rows.push((family, p.k, d));
    }
    match cli.format {
        Format::Csv => {
            writeln!(out, "family,k,mode,delta")?;
            for (f, k, d) in &rows {
                writeln!(out, "{f},{k},{},{d:.6}", a.mode)?;
            }
        }
        Format::Json => {
            let results = rows
                .iter()
                .map(|(f, k, d)| json!({ "family": f, "k": k, "delta": d }))
                .collect();
            RunReport::new("delta", cli)
                .results(results)
                .summary(json!({ "graphs": graphs.len() }))
                .write(out)?;
        }
    }
    Ok(true)
}

fn cmd_bench(cli: &Cli, a: &BenchArgs, out: &mut dyn Write) -> CmdResult {
    let graphs = match (&a.input, &a.random_sparse) {
        (Some(p), _) => load(p)?,
        (None, Some(spec)) => {
            let mut rng = gsn_core::rng::seeded(cli.seed);
            parse_list::<usize>(spec)?
                .into_iter()
                .map(|n| {
                    let m = ((n as f64) * a.avg_degree / 2.0).round() as usize;
                    random_sparse(n, m, &mut rng).with_name(format!("sparse{n}"))
                })
                .collect()
        }
        (None, None) => bail!("either an input file or --random-sparse is required"),
    };
    let coll = family_collection(a.family, a.k, a.mode)?;
    let opts = BenchOptions {
        reps: a.reps,
        timeout: Duration::from_secs(cli.timeout_secs),
    };
    let records: Vec<BenchRecord> = if a.parallel {
        eprintln!("warning: --parallel measurements are not comparable");
        let per: Vec<Vec<BenchRecord>> = graphs
            .par_iter()
            .map(|g| run_bench(std::slice::from_ref(g), &coll, &opts))
            .collect::<Result<_, _>>()?;
        per.into_iter().flatten().collect()
    } else {
        run_bench(&graphs, &coll, &opts)?
    };
    match cli.format {
        Format::Csv => write_csv(out, &records)?,
        Format::Json => {
            let mut curves = Vec::new();
            for p in &coll.patterns {
                let pts: Vec<(usize, f64)> = records
                    .iter()
                    .filter(|r| r.k == p.size && r.family == p.family.to_string() && !r.timed_out)
                    .map(|r| (r.n, r.seconds))
                    .collect();
                curves.push(json!({
                    "k": p.size,
                    "reference": reference_curve(&pts, p.size),
                    "loglog_slope": loglog_slope(&pts),
                }));
            }
            RunReport::new("bench", cli)
                .collection(&coll)
                .extra("comparable", json!(!a.parallel))
                .extra("worst_case", json!(curves))
                .results(records.iter().map(|r| json!(r)).collect())
                .summary(json!({ "records": records.len(), "timed_out": records.iter().filter(|r| r.timed_out).count() }))
                .write(out)?;
        }
    }
    Ok(true)
}
