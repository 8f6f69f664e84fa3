//! Command line front end: recognition with optional brute-force
//! cross-checking, minimum-budget search, hardness-gadget generation,
//! certificate rendering, and instance generators.
//!
//! Exit codes: 0 YES, 1 NO, 2 bad input, 3 resource limit, 4 certificate or
//! oracle mismatch.  Answers go to stdout, run reports to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use localcross::drawing::{
    circular_crossings_per_edge, two_layer_crossings_per_edge, two_layer_weighted_load,
    CircularDrawing, TwoLayerDrawing, WeightMode,
};
use localcross::error::{Error, Result};
use localcross::graph::Graph;
use localcross::io::{
    instance_digest, parse_instance, write_instance_text, Certificate, CertificateDrawing,
    Instance,
};
use localcross::one_sided::{
    solve_one_sided_full, solve_one_sided_weighted_full, WindowMode,
};
use localcross::oracle::{
    one_sided_oracle, one_sided_weighted_oracle, outer_oracle, two_sided_oracle, OracleLimits,
};
use localcross::outer::{local_outer_crossing_number, solve_outer_full};
use localcross::reductions;
use localcross::render;
use localcross::two_sided::solve_two_sided_full;
use localcross::{DpStats, SolverConfig, TABLE_CAP_ENV};

#[derive(Parser)]
#[command(name = "localcross", version, about = "2-layer and outer k-planarity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether instances admit drawings within the crossing budget.
    Recognize(RecognizeArgs),
    /// Smallest budget under which an instance is drawable.
    MinK(MinKArgs),
    /// Emit a hardness-reduction instance.
    Reduce {
        #[command(subcommand)]
        kind: ReduceCmd,
    },
    /// Render a certificate drawing.
    Draw(DrawArgs),
    /// Emit a synthetic instance.
    Gen {
        #[command(subcommand)]
        kind: GenCmd,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    /// Fixed X order, free Y order.
    OneSided,
    /// Both layer orders free.
    TwoSided,
    /// Free circular order.
    Outer,
}

impl Problem {
    fn name(self) -> &'static str {
        match self {
            Problem::OneSided => "one-sided",
            Problem::TwoSided => "two-sided",
            Problem::Outer => "outer",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sum,
    Product,
}

impl From<Mode> for WeightMode {
    fn from(m: Mode) -> WeightMode {
        match m {
            Mode::Sum => WeightMode::Sum,
            Mode::Product => WeightMode::Product,
        }
    }
}

#[derive(Parser)]
struct RecognizeArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    /// Crossing budget (load budget for weighted instances).
    #[arg(long)]
    k: u64,
    /// Cross-check the answer against the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Re-verify the certificate drawing independently of the solver.
    #[arg(long)]
    verify: bool,
    /// Worker threads for multi-file runs.
    #[arg(long)]
    jobs: Option<usize>,
    /// Dynamic-programming table cap (default from LOCALCROSS_TABLE_CAP).
    #[arg(long)]
    table_cap: Option<usize>,
    /// How crossings are charged on weighted instances.
    #[arg(long, value_enum, default_value = "sum")]
    weight_mode: Mode,
    /// Write the certificate as JSON (single input only).
    #[arg(long)]
    cert_out: Option<PathBuf>,
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Parser)]
struct MinKArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    /// Largest budget to try.
    #[arg(long)]
    k_max: u64,
    #[arg(long)]
    table_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "sum")]
    weight_mode: Mode,
    file: PathBuf,
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Partition multiset -> weighted one-sided instance.
    Partition {
        /// Comma-separated positive elements with an even total.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Tree bandwidth <= b -> two-sided instance.
    #[command(name = "bandwidth-2layer")]
    Bandwidth2Layer {
        #[arg(long)]
        b: usize,
        /// Instance file holding the tree.
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Tree plus an apex vertex; outer budget brackets the bandwidth.
    Apex {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Tree bandwidth <= b -> outer instance (b >= 3).
    BandwidthOuter {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DrawFormat {
    Svg,
    Dot,
    Json,
}

#[derive(Parser)]
struct DrawArgs {
    #[arg(long, value_enum)]
    format: DrawFormat,
    /// Certificate JSON produced by `recognize --cert-out`.
    #[arg(long)]
    cert: PathBuf,
    /// The instance the certificate talks about.
    #[arg(long)]
    instance: PathBuf,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Spine path with pendant legs on every spine vertex.
    Caterpillar {
        #[arg(long)]
        spine: usize,
        #[arg(long)]
        legs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform random labelled tree.
    RandomTree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complete bipartite graph with an X: line.
    Biclique {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random bipartite graph with an X: line.
    RandomBipartite {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "1")]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidInput(_) | Error::Io(_) => 2,
        Error::Resource(_) => 3,
        Error::BadCertificate(_) => 4,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Recognize(args) => recognize(args),
        Cmd::MinK(args) => min_k(args),
        Cmd::Reduce { kind } => reduce(kind),
        Cmd::Draw(args) => draw(args),
        Cmd::Gen { kind } => gen(kind),
    }
}

fn config(table_cap: Option<usize>) -> Result<SolverConfig> {
    let mut cfg = SolverConfig::default();
    if let Some(cap) = table_cap {
        cfg.table_cap = cap;
    } else if let Ok(raw) = std::env::var(TABLE_CAP_ENV) {
        cfg.table_cap = raw
            .parse()
            .map_err(|_| Error::invalid(format!("bad {TABLE_CAP_ENV} value {raw:?}")))?;
    }
    Ok(cfg)
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

fn unweighted_budget(k: u64) -> Result<usize> {
    usize::try_from(k).map_err(|_| Error::invalid(format!("budget {k} out of range")))
}

/// One solved file: the answer, its certificate, and table statistics.
struct RunReport {
    file: PathBuf,
    yes: bool,
    cert: Certificate,
    stats: DpStats,
    millis: u128,
}

fn solve_file(args: &RecognizeArgs, path: &Path, cfg: &SolverConfig) -> Result<RunReport> {
    let inst = read_instance(path)?;
    let weighted = inst.graph.is_weighted();
    if weighted && args.problem != Problem::OneSided {
        return Err(Error::invalid(format!(
            "{} recognition does not take weighted instances",
            args.problem.name()
        )));
    }
    let start = Instant::now();
    let (drawing, stats): (Option<CertificateDrawing>, DpStats) = match args.problem {
        Problem::OneSided => {
            let b = inst.to_bipartite()?;
            let report = if weighted {
                solve_one_sided_weighted_full(&b, args.k, args.weight_mode.into(), cfg)?
            } else {
                solve_one_sided_full(&b, unweighted_budget(args.k)?, WindowMode::Dynamic, cfg)?
            };
            (
                report.drawing.map(|d| CertificateDrawing::TwoLayer {
                    x_order: d.x_order,
                    y_order: d.y_order,
                }),
                report.stats,
            )
        }
        Problem::TwoSided => {
            let report = solve_two_sided_full(&inst.graph, unweighted_budget(args.k)?, cfg)?;
            (
                report.drawing.map(|d| CertificateDrawing::TwoLayer {
                    x_order: d.x_order,
                    y_order: d.y_order,
                }),
                report.stats,
            )
        }
        Problem::Outer => {
            let report = solve_outer_full(&inst.graph, unweighted_budget(args.k)?, cfg)?;
            (
                report.drawing.map(|d| CertificateDrawing::Circular { cycle: d.cycle }),
                report.stats,
            )
        }
    };
    let millis = start.elapsed().as_millis();
    let cert = Certificate {
        problem: args.problem.name().into(),
        k: args.k,
        yes: drawing.is_some(),
        drawing,
        instance_sha256: instance_digest(&inst),
    };
    if args.verify {
        verify_certificate(&inst, &cert, args.weight_mode.into())?;
    }
    if args.oracle {
        let want = oracle_answer(args.problem, &inst, args.k, args.weight_mode.into())?;
        if want != cert.yes {
            return Err(Error::BadCertificate(format!(
                "solver said {}, oracle said {}",
                answer(cert.yes),
                answer(want)
            )));
        }
    }
    Ok(RunReport { file: path.to_path_buf(), yes: cert.yes, cert, stats, millis })
}

fn oracle_answer(problem: Problem, inst: &Instance, k: u64, mode: WeightMode) -> Result<bool> {
    let limits = OracleLimits::default();
    Ok(match problem {
        Problem::OneSided => {
            let b = inst.to_bipartite()?;
            if inst.graph.is_weighted() {
                one_sided_weighted_oracle(&b, k, mode, &limits)?.is_some()
            } else {
                one_sided_oracle(&b, unweighted_budget(k)?, &limits)?.is_some()
            }
        }
        Problem::TwoSided => {
            two_sided_oracle(&inst.to_bipartite()?, unweighted_budget(k)?, &limits)?.is_some()
        }
        Problem::Outer => outer_oracle(&inst.graph, unweighted_budget(k)?, &limits)?.is_some(),
    })
}

/// Checks a certificate against its instance from scratch.
fn verify_certificate(inst: &Instance, cert: &Certificate, mode: WeightMode) -> Result<()> {
    let digest = instance_digest(inst);
    if cert.instance_sha256 != digest {
        return Err(Error::BadCertificate(
            "certificate was made from a different instance".into(),
        ));
    }
    let Some(drawing) = &cert.drawing else {
        return Ok(()); // a NO carries nothing checkable
    };
    match drawing {
        CertificateDrawing::TwoLayer { x_order, y_order } => {
            let b = inst.to_bipartite()?;
            let d = TwoLayerDrawing { x_order: x_order.clone(), y_order: y_order.clone() };
            if inst.graph.is_weighted() {
                let loads = two_layer_weighted_load(&b, &d, mode)?;
                if loads.iter().any(|&l| l > cert.k) {
                    return Err(Error::BadCertificate("edge load over budget".into()));
                }
            } else {
                let counts = two_layer_crossings_per_edge(&b, &d)?;
                if counts.iter().any(|&c| c as u64 > cert.k) {
                    return Err(Error::BadCertificate("edge crossings over budget".into()));
                }
            }
        }
        CertificateDrawing::Circular { cycle } => {
            let d = CircularDrawing { cycle: cycle.clone() };
            let counts = circular_crossings_per_edge(&inst.graph, &d)?;
            if counts.iter().any(|&c| c as u64 > cert.k) {
                return Err(Error::BadCertificate("edge crossings over budget".into()));
            }
        }
    }
    Ok(())
}

fn answer(yes: bool) -> &'static str {
    if yes {
        "YES"
    } else {
        "NO"
    }
}

fn recognize(args: RecognizeArgs) -> Result<u8> {
    let cfg = config(args.table_cap)?;
    if args.cert_out.is_some() && args.files.len() > 1 {
        return Err(Error::invalid("--cert-out takes a single input file"));
    }
    let reports: Vec<Result<RunReport>> = if args.files.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs.unwrap_or(0))
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
        pool.install(|| {
            use rayon::prelude::*;
            args.files.par_iter().map(|f| solve_file(&args, f, &cfg)).collect()
        })
    } else {
        args.files.iter().map(|f| solve_file(&args, f, &cfg)).collect()
    };

    let mut code = 0u8;
    for (file, outcome) in args.files.iter().zip(reports) {
        match outcome {
            Ok(report) => {
                if args.files.len() == 1 {
                    println!("{}", answer(report.yes));
                } else {
                    println!("{}: {}", file.display(), answer(report.yes));
                }
                eprintln!(
                    "# {} problem={} k={} answer={} states={} peak={} steps={} components={} ms={}",
                    report.file.display(),
                    args.problem.name(),
                    args.k,
                    answer(report.yes),
                    report.stats.states_created,
                    report.stats.peak_states,
                    report.stats.steps,
                    report.stats.max_components,
                    report.millis
                );
                if let Some(out) = &args.cert_out {
                    std::fs::write(out, report.cert.to_json())?;
                }
                if !report.yes {
                    code = code.max(1);
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", file.display());
                code = code.max(exit_code(&e));
            }
        }
    }
    Ok(code)
}

fn min_k(args: MinKArgs) -> Result<u8> {
    let cfg = config(args.table_cap)?;
    let inst = read_instance(&args.file)?;
    let weighted = inst.graph.is_weighted();
    if weighted && args.problem != Problem::OneSided {
        return Err(Error::invalid(format!(
            "{} recognition does not take weighted instances",
            args.problem.name()
        )));
    }
    let found: Option<u64> = match args.problem {
        Problem::OneSided => {
            let b = inst.to_bipartite()?;
            let mut hit = None;
            for k in 0..=args.k_max {
                let yes = if weighted {
                    solve_one_sided_weighted_full(&b, k, args.weight_mode.into(), &cfg)?
                        .drawing
                        .is_some()
                } else {
                    solve_one_sided_full(&b, unweighted_budget(k)?, WindowMode::Dynamic, &cfg)?
                        .drawing
                        .is_some()
                };
                if yes {
                    hit = Some(k);
                    break;
                }
            }
            hit
        }
        Problem::TwoSided => {
            let mut hit = None;
            for k in 0..=args.k_max {
                if solve_two_sided_full(&inst.graph, unweighted_budget(k)?, &cfg)?
                    .drawing
                    .is_some()
                {
                    hit = Some(k);
                    break;
                }
            }
            hit
        }
        Problem::Outer => {
            local_outer_crossing_number(&inst.graph, unweighted_budget(args.k_max)?, &cfg)?
                .map(|k| k as u64)
        }
    };
    match found {
        Some(k) => {
            println!("{k}");
            Ok(0)
        }
        None => {
            println!("none");
            Ok(1)
        }
    }
}

fn write_gadget(out_dir: &Path, name: &str, inst: &Instance) -> Result<PathBuf> {
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(name);
    std::fs::write(&path, write_instance_text(inst))?;
    Ok(path)
}

fn read_tree(path: &Path) -> Result<Graph> {
    let inst = read_instance(path)?;
    if !inst.graph.is_tree() {
        return Err(Error::invalid(format!("{} does not hold a tree", path.display())));
    }
    Ok(inst.graph)
}

fn reduce(kind: ReduceCmd) -> Result<u8> {
    match kind {
        ReduceCmd::Partition { a, out_dir } => {
            let gadget = reductions::partition_to_weighted_one_sided(&a)?;
            let inst = Instance {
                graph: gadget.instance.graph.clone(),
                x_side: Some(gadget.instance.x_side().to_vec()),
                fixed_x_order: gadget.instance.fixed_x_order.clone(),
            };
            let path = write_gadget(&out_dir, "partition_gadget.txt", &inst)?;
            println!("file={} problem=one-sided weight-mode=sum k={}", path.display(), gadget.k);
        }
        ReduceCmd::Bandwidth2Layer { b, tree, out_dir } => {
            let gadget = reductions::bandwidth_tree_to_two_sided(&read_tree(&tree)?, b)?;
            let inst = Instance::new(gadget.graph);
            let path = write_gadget(&out_dir, "bandwidth_2layer_gadget.txt", &inst)?;
            println!("file={} problem=two-sided k={}", path.display(), gadget.k);
        }
        ReduceCmd::Apex { tree, out_dir } => {
            let (graph, apex) = reductions::tree_to_apex(&read_tree(&tree)?)?;
            let inst = Instance::new(graph);
            let path = write_gadget(&out_dir, "apex_graph.txt", &inst)?;
            println!("file={} problem=outer apex={apex}", path.display());
        }
        ReduceCmd::BandwidthOuter { b, tree, out_dir } => {
            let gadget = reductions::bandwidth_to_outer(&read_tree(&tree)?, b)?;
            let inst = Instance::new(gadget.graph);
            let path = write_gadget(&out_dir, "bandwidth_outer_gadget.txt", &inst)?;
            println!(
                "file={} problem=outer k={} apex={}",
                path.display(),
                gadget.k,
                gadget.apex
            );
        }
    }
    Ok(0)
}

fn draw(args: DrawArgs) -> Result<u8> {
    let inst = read_instance(&args.instance)?;
    let cert_text = std::fs::read_to_string(&args.cert)
        .map_err(|e| Error::parse(format!("{}: {e}", args.cert.display())))?;
    let cert = Certificate::from_json(&cert_text)?;
    verify_certificate(&inst, &cert, WeightMode::Sum)?;
    let Some(drawing) = &cert.drawing else {
        return Err(Error::invalid("certificate carries no drawing to render"));
    };
    let rendered = match (drawing, args.format) {
        (_, DrawFormat::Json) => cert.to_json(),
        (CertificateDrawing::TwoLayer { x_order, y_order }, format) => {
            let b = inst.to_bipartite()?;
            let d = TwoLayerDrawing { x_order: x_order.clone(), y_order: y_order.clone() };
            match format {
                DrawFormat::Svg => render::two_layer_svg(&b, &d)?,
                DrawFormat::Dot => render::two_layer_dot(&b, &d)?,
                DrawFormat::Json => unreachable!(),
            }
        }
        (CertificateDrawing::Circular { cycle }, format) => {
            let d = CircularDrawing { cycle: cycle.clone() };
            match format {
                DrawFormat::Svg => render::circular_svg(&inst.graph, &d)?,
                DrawFormat::Dot => render::circular_dot(&inst.graph, &d)?,
                DrawFormat::Json => unreachable!(),
            }
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(0)
}

/// Decodes a Pruefer sequence; every labelled tree on n >= 2 vertices arises
/// from exactly one sequence, so a uniform sequence gives a uniform tree.
fn prufer_tree(n: usize, seq: &[usize]) -> Graph {
    debug_assert_eq!(seq.len() + 2, n);
    let mut need = vec![1usize; n];
    for &s in seq {
        need[s] += 1;
    }
    let mut g = Graph::new(n);
    let mut leaf_heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| need[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &s in seq {
        let std::cmp::Reverse(leaf) = leaf_heap.pop().expect("a leaf always remains");
        g.add_edge(leaf, s).expect("pruefer edges are simple");
        need[s] -= 1;
        if need[s] == 1 {
            leaf_heap.push(std::cmp::Reverse(s));
        }
    }
    let std::cmp::Reverse(a) = leaf_heap.pop().expect("two leaves remain");
    let std::cmp::Reverse(b) = leaf_heap.pop().expect("two leaves remain");
    g.add_edge(a, b).expect("last pruefer edge is simple");
    g
}

fn gen(kind: GenCmd) -> Result<u8> {
    let (inst, out) = match kind {
        GenCmd::Caterpillar { spine, legs, out } => {
            if spine == 0 {
                return Err(Error::invalid("caterpillar needs at least one spine vertex"));
            }
            let n = spine + spine * legs;
            let mut g = Graph::new(n);
            for v in 1..spine {
                g.add_edge(v - 1, v)?;
            }
            for v in 0..spine {
                for leg in 0..legs {
                    g.add_edge(v, spine + v * legs + leg)?;
                }
            }
            (Instance::new(g), out)
        }
        GenCmd::RandomTree { n, seed, out } => {
            if n == 0 {
                return Err(Error::invalid("tree needs at least one vertex"));
            }
            let g = if n == 1 {
                Graph::new(1)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
                prufer_tree(n, &seq)
            };
            (Instance::new(g), out)
        }
        GenCmd::Cycle { n, out } => {
            if n < 3 {
                return Err(Error::invalid("cycle needs at least three vertices"));
            }
            let mut g = Graph::new(n);
            for v in 0..n {
                g.add_edge(v, (v + 1) % n)?;
            }
            (Instance::new(g), out)
        }
        GenCmd::Complete { n, out } => {
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v)?;
                }
            }
            (Instance::new(g), out)
        }
        GenCmd::Biclique { a, b, out } => {
            let mut g = Graph::new(a + b);
            for u in 0..a {
                for v in 0..b {
                    g.add_edge(u, a + v)?;
                }
            }
            let mut inst = Instance::new(g);
            inst.x_side = Some((0..a).collect());
            (inst, out)
        }
        GenCmd::RandomBipartite { nx, ny, m, seed, out } => {
            if m > nx * ny {
                return Err(Error::invalid(format!("at most {} edges fit", nx * ny)));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pairs: Vec<(usize, usize)> = (0..nx)
                .flat_map(|u| (0..ny).map(move |v| (u, nx + v)))
                .collect();
            pairs.shuffle(&mut rng);
            pairs.truncate(m);
            pairs.sort_unstable();
            let mut g = Graph::new(nx + ny);
            for (u, v) in pairs {
                g.add_edge(u, v)?;
            }
            let mut inst = Instance::new(g);
            inst.x_side = Some((0..nx).collect());
            (inst, out)
        }
    };
    let text = write_instance_text(&inst);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}
