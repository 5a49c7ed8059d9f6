//! `kconn`: connectivity certification, spectral analysis, extremal scans
//! and verification suites over graph6 corpora.
//!
//! Per-graph records go to stdout as JSON Lines (or TSV rows with
//! `--output tsv`); run summaries are a single JSON object on the last
//! stdout line for json output and a human-readable stderr line otherwise.
//! Exit status: 0 on success / all-pass, 1 on verification failures,
//! 2 on usage or parse errors.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kconn::connectivity::{
    certify_minimality, edge_connectivity, vertex_connectivity, ConnKind, ConnectivityReport,
    MinimalityCertificate,
};
use kconn::graph::{Graph, VertexSet};
use kconn::graph6;
use kconn::rewire::{certify_rayleigh_increase, peel_step_terms, rewire_to_l, top_coordinate_set};
use kconn::scan::{extremal_report, scan_records};
use kconn::spectral::spectral_radius;
use kconn::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "kconn",
    version,
    about = "Analyze minimally k-(edge)-connected graphs: exact connectivity with witnesses, spectral radius, extremal scans and verification suites over graph6 corpora"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the graph6 encoding of a named graph family.
    Gen(GenArgs),
    /// Enumerate one representative per isomorphism class (n <= 7).
    Enumerate(EnumerateArgs),
    /// Connectivity report plus minimality certificate per input graph.
    Check(CheckArgs),
    /// Spectral radius and Perron vector per input graph.
    Rho(RhoArgs),
    /// Filter to minimally k-(edge)-connected graphs and reduce to the
    /// extremal summary.
    Scan(ScanArgs),
    /// Run a verification suite over the minimally k-(edge)-connected
    /// graphs of the input.
    Verify(VerifyArgs),
    /// Peel-and-rewire each input graph onto its top-coordinate k-set.
    Rewire(RewireArgs),
}

#[derive(Args)]
struct CommonIo {
    /// Read graph6 lines from this file instead of standard input.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output format for per-graph records.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Worker threads for per-graph computation.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Eigen-residual tolerance for spectral computations.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    CompleteBipartite,
    Complete,
    Cycle,
    Path,
    Star,
    KAppended,
}

#[derive(Args)]
struct GenArgs {
    /// Which family to construct.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Total vertex count n.
    #[arg(long)]
    n: usize,
    /// Family parameter k (complete-bipartite side size / appended degree).
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Vertex count (at most 7).
    #[arg(long)]
    n: usize,
    /// Keep only graphs with minimum degree at least this.
    #[arg(long, default_value_t = 0)]
    min_degree: usize,
}

#[derive(Args)]
struct CheckArgs {
    /// Target connectivity k.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    /// Which connectivity to certify.
    #[arg(long, default_value = "vertex")]
    mode: ConnKindArg,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct RhoArgs {
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, default_value = "vertex")]
    mode: ConnKindArg,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: bounds-global, bounds-subgraph, degree-k, forest,
    /// heredity, eigen-report or decomposition.
    #[arg(long)]
    suite: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, default_value = "vertex")]
    mode: ConnKindArg,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct RewireArgs {
    /// Size of the target set L (and the connectivity parameter).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    /// Explicit L as comma-separated vertex indices; defaults to the k
    /// largest Perron coordinates.
    #[arg(long)]
    l: Option<String>,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Clone, Copy)]
struct ConnKindArg(ConnKind);

impl FromStr for ConnKindArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ConnKind::from_str(s).map(ConnKindArg)
    }
}

/// Exit status accumulator: parse errors dominate verification failures.
#[derive(Default)]
struct Status {
    parse_errors: bool,
    failures: bool,
}

impl Status {
    fn code(&self) -> ExitCode {
        if self.parse_errors {
            ExitCode::from(2)
        } else if self.failures {
            ExitCode::from(1)
        } else {
            ExitCode::SUCCESS
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => status.code(),
        Err(err) => {
            eprintln!("kconn: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Enumerate(args) => cmd_enumerate(args),
        Cmd::Check(args) => with_pool(&args.io, |graphs, status| cmd_check(&args, graphs, status)),
        Cmd::Rho(args) => with_pool(&args.io, |graphs, status| cmd_rho(&args, graphs, status)),
        Cmd::Scan(args) => with_pool(&args.io, |graphs, status| cmd_scan(&args, graphs, status)),
        Cmd::Verify(args) => {
            let suite = Suite::from_str(&args.suite)?;
            with_pool(&args.io, |graphs, status| {
                cmd_verify(&args, suite, graphs, status)
            })
        }
        Cmd::Rewire(args) => {
            with_pool(&args.io, |graphs, status| cmd_rewire(&args, graphs, status))
        }
    }
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<Status> {
    let need_k = || {
        args.k
            .ok_or_else(|| anyhow::anyhow!("this family requires --k"))
    };
    let g = match args.family {
        FamilyArg::CompleteBipartite => Graph::complete_bipartite(need_k()?, args.n)?,
        FamilyArg::Complete => Graph::complete(args.n)?,
        FamilyArg::Cycle => Graph::cycle(args.n)?,
        FamilyArg::Path => Graph::path(args.n)?,
        FamilyArg::Star => Graph::star(args.n)?,
        FamilyArg::KAppended => Graph::k_appended(args.n, need_k()?)?,
    };
    println!("{}", graph6::encode(&g)?);
    Ok(Status::default())
}

fn cmd_enumerate(args: EnumerateArgs) -> anyhow::Result<Status> {
    let mut out = io::stdout().lock();
    for g in kconn::enumerate_graphs(args.n, args.min_degree)? {
        writeln!(out, "{}", graph6::encode(&g)?)?;
    }
    Ok(Status::default())
}

/// Read the graph6 stream, report malformed lines on stderr (the run
/// continues), then hand the decoded graphs to `body` inside a rayon pool of
/// the requested size.
fn with_pool(
    io_args: &CommonIo,
    body: impl FnOnce(Vec<Graph>, &mut Status) -> anyhow::Result<()> + Send,
) -> anyhow::Result<Status> {
    let mut status = Status::default();
    let graphs = read_graphs(io_args, &mut status)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(io_args.jobs as usize)
        .build()?;
    pool.install(|| body(graphs, &mut status))?;
    Ok(status)
}

fn read_graphs(io_args: &CommonIo, status: &mut Status) -> anyhow::Result<Vec<Graph>> {
    let reader: Box<dyn Read> = match &io_args.input {
        Some(path) => Box::new(File::open(path)?),
        None => Box::new(io::stdin()),
    };
    let mut graphs = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim_end_matches('\r');
        if trimmed.is_empty() {
            continue;
        }
        match graph6::decode(trimmed.as_bytes()) {
            Ok(g) => graphs.push(g),
            Err(err) => {
                eprintln!("kconn: line {}: {err}", idx + 1);
                status.parse_errors = true;
            }
        }
    }
    Ok(graphs)
}

fn emit_records<T: Serialize>(
    format: OutputFormat,
    records: &[T],
    tsv_header: &str,
    tsv_row: impl Fn(&T) -> String,
) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        OutputFormat::Json => {
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
        }
        OutputFormat::Tsv => {
            writeln!(out, "{tsv_header}")?;
            for r in records {
                writeln!(out, "{}", tsv_row(r))?;
            }
        }
    }
    Ok(())
}

fn emit_summary<T: Serialize>(format: OutputFormat, summary: &T) -> anyhow::Result<()> {
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string(summary)?),
        OutputFormat::Tsv => eprintln!("{}", serde_json::to_string(summary)?),
    }
    Ok(())
}

fn opt<T: std::fmt::Display>(value: &Option<T>) -> String {
    match value {
        Some(v) => v.to_string(),
        None => "-".to_string(),
    }
}

#[derive(Serialize)]
struct CheckRecord {
    graph6: String,
    n: usize,
    connectivity: Option<ConnectivityReport>,
    valid: bool,
    minimality: MinimalityCertificate,
}

fn cmd_check(args: &CheckArgs, graphs: Vec<Graph>, _status: &mut Status) -> anyhow::Result<()> {
    let mode = args.mode.0;
    let records: Vec<CheckRecord> = graphs
        .iter()
        .map(|g| {
            let connectivity = match mode {
                ConnKind::Edge => Some(edge_connectivity(g)),
                ConnKind::Vertex => vertex_connectivity(g).ok(),
            };
            let cert = certify_minimality(g, args.k as usize, mode);
            Ok(CheckRecord {
                graph6: graph6::encode(g)?,
                n: g.n(),
                connectivity,
                valid: cert.valid(),
                minimality: cert,
            })
        })
        .collect::<anyhow::Result<_>>()?;
    emit_records(
        args.io.output,
        &records,
        "graph6\tn\tconnectivity\tminimal",
        |r| {
            format!(
                "{}\t{}\t{}\t{}",
                r.graph6,
                r.n,
                opt(&r.connectivity.as_ref().map(|c| c.value)),
                r.valid
            )
        },
    )
}

#[derive(Serialize)]
struct RhoRecord {
    graph6: String,
    n: usize,
    rho: f64,
    residual: f64,
    iterations: usize,
    vector: Vec<f64>,
}

fn cmd_rho(args: &RhoArgs, graphs: Vec<Graph>, status: &mut Status) -> anyhow::Result<()> {
    let mut records = Vec::new();
    for g in &graphs {
        match spectral_radius(g, args.io.tol) {
            Ok(p) => records.push(RhoRecord {
                graph6: graph6::encode(g)?,
                n: g.n(),
                rho: p.rho,
                residual: p.residual,
                iterations: p.iterations,
                vector: p.vector,
            }),
            Err(err) => {
                eprintln!("kconn: {}: {err}", graph6::encode(g)?);
                status.failures = true;
            }
        }
    }
    emit_records(args.io.output, &records, "graph6\tn\trho", |r| {
        format!("{}\t{}\t{:.12}", r.graph6, r.n, r.rho)
    })
}

fn cmd_scan(args: &ScanArgs, graphs: Vec<Graph>, _status: &mut Status) -> anyhow::Result<()> {
    let mode = args.mode.0;
    let n = graphs.first().map(|g| g.n()).unwrap_or(0);
    if let Some(other) = graphs.iter().find(|g| g.n() != n) {
        anyhow::bail!(
            "scan inputs must share one vertex count; saw both {n} and {}",
            other.n()
        );
    }
    let records = scan_records(&graphs, args.k as usize, mode, args.io.tol)?;
    let report = extremal_report(&records, args.k as usize, mode, n);
    emit_records(
        args.io.output,
        &records,
        "graph6\tn\te\tkappa\tkappa_prime\tminimal\trho\tdegree_k_count",
        |r| {
            format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.graph6,
                r.n,
                r.e,
                opt(&r.kappa),
                r.kappa_prime,
                r.minimal,
                opt(&r.rho.map(|x| format!("{x:.12}"))),
                r.degree_k_count
            )
        },
    )?;
    emit_summary(args.io.output, &report)
}

fn cmd_verify(
    args: &VerifyArgs,
    suite: Suite,
    graphs: Vec<Graph>,
    status: &mut Status,
) -> anyhow::Result<()> {
    let (outcomes, report) = run_suite(&graphs, suite, args.k as usize, args.mode.0, args.io.tol)?;
    if report.failed > 0 {
        status.failures = true;
    }
    emit_records(args.io.output, &outcomes, "graph6\tpass\tdetail", |o| {
        format!("{}\t{}\t{}", o.graph6, o.pass, o.detail)
    })?;
    emit_summary(args.io.output, &report)
}

#[derive(Serialize)]
struct RewireRecord {
    graph6_before: String,
    graph6_after: String,
    k: usize,
    l: VertexSet,
    v_common: VertexSet,
    u: VertexSet,
    steps: Vec<kconn::rewire::PeelStep>,
    rho_before: Option<f64>,
    rho_after: Option<f64>,
    delta: f64,
    step_terms: Vec<f64>,
}

fn cmd_rewire(args: &RewireArgs, graphs: Vec<Graph>, status: &mut Status) -> anyhow::Result<()> {
    let explicit_l = args
        .l
        .as_ref()
        .map(|spec| -> anyhow::Result<VertexSet> {
            spec.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|e| anyhow::anyhow!("bad vertex index '{part}': {e}"))
                })
                .collect()
        })
        .transpose()?;
    let mut records = Vec::new();
    for g in &graphs {
        let perron = match spectral_radius(g, args.io.tol) {
            Ok(p) => p,
            Err(err) => {
                eprintln!("kconn: {}: {err}", graph6::encode(g)?);
                status.failures = true;
                continue;
            }
        };
        let l = explicit_l.unwrap_or_else(|| top_coordinate_set(&perron, args.k as usize));
        let plan = match rewire_to_l(g, &l, args.k as usize) {
            Ok(p) => p,
            Err(err) => {
                eprintln!("kconn: {}: {err}", graph6::encode(g)?);
                status.failures = true;
                continue;
            }
        };
        let cert = certify_rayleigh_increase(g, &plan.result, &perron.vector)?;
        records.push(RewireRecord {
            graph6_before: graph6::encode(g)?,
            graph6_after: graph6::encode(&plan.result)?,
            k: args.k as usize,
            l: plan.l,
            v_common: plan.v_common,
            u: plan.u_set,
            step_terms: peel_step_terms(&plan, &perron.vector),
            steps: plan.steps,
            rho_before: cert.rho_before,
            rho_after: cert.rho_after,
            delta: cert.delta,
        });
    }
    emit_records(
        args.io.output,
        &records,
        "graph6_before\tgraph6_after\trho_before\trho_after\tdelta",
        |r| {
            format!(
                "{}\t{}\t{}\t{}\t{:.3e}",
                r.graph6_before,
                r.graph6_after,
                opt(&r.rho_before),
                opt(&r.rho_after),
                r.delta
            )
        },
    )
}
