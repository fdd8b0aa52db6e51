//! `avgconn`: exact statistics and verification for connected induced
//! subgraphs ("connected sets") of small graphs.
//!
//! Subcommands either inspect input graphs (`stats`, `local`, `tree`,
//! `aux`) or sweep a whole order (`verify`, `scan`, `conjecture`). All
//! arithmetic is exact; decimals in the output are presentation only.
//!
//! Exit status: 0 when every check passes, 1 when a verification
//! violation was found (the violating instance is printed), 2 on usage,
//! parse, or capacity errors.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use avgconn_core::aux::{build_aux_digraph, AuxOptions};
use avgconn_core::canon::{generate_connected_graphs, read_graph6_lines};
use avgconn_core::connected::{self, LocalStats};
use avgconn_core::error::Error;
use avgconn_core::graph::{Graph, VertexSet};
use avgconn_core::num::rational::BigRational;
use avgconn_core::num::BigUint;
use avgconn_core::ratio::render;
use avgconn_core::scan::{self, ScanReport};
use avgconn_core::tree;

#[derive(Parser)]
#[command(
    name = "avgconn",
    version,
    about = "Exact connected-set statistics and verification for small graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count and average order of the connected sets of each input graph
    ///
    /// Prints `N=<count> total=<summed order> A=<average>` for each graph,
    /// in input order.
    Stats {
        #[command(flatten)]
        input: InputArgs,
    },

    /// Counts and averages of the connected sets through each vertex
    Local {
        #[command(flatten)]
        input: InputArgs,
        /// Report a single vertex instead of all of them
        #[arg(long)]
        vertex: Option<usize>,
    },

    /// Exact statistics for trees via subtree dynamic programming
    ///
    /// Reads a tree from `--in`/`--edges`, or, with `--n`, evaluates the
    /// path closed form N = n(n+1)/2, total = C(n+2,3), A = (n+2)/3
    /// without building the graph.
    Tree {
        #[command(flatten)]
        input: InputArgs,
        /// Path order for the closed form (instead of a tree input)
        #[arg(long, conflicts_with_all = ["input", "edges"])]
        n: Option<usize>,
        /// Report the subtrees through this vertex instead
        #[arg(long, conflicts_with = "n")]
        vertex: Option<usize>,
    },

    /// Build and verify the red/blue growth digraph of one graph
    ///
    /// The input must be connected with diameter between 2 and n-2.
    /// Checks the successor rules, the monochromatic path accounting, and
    /// every average-length bound; `--component V --dump` prints the full
    /// node and edge listing of one weak component instead.
    Aux {
        #[command(flatten)]
        input: InputArgs,
        /// Component to dump: a vertex, or a comma-separated vertex set
        #[arg(long, value_name = "SET", requires = "dump")]
        component: Option<String>,
        /// Print the selected component's node and edge listing
        #[arg(long, requires = "component")]
        dump: bool,
    },

    /// Check every bound on all connected graphs of one order
    ///
    /// Verifies the global average bound (n+2)/3 with its unique path
    /// minimizer, the per-vertex bound (n+1)/2, the endpoint witness
    /// bound 2N(G)/(n+1), and the growth-digraph structure and averages.
    /// Exits 1 with the violating graphs printed if anything fails.
    Verify(ScanArgs),

    /// Tabulate exact statistics for all connected graphs of one order
    Scan(ScanArgs),

    /// Findings over graphs of minimum degree three
    ///
    /// Reports the margin min A(G) - n/2 (a finding, never asserted),
    /// and checks the complete-graph closed form and the density cap for
    /// vertex-transitive cubic graphs.
    Conjecture(ScanArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file, parsed per --format
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,

    /// Edge-list input file; shorthand for `--in FILE --format edges`
    #[arg(long, value_name = "FILE", conflicts_with_all = ["input", "format"])]
    edges: Option<PathBuf>,

    /// How to parse the --in file
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One graph6-encoded graph per line
    Graph6,
    /// A single graph: first line the order, then one `u v` line per edge
    Edges,
}

#[derive(Args)]
struct ScanArgs {
    /// Graph order; all connected graphs of this order are enumerated
    /// unless --in supplies a corpus
    #[arg(long)]
    n: Option<usize>,

    /// Graph corpus to scan (graph6 lines) instead of enumerating;
    /// checked against --n, or against the first graph's order
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,

    /// Worker threads for the scan (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,

    /// Write the report to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Report format
    #[arg(long, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Emit {
    /// Human-readable summary
    Text,
    /// Per-graph rows under a fixed header
    Csv,
    /// Full report: rows, violations, notes
    Json,
}

#[derive(Copy, Clone)]
enum ScanKind {
    Verify,
    Table,
    Conjecture,
}

enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Core(Error),
    /// A verification violation tied to one instance; exits 1.
    Violation {
        graph6: String,
        source: Error,
    },
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Violation { .. } => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Violation { graph6, source } => {
                write!(f, "verification violation in {graph6}: {source}")
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("avgconn: {e}");
            e.exit_code()
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Stats { input } => cmd_stats(&input),
        Command::Local { input, vertex } => cmd_local(&input, vertex),
        Command::Tree { input, n, vertex } => cmd_tree(&input, n, vertex),
        Command::Aux { input, component, dump } => cmd_aux(&input, component.as_deref(), dump),
        Command::Verify(args) => cmd_scan_family(&args, ScanKind::Verify),
        Command::Scan(args) => cmd_scan_family(&args, ScanKind::Table),
        Command::Conjecture(args) => cmd_scan_family(&args, ScanKind::Conjecture),
    }
}

fn read_graphs(input: &InputArgs) -> Result<Vec<Graph>, CliError> {
    let (path, format) = match (&input.input, &input.edges) {
        (Some(p), None) => (p, input.format),
        (None, Some(p)) => (p, Format::Edges),
        (None, None) => {
            return Err(CliError::Usage(
                "an input graph is required: pass --in FILE (graph6) or --edges FILE".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("--in conflicts with --edges"),
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
    let graphs = match format {
        Format::Graph6 => read_graph6_lines(&text)?,
        Format::Edges => vec![Graph::from_edge_list(&text)?],
    };
    if graphs.is_empty() {
        return Err(CliError::Usage(format!("{}: no graphs in input", path.display())));
    }
    Ok(graphs)
}

fn print_stats_line(count: &BigUint, total: &BigUint, average: &BigRational) {
    println!("N={count} total={total} A={}", render(average));
}

fn cmd_stats(input: &InputArgs) -> Result<ExitCode, CliError> {
    for g in read_graphs(input)? {
        let stats = connected::stats(&g)?;
        print_stats_line(&stats.count, &stats.total_order, &stats.average());
    }
    Ok(ExitCode::SUCCESS)
}

fn print_local_line(row: &LocalStats) {
    println!(
        "v={} N={} total={} A={}",
        row.vertex,
        row.count,
        row.total_order,
        render(&row.average())
    );
}

fn pick_vertex<T>(rows: &[T], v: usize, n: usize) -> Result<&T, CliError> {
    rows.get(v).ok_or(CliError::Core(Error::VertexOutOfRange { vertex: v, n }))
}

fn cmd_local(input: &InputArgs, vertex: Option<usize>) -> Result<ExitCode, CliError> {
    for g in read_graphs(input)? {
        let rows = connected::local_stats_all(&g)?;
        match vertex {
            Some(v) => print_local_line(pick_vertex(&rows, v, g.n())?),
            None => rows.iter().for_each(print_local_line),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tree(
    input: &InputArgs,
    n: Option<usize>,
    vertex: Option<usize>,
) -> Result<ExitCode, CliError> {
    if let Some(n) = n {
        let stats = tree::path_closed_form(n)?;
        print_stats_line(&stats.count, &stats.total_order, &stats.average());
        return Ok(ExitCode::SUCCESS);
    }
    for g in read_graphs(input)? {
        match vertex {
            Some(v) => {
                let rows = tree::tree_local_stats_all(&g)?;
                print_local_line(pick_vertex(&rows, v, g.n())?);
            }
            None => {
                let stats = tree::tree_stats(&g)?;
                print_stats_line(&stats.count, &stats.total_order, &stats.average());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_component(spec: &str, n: usize) -> Result<VertexSet, CliError> {
    let mut set = VertexSet::EMPTY;
    for part in spec.split(',') {
        let v: usize = part.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "--component expects a vertex or a comma-separated vertex set, got {spec:?}"
            ))
        })?;
        if v >= n {
            return Err(CliError::Core(Error::VertexOutOfRange { vertex: v, n }));
        }
        set = set.insert(v);
    }
    Ok(set)
}

/// Wraps verification failures with the instance they occurred in, so
/// they exit 1 rather than 2.
fn check<T>(graph6: &str, result: avgconn_core::error::Result<T>) -> Result<T, CliError> {
    result.map_err(|e| match e {
        Error::AuxViolation { .. } | Error::ClaimViolation { .. } => {
            CliError::Violation { graph6: graph6.to_string(), source: e }
        }
        other => CliError::Core(other),
    })
}

fn cmd_aux(input: &InputArgs, component: Option<&str>, dump: bool) -> Result<ExitCode, CliError> {
    let graphs = read_graphs(input)?;
    let [g] = graphs.as_slice() else {
        return Err(CliError::Usage(format!(
            "aux expects exactly one input graph, found {}",
            graphs.len()
        )));
    };
    let digraph = build_aux_digraph(g, &AuxOptions::default())?;

    if let Some(spec) = component {
        debug_assert!(dump, "clap enforces --component with --dump");
        let set = parse_component(spec, g.n())?;
        print!("{}", digraph.dump_component(set)?);
        return Ok(ExitCode::SUCCESS);
    }

    let graph6 = g.to_graph6().unwrap_or_else(|_| format!("<order {}>", g.n()));
    let structure = check(&graph6, digraph.verify_structure())?;
    let (_, mu) = check(&graph6, digraph.classify_tops())?;
    let claims = check(&graph6, digraph.verify_claims())?;

    let path = digraph.path();
    let path_vertices: Vec<String> = path.vertices().iter().map(ToString::to_string).collect();
    println!("graph: n={} m={}", g.n(), g.edge_count());
    println!("path: {} (length {})", path_vertices.join(" "), path.length());
    println!("nodes: {}", digraph.node_count());
    println!(
        "red: {} paths, {} edges, mu = {}",
        structure.red_paths,
        structure.red_edges,
        render(&structure.mu_red)
    );
    println!(
        "blue: {} paths, {} edges, mu = {}",
        structure.blue_paths,
        structure.blue_edges,
        render(&structure.mu_blue)
    );
    println!(
        "tops: {} ({} red, {} blue; {} high, {} low, {} normal)",
        mu.top_count, mu.red_count, mu.blue_count, mu.high_count, mu.low_count, mu.normal_count
    );
    println!(
        "average path length: {} < {} = (n-1)/2",
        render(&claims.mu_all),
        render(&claims.strict_bound)
    );
    println!(
        "checks: structure PASS; claims PASS ({} sets meeting the path, {} off-path \
         sets, {} buckets, {} extensions)",
        claims.meeting_path_sets, claims.off_path_sets, claims.xy_buckets, claims.extension_sets
    );
    Ok(ExitCode::SUCCESS)
}

fn scan_corpus(args: &ScanArgs) -> Result<(Vec<Graph>, usize), CliError> {
    match (&args.input, args.n) {
        (Some(path), declared) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
            let graphs = read_graph6_lines(&text)?;
            let n = match declared {
                Some(n) => n,
                None => graphs.first().map(Graph::n).ok_or_else(|| {
                    CliError::Usage(format!("{}: no graphs in input", path.display()))
                })?,
            };
            Ok((graphs, n))
        }
        (None, Some(n)) => Ok((generate_connected_graphs(n)?, n)),
        (None, None) => Err(CliError::Usage(
            "pass --n ORDER to enumerate, or --in FILE to scan a corpus".into(),
        )),
    }
}

/// The verify subcommand runs both scans over the same corpus; their rows
/// agree, so keep one copy and concatenate findings (input rejections
/// fire in both scans and are deduplicated).
fn merge_reports(theorem: ScanReport, lemmas: ScanReport) -> ScanReport {
    let mut merged = theorem;
    let mut seen: BTreeSet<(String, String, String)> = merged
        .violations
        .iter()
        .map(|v| (v.graph6.clone(), v.rule.clone(), v.detail.clone()))
        .collect();
    for v in lemmas.violations {
        if seen.insert((v.graph6.clone(), v.rule.clone(), v.detail.clone())) {
            merged.violations.push(v);
        }
    }
    merged.notes.extend(lemmas.notes);
    merged
}

fn is_path_graph6(graph6: &str) -> bool {
    Graph::from_graph6(graph6)
        .and_then(|g| g.diametral_path().map(|p| p.length() == g.n() - 1))
        .unwrap_or(false)
}

fn verify_summary(report: &ScanReport) -> String {
    let fails = |prefixes: &[&str]| {
        report.violations.iter().any(|v| prefixes.iter().any(|p| v.rule.starts_with(p)))
    };
    let status = |failed: bool| if failed { "FAIL" } else { "PASS" };

    let minimizer = match (&report.min_average, report.minimizers.as_slice()) {
        (Some(min), [single]) if is_path_graph6(single) => {
            format!("unique minimizer = path (A={})", render(min))
        }
        (Some(min), list) => {
            format!("minimum A = {} at {}", render(min), list.join(" "))
        }
        (None, _) => "no graphs scanned".to_string(),
    };
    let rejected = report
        .violations
        .iter()
        .filter(|v| ["wrong-order", "disconnected", "capacity"].contains(&v.rule.as_str()))
        .count();
    let mut line = format!(
        "{} graph{}; global average bound {}; {}; local average bound {}; witness \
         bound {}; digraph checks {}",
        report.graphs_checked,
        if report.graphs_checked == 1 { "" } else { "s" },
        status(fails(&["global-average"])),
        minimizer,
        status(fails(&["local-average"])),
        status(fails(&["witness"])),
        status(fails(&["aux-"])),
    );
    if rejected > 0 {
        line.push_str(&format!("; {rejected} inputs rejected"));
    }
    line.push('\n');
    line
}

fn text_report(report: &ScanReport, kind: ScanKind) -> String {
    let mut out = String::new();
    match kind {
        ScanKind::Verify => out.push_str(&verify_summary(report)),
        ScanKind::Table => {
            let plural = if report.graphs_checked == 1 { "" } else { "s" };
            match &report.min_average {
                Some(min) => out.push_str(&format!(
                    "order {}: {} graph{plural}; min A = {} at {}\n",
                    report.n,
                    report.graphs_checked,
                    render(min),
                    report.minimizers.join(" ")
                )),
                None => out.push_str(&format!(
                    "order {}: {} graph{plural}\n",
                    report.n, report.graphs_checked
                )),
            }
            for row in &report.rows {
                out.push_str(&format!(
                    "{} N={} total={} A={}\n",
                    row.graph6,
                    row.count,
                    row.total,
                    render(&row.average)
                ));
            }
        }
        ScanKind::Conjecture => out.push_str(&format!(
            "order {}: {} graph{} of minimum degree 3\n",
            report.n,
            report.graphs_checked,
            if report.graphs_checked == 1 { "" } else { "s" }
        )),
    }
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    for v in &report.violations {
        out.push_str(&format!("violation [{}] {}: {}\n", v.rule, v.graph6, v.detail));
    }
    out
}

fn cmd_scan_family(args: &ScanArgs, kind: ScanKind) -> Result<ExitCode, CliError> {
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    }
    let (graphs, n) = scan_corpus(args)?;
    let report = match kind {
        ScanKind::Verify => {
            let theorem = scan::scan_theorem(&graphs, n);
            let lemmas = scan::scan_lemmas(&graphs, n);
            merge_reports(theorem, lemmas)
        }
        ScanKind::Table => scan::scan_theorem(&graphs, n),
        ScanKind::Conjecture => scan::scan_conjectures(&graphs, n),
    };

    let body = match args.emit {
        Emit::Text => text_report(&report, kind),
        Emit::Csv => scan::to_csv_string(&report),
        Emit::Json => scan::to_json_string(&report),
    };
    match &args.out {
        Some(path) => fs::write(path, &body).map_err(|e| CliError::Io(path.clone(), e))?,
        None => print!("{body}"),
    }

    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        // The text and JSON bodies carry the violations; repeat them on
        // stderr when the body went to a file or was rows-only CSV.
        if args.out.is_some() || args.emit == Emit::Csv {
            for v in &report.violations {
                eprintln!("violation [{}] {}: {}", v.rule, v.graph6, v.detail);
            }
        }
        eprintln!("avgconn: {} violations at order {}", report.violations.len(), report.n);
        Ok(ExitCode::from(1))
    }
}
