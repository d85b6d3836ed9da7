//! The `rdfenum` command line: enumerate, count, extend, check, gen, bench.
//!
//! Exit codes: 0 for success / yes / minimal, 1 for no / not minimal, 2 for
//! usage errors (bad arguments, unreadable input, unsupported combinations).

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::extension::{extend, ExtensionInstance};
use crate::graph::{
    gen_c5_power, gen_complete, gen_cycle, gen_null, gen_path, gen_random, gen_star, Graph,
    GraphError, VertexSet,
};
use crate::oracle::{BruteOracle, OracleError, DEFAULT_CAP};
use crate::rdf::{check_conditions, Assignment, ModelError, Order};
use crate::refined::{enumerate_minimal_rdf_refined_with, RefinedOptions};
use crate::simple::{enumerate_minimal_rdf_simple, enumerate_po_minimal_simple};
use crate::stats::EnumStats;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rdfenum",
    version,
    about = "Extend and enumerate minimal Roman dominating functions"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every minimal rdf of a graph, one per line.
    Enumerate(EnumerateArgs),
    /// Print the number of minimal rdfs of a graph.
    Count(EnumOptions),
    /// Decide whether an assignment extends to a minimal rdf.
    Extend(ExtendArgs),
    /// Report which minimality conditions an assignment satisfies.
    Check(CheckArgs),
    /// Write a generated graph as an edge list.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run enumerators over a family of graphs and print CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Simple,
    Refined,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Standard,
    Po,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Order {
        match o {
            OrderArg::Standard => Order::Standard,
            OrderArg::Po => Order::Po,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StatsFormat {
    Json,
}

#[derive(Debug, Args)]
struct EnumOptions {
    /// Edge-list file ("-" for standard input).
    graph: String,
    #[arg(long, value_enum, default_value = "refined")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "standard")]
    order: OrderArg,
    /// Check search-node invariants while enumerating (refined mode).
    #[arg(long)]
    assert_invariants: bool,
    /// Largest order accepted by the brute-force oracle.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    opts: EnumOptions,
    /// Print the number of solutions instead of the solutions.
    #[arg(long)]
    count_only: bool,
    /// Print solutions in lexicographic order (buffers the output).
    #[arg(long)]
    sorted: bool,
    /// Write run statistics to standard error.
    #[arg(long, value_enum)]
    stats: Option<StatsFormat>,
}

#[derive(Debug, Args)]
struct ExtendArgs {
    graph: String,
    /// Assignment string over {0,1,2}, one character per vertex.
    assignment: String,
    /// Comma-separated vertices that must not become 2.
    #[arg(long, value_delimiter = ',')]
    forbidden: Vec<usize>,
    #[arg(long, value_enum, default_value = "standard")]
    order: OrderArg,
}

#[derive(Debug, Args)]
struct CheckArgs {
    graph: String,
    assignment: String,
    #[arg(long, value_enum, default_value = "standard")]
    order: OrderArg,
}

#[derive(Debug, Subcommand)]
enum GenFamily {
    /// Cycle C_k.
    Cycle {
        k: usize,
    },
    /// Star K_{1,rays} with center 0.
    Star {
        rays: usize,
    },
    /// Edgeless graph.
    Null {
        n: usize,
    },
    Path {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Disjoint union of c copies of C5.
    C5pow {
        c: usize,
    },
    /// G(n, p) random graph.
    Random {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BenchFamily {
    Cycle,
    Star,
    Null,
    Path,
    Complete,
    C5pow,
    Random,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(value_enum)]
    family: BenchFamily,
    /// First family parameter (inclusive).
    from: usize,
    /// Last family parameter (inclusive).
    to: usize,
    /// Comma-separated enumerator modes.
    #[arg(long, value_enum, value_delimiter = ',', required = true, num_args = 1..)]
    modes: Vec<Mode>,
    #[arg(long, value_enum, default_value = "standard")]
    order: OrderArg,
    /// Edge probability for the random family.
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Graph { path: String, source: GraphError },
    #[error(transparent)]
    Generate(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Extension(#[from] crate::extension::ExtensionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Enumerate(args) => cmd_enumerate(args, out, err),
        Command::Count(opts) => cmd_enumerate(
            EnumerateArgs {
                opts,
                count_only: true,
                sorted: false,
                stats: None,
            },
            out,
            err,
        ),
        Command::Extend(args) => cmd_extend(args, out),
        Command::Check(args) => cmd_check(args, out),
        Command::Gen { family } => {
            let g = match family {
                GenFamily::Cycle { k } => gen_cycle(k)?,
                GenFamily::Star { rays } => gen_star(rays)?,
                GenFamily::Null { n } => gen_null(n),
                GenFamily::Path { n } => gen_path(n),
                GenFamily::Complete { n } => gen_complete(n),
                GenFamily::C5pow { c } => gen_c5_power(c),
                GenFamily::Random { n, p, seed } => gen_random(n, p, seed)?,
            };
            out.write_all(g.to_edge_list().as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Bench(args) => cmd_bench(args, out),
    }
}

fn read_graph(path: &str) -> Result<Graph, CliError> {
    let mut text = String::new();
    let read = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|source| CliError::Read {
        path: path.to_string(),
        source,
    })?;
    Graph::parse_edge_list(&text).map_err(|source| CliError::Graph {
        path: path.to_string(),
        source,
    })
}

/// Runs one enumerator, feeding each solution to `sink`.
fn run_mode(
    g: &Graph,
    mode: Mode,
    order: Order,
    assert_invariants: bool,
    cap: usize,
    mut sink: impl FnMut(&Assignment),
) -> Result<EnumStats, CliError> {
    let stats = match (mode, order) {
        (Mode::Simple, Order::Standard) => enumerate_minimal_rdf_simple(g, sink),
        (Mode::Simple, Order::Po) => enumerate_po_minimal_simple(g, sink),
        (Mode::Refined, Order::Standard) => {
            let opts = RefinedOptions {
                assert_invariants,
                ..Default::default()
            };
            enumerate_minimal_rdf_refined_with(g, opts, sink)
        }
        (Mode::Refined, Order::Po) => {
            return Err(CliError::Unsupported(
                "refined mode supports only --order standard; use --mode simple for po".into(),
            ))
        }
        (Mode::Oracle, _) => {
            let oracle = BruteOracle::with_cap(g, order, cap)?;
            let all = oracle.minimal_rdfs();
            all.iter().for_each(&mut sink);
            EnumStats {
                solutions: all.len() as u64,
                ..Default::default()
            }
        }
    };
    Ok(stats)
}

fn cmd_enumerate(
    args: EnumerateArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let EnumerateArgs {
        opts,
        count_only,
        sorted,
        stats: stats_format,
    } = args;
    let g = read_graph(&opts.graph)?;
    let order = Order::from(opts.order);

    let start = Instant::now();
    let mut buffered = Vec::new();
    let mut write_error = None;
    let stats = run_mode(
        &g,
        opts.mode,
        order,
        opts.assert_invariants,
        opts.cap,
        |f| {
            if count_only || write_error.is_some() {
                return;
            }
            if sorted {
                buffered.push(f.to_string());
            } else if let Err(e) = writeln!(out, "{f}").and_then(|_| out.flush()) {
                write_error = Some(e);
            }
        },
    )?;
    let wall_ms = start.elapsed().as_millis() as u64;
    if let Some(e) = write_error {
        return Err(e.into());
    }

    if count_only {
        writeln!(out, "{}", stats.solutions)?;
    } else if sorted {
        buffered.sort();
        for line in &buffered {
            writeln!(out, "{line}")?;
        }
    }
    out.flush()?;

    if let Some(StatsFormat::Json) = stats_format {
        let json = serde_json::to_string(&stats.to_json(wall_ms)).expect("stats serialize");
        writeln!(err, "{json}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_extend(args: ExtendArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = read_graph(&args.graph)?;
    let f: Assignment = args.assignment.parse()?;
    let n = g.order();
    if let Some(&v) = args.forbidden.iter().find(|&&v| v >= n) {
        return Err(GraphError::OutOfRange { id: v, n }.into());
    }
    let forbidden = VertexSet::from_vertices(n, args.forbidden.iter().copied());
    let inst = ExtensionInstance::new(&g, f, forbidden)?;
    match extend(&inst, args.order.into()) {
        Some(witness) => {
            writeln!(out, "YES {witness}")?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "NO")?;
            Ok(EXIT_NO)
        }
    }
}

fn cmd_check(args: CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = read_graph(&args.graph)?;
    let f: Assignment = args.assignment.parse()?;
    f.check_order(&g)?;
    let order = Order::from(args.order);
    let report = check_conditions(&g, &f);

    let mut conditions = vec![("N[V2]∩V1", report.twos_avoid_ones)];
    if order == Order::Standard {
        conditions.push(("privacy condition", report.privacy));
    }
    conditions.push(("minimal dominating set", report.minimal_dominating));
    for (name, ok) in conditions {
        writeln!(out, "{name}: {}", if ok { "pass" } else { "FAIL" })?;
    }

    if report.minimal(order) {
        writeln!(out, "minimal")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "not minimal: {}", report.failures(order).join(", "))?;
        Ok(EXIT_NO)
    }
}

fn bench_graph(args: &BenchArgs, param: usize) -> Result<Graph, CliError> {
    Ok(match args.family {
        BenchFamily::Cycle => gen_cycle(param)?,
        BenchFamily::Star => gen_star(param)?,
        BenchFamily::Null => gen_null(param),
        BenchFamily::Path => gen_path(param),
        BenchFamily::Complete => gen_complete(param),
        BenchFamily::C5pow => gen_c5_power(param),
        BenchFamily::Random => gen_random(param, args.p, args.seed.wrapping_add(param as u64))?,
    })
}

fn cmd_bench(args: BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.from > args.to {
        return Err(CliError::Unsupported(format!(
            "empty range {}..={}",
            args.from, args.to
        )));
    }
    let order = Order::from(args.order);
    writeln!(out, "n,mode,solutions,tree_nodes,max_gap,wall_time")?;
    for param in args.from..=args.to {
        let g = bench_graph(&args, param)?;
        for &mode in &args.modes {
            let start = Instant::now();
            let stats = run_mode(&g, mode, order, false, args.cap, |_| {})?;
            let secs = start.elapsed().as_secs_f64();
            let name = mode.to_possible_value().expect("no skipped variants");
            writeln!(
                out,
                "{},{},{},{},{},{:.6}",
                g.order(),
                name.get_name(),
                stats.solutions,
                stats.tree_nodes,
                stats.max_gap,
                secs
            )?;
            out.flush()?;
        }
    }
    Ok(EXIT_OK)
}
