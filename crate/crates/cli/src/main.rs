use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rgc_core::cache;
use rgc_core::complex::{cohomology, differential_matrix, CohomologyRequest, Grading, Sector, Splitting};
use rgc_core::derivation::es_trace;
use rgc_core::enumerate::Selector;
use rgc_core::format::{
    graph_to_json, graph_to_text, necklace_to_json, parse_derivation, parse_graph, parse_necklace_list, tensor_to_json,
};
use rgc_core::state_sum::rho_eval;
use rgc_core::verify::{run_suite, Suite};
use rgc_core::Error;

/// Ribbon graph complexes, necklace operations and symplectic derivations.
#[derive(Parser)]
#[command(name = "rgc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the nonzero isomorphism classes of a slice.
    Enumerate(EnumerateArgs),
    /// Print the differential matrix out of the (V, E) slice.
    Diff(DiffArgs),
    /// Cohomology dimension of a finite slice.
    Cohomology(CohomologyArgs),
    /// Trace of a derivation given as JSON.
    Trace {
        #[arg(long)]
        input: PathBuf,
    },
    /// Evaluate a graph on necklace inputs with the state sum.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        inputs: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GradingArg {
    Vertex,
    Degree,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    d: u8,
    #[arg(long, required_unless_present = "genus")]
    vertices: Option<i64>,
    #[arg(long)]
    edges: i64,
    #[arg(long, requires = "boundaries")]
    genus: Option<i64>,
    #[arg(long, requires = "genus")]
    boundaries: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args)]
struct DiffArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    d: u8,
    /// Source slice as "V,E".
    #[arg(long, value_parser = parse_pair)]
    from: (i64, i64),
    /// Also sum over splittings that leave a new vertex univalent.
    #[arg(long)]
    empty_arcs: bool,
}

#[derive(Args)]
struct CohomologyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    d: u8,
    /// Vertex count; one report is printed per edge count in the range.
    #[arg(long, conflicts_with = "genus", required_unless_present = "genus")]
    vertices: Option<i64>,
    #[arg(long, requires = "boundaries")]
    genus: Option<usize>,
    #[arg(long, requires = "genus")]
    boundaries: Option<usize>,
    /// Inclusive edge range "LO..HI".
    #[arg(long, value_parser = parse_range)]
    edges: (usize, usize),
    #[arg(long, value_enum)]
    grading: GradingArg,
    #[arg(long, allow_hyphen_values = true)]
    degree: i64,
    #[arg(long)]
    allow_truncation: bool,
    #[arg(long)]
    empty_arcs: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected \"V,E\"")?;
    Ok((a.trim().parse().map_err(|_| "bad V")?, b.trim().parse().map_err(|_| "bad E")?))
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected \"LO..HI\"")?;
    let (lo, hi) = (a.parse().map_err(|_| "bad LO")?, b.parse().map_err(|_| "bad HI")?);
    if lo > hi {
        return Err("LO must not exceed HI".into());
    }
    Ok((lo, hi))
}

fn splitting(empty_arcs: bool) -> Splitting {
    if empty_arcs {
        Splitting::WithEmptyArcs
    } else {
        Splitting::Proper
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    print_line(&serde_json::to_string_pretty(v).expect("values serialize"));
}

/// Prints to stdout, exiting quietly when the reader has gone away.
fn print_line(s: &str) {
    if writeln!(std::io::stdout().lock(), "{s}").is_err() {
        std::process::exit(0);
    }
}

fn enumerate_cmd(a: &EnumerateArgs) -> Result<(), Error> {
    let selector = match (a.genus, a.boundaries) {
        (Some(g), Some(b)) => {
            let s = Selector::sector(g, b, a.edges);
            let (v, _) = s.vertices_edges()?;
            if let Some(n) = a.vertices.filter(|&n| n != v as i64) {
                return Err(Error::SelectorMismatch(format!(
                    "genus {g} and {b} boundaries force {v} vertices, not {n}"
                )));
            }
            s
        }
        _ => Selector::shape(a.vertices.expect("required by clap"), a.edges),
    };
    let basis = cache::basis(selector, a.d)?;
    match a.format {
        OutputFormat::Text => basis.classes().iter().for_each(|g| print_line(&graph_to_text(g))),
        OutputFormat::Json => print_json(&json!({
            "d": a.d,
            "selector": selector,
            "count": basis.len(),
            "classes": basis.classes().iter().map(graph_to_json).collect::<Vec<_>>(),
        })),
    }
    Ok(())
}

fn diff_cmd(a: &DiffArgs) -> Result<(), Error> {
    let from = Selector::shape(a.from.0, a.from.1);
    let src = cache::basis(from, a.d)?;
    let dst = cache::basis(from.next(), a.d)?;
    let m = differential_matrix(&src, &dst, splitting(a.empty_arcs))?;
    let (rows, cols) = m.shape();
    print_json(&json!({
        "d": a.d,
        "from": [a.from.0, a.from.1],
        "to": [a.from.0 + 1, a.from.1 + 1],
        "rows": rows,
        "cols": cols,
        "rank": cache::image_rank(&src, splitting(a.empty_arcs))?,
        "source": src.classes().iter().map(graph_to_text).collect::<Vec<_>>(),
        "target": dst.classes().iter().map(graph_to_text).collect::<Vec<_>>(),
        "entries": m.entries().iter().map(|(i, j, c)| json!([i, j, c.to_string()])).collect::<Vec<_>>(),
    }));
    Ok(())
}

fn cohomology_cmd(a: &CohomologyArgs) -> Result<(), Error> {
    let grading = match a.grading {
        GradingArg::Vertex => Grading::Vertex,
        GradingArg::Degree => Grading::Degree,
    };
    let request = |sector, edge_range| CohomologyRequest {
        d: a.d,
        sector,
        grading,
        degree: a.degree,
        edge_range,
        allow_truncation: a.allow_truncation,
        splitting: splitting(a.empty_arcs),
    };
    match (a.genus, a.boundaries, a.vertices) {
        (Some(g), Some(n), _) => {
            let report = cohomology(&request(Sector::GenusBoundaries { g, n }, a.edges))?;
            print_json(&serde_json::to_value(report)?);
        }
        (_, _, Some(v)) => {
            if a.grading != GradingArg::Vertex || v != a.degree {
                return Err(Error::InvalidSelector(format!(
                    "--vertices {v} needs --grading vertex --degree {v}; use --genus/--boundaries for degree grading"
                )));
            }
            let reports = (a.edges.0..=a.edges.1)
                .map(|e| cohomology(&request(Sector::Edges { e }, a.edges)).and_then(|r| Ok(serde_json::to_value(r)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            print_json(&Value::Array(reports));
        }
        _ => unreachable!("clap requires a sector"),
    }
    Ok(())
}

/// Returns whether every requested check passed.
fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Enumerate(a) => enumerate_cmd(&a)?,
        Command::Diff(a) => diff_cmd(&a)?,
        Command::Cohomology(a) => cohomology_cmd(&a)?,
        Command::Trace { input } => {
            let d = parse_derivation(&read(&input)?)?;
            print_json(&necklace_to_json(&es_trace(&d)?));
        }
        Command::Eval { graph, inputs } => {
            let g = parse_graph(&read(&graph)?)?;
            let inputs = parse_necklace_list(&read(&inputs)?)?;
            print_json(&tensor_to_json(&rho_eval(&g, &inputs)?));
        }
        Command::Verify { suite } => {
            let report = run_suite(suite, &mut |id, t| eprintln!("{id}: {t:.2?}"))?;
            print_json(&serde_json::to_value(&report)?);
            return Ok(report.passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(2)
        }
    }
}
