//! Command-line front end for closed-walk weight recovery.
//!
//! Every command writes to caller-supplied sinks and returns its exit code:
//! 0 for success or an affirmative answer, 1 for a negative answer (not
//! odometric, mismatch, rank deficient), 2 for usage and parse errors.

pub mod graph_file;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use odometry_core::oracle::{
    count_closed_nb_walks, default_cap, enumerate_closed_nb_walks, revealable_span,
};
use odometry_core::revealer::Doubling;
use odometry_core::{
    extract_minimal_basis, recover_weights, reveal_all, EdgeId, Graph, Odometer, Rational,
    RevealCertificate, RevealError, SolverError, VertexId, Violation, Walk, WalkMatrix,
    WeightedGraph,
};
use serde_json::{json, Value};
use thiserror::Error;

pub use graph_file::{format_graph, format_rational, parse_graph, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("start vertex {start} out of range for {vertex_count} vertices")]
    BadStart {
        start: VertexId,
        vertex_count: usize,
    },
    #[error("not odometric: {0}")]
    NotOdometric(Violation),
    #[error(transparent)]
    Reveal(#[from] RevealError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotOdometric(_) | CliError::Reveal(RevealError::NotOdometric(_)) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::BadStart { .. } => 2,
            CliError::Reveal(_) | CliError::Solver(_) | CliError::Output(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "odometry",
    version,
    about = "Recover edge weights from closed non-backtracking walk lengths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether every weight is recoverable from any start vertex
    Check { file: PathBuf },
    /// Print a certificate per edge in closed walks from the start vertex
    Reveal {
        file: PathBuf,
        #[arg(long)]
        start: VertexId,
        /// Also print a measuring set of exactly |E| walks
        #[arg(long)]
        minimal: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Measure a minimal walk set with hidden weights and solve for them
    Recover {
        file: PathBuf,
        #[arg(long)]
        start: VertexId,
        /// Write each measured walk and its reading to this file
        #[arg(long)]
        oracle_transcript: Option<PathBuf>,
    },
    /// Exhaustively examine closed walks from the start vertex
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        start: VertexId,
        /// Longest walk, in edges (default 2|E|+3)
        #[arg(long)]
        max_len: Option<usize>,
        /// Print every walk
        #[arg(long)]
        list: bool,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Check { file } => load(&file).and_then(|g| cmd_check(&g, out)),
        Command::Reveal {
            file,
            start,
            minimal,
            format,
        } => load(&file).and_then(|g| cmd_reveal(&g, start, minimal, format, out)),
        Command::Recover {
            file,
            start,
            oracle_transcript,
        } => load(&file).and_then(|g| cmd_recover(&g, start, oracle_transcript.as_deref(), out)),
        Command::Enumerate {
            file,
            start,
            max_len,
            list,
        } => load(&file).and_then(|g| cmd_enumerate(g.graph(), start, max_len, list, out)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn load(path: &Path) -> Result<WeightedGraph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_graph(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn check_start(g: &Graph, start: VertexId) -> Result<(), CliError> {
    if start >= g.vertex_count() {
        return Err(CliError::BadStart {
            start,
            vertex_count: g.vertex_count(),
        });
    }
    Ok(())
}

fn require_odometric(g: &Graph) -> Result<(), CliError> {
    match g.odometric_violation() {
        Some(v) => Err(CliError::NotOdometric(v)),
        None => Ok(()),
    }
}

fn edge_label(g: &Graph, e: EdgeId) -> String {
    let (u, v) = g.edge(e);
    format!("{{{u},{v}}}")
}

pub fn cmd_check(g: &WeightedGraph, out: &mut impl Write) -> Result<i32, CliError> {
    let graph = g.graph();
    writeln!(out, "vertices {}", graph.vertex_count())?;
    writeln!(out, "edges {}", graph.edge_count())?;
    writeln!(
        out,
        "connected {}",
        if graph.is_connected() { "yes" } else { "no" }
    )?;
    match graph.min_degree() {
        Some(d) => writeln!(out, "minimum degree {d}")?,
        None => writeln!(out, "minimum degree none")?,
    }
    match graph.odometric_violation() {
        None => {
            writeln!(out, "ODOMETRIC")?;
            Ok(0)
        }
        Some(v) => {
            writeln!(out, "NOT ODOMETRIC ({v})")?;
            let low = graph.low_degree_vertices();
            if !low.is_empty() {
                let list: Vec<String> = low.iter().map(|(v, d)| format!("{v}:{d}")).collect();
                writeln!(out, "low-degree vertices {}", list.join(" "))?;
            }
            Ok(1)
        }
    }
}

/// JSON integer when it fits in `i64`, decimal string otherwise.
fn json_int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn certificate_json(g: &Graph, e: EdgeId, cert: &RevealCertificate) -> Value {
    let (u, v) = g.edge(e);
    let terms: Vec<Value> = cert
        .terms
        .iter()
        .map(|t| json!({ "c": json_int(&t.coefficient), "walk": t.walk.vertices() }))
        .collect();
    json!({
        "edge": e,
        "endpoints": [u, v],
        "c_e": json_int(&cert.target_coefficient),
        "terms": terms,
    })
}

pub fn cmd_reveal(
    g: &WeightedGraph,
    start: VertexId,
    minimal: bool,
    format: Format,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    let graph = g.graph();
    check_start(graph, start)?;
    require_odometric(graph)?;
    let certificates = reveal_all(graph, start)?.flattened()?;
    let basis = if minimal {
        Some(extract_minimal_basis(graph, &certificates)?)
    } else {
        None
    };
    let rank = basis
        .as_ref()
        .map(|b| WalkMatrix::build(graph, b).map(|m| m.rank()))
        .transpose()?;

    match format {
        Format::Json => {
            let mut doc = json!({
                "start": start,
                "edge_count": graph.edge_count(),
                "certificates": certificates
                    .iter()
                    .map(|(&e, c)| certificate_json(graph, e, c))
                    .collect::<Vec<_>>(),
            });
            if let (Some(basis), Some(rank)) = (&basis, rank) {
                doc["basis"] = json!({
                    "rank": rank,
                    "walks": basis.iter().map(Walk::vertices).collect::<Vec<_>>(),
                });
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("json values serialize")
            )?;
        }
        Format::Text => {
            writeln!(out, "start {start}")?;
            for (&e, cert) in &certificates {
                writeln!(
                    out,
                    "edge {e} {} c_e {}",
                    edge_label(graph, e),
                    cert.target_coefficient
                )?;
                for t in &cert.terms {
                    writeln!(out, "  {} {}", t.coefficient, t.walk)?;
                }
            }
            if let (Some(basis), Some(rank)) = (&basis, rank) {
                writeln!(
                    out,
                    "basis {} walks rank {rank} of {}",
                    basis.len(),
                    graph.edge_count()
                )?;
                for w in basis {
                    writeln!(out, "  {w}")?;
                }
            }
        }
    }
    Ok(0)
}

/// Everything one run of the measure-and-solve loop produced.
#[derive(Debug, Clone)]
pub struct ClosedLoopReport {
    pub start: VertexId,
    /// Flattened certificates per edge.
    pub certificates: BTreeMap<EdgeId, RevealCertificate>,
    /// Doubling identities used while building the certificates.
    pub doublings: Vec<Doubling>,
    pub basis: Vec<Walk>,
    pub measurements: Vec<Rational>,
    pub recovered: Vec<Rational>,
    pub query_count: u64,
}

/// Builds certificates, extracts a measuring set, asks an odometer holding
/// `hidden` for each reading and solves. The solver only ever sees the
/// topology and the readings.
pub fn recover_closed_loop(
    hidden: &WeightedGraph,
    start: VertexId,
) -> Result<ClosedLoopReport, CliError> {
    let topology = hidden.graph().clone();
    check_start(&topology, start)?;
    require_odometric(&topology)?;
    let mut odometer = Odometer::new(hidden.clone(), start);

    let revelation = reveal_all(&topology, start)?;
    let certificates = revelation.flattened()?;
    let basis = extract_minimal_basis(&topology, &certificates)?;
    let measurements = basis
        .iter()
        .map(|w| {
            odometer
                .measure(w)
                .expect("basis walks are closed walks from the start")
        })
        .collect::<Vec<_>>();
    let recovered = recover_weights(&topology, &basis, &measurements)?;
    Ok(ClosedLoopReport {
        start,
        certificates,
        doublings: revelation.doublings,
        basis,
        measurements,
        recovered,
        query_count: odometer.query_count(),
    })
}

pub fn cmd_recover(
    g: &WeightedGraph,
    start: VertexId,
    transcript: Option<&Path>,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    let report = recover_closed_loop(g, start)?;
    if let Some(path) = transcript {
        let mut text = String::new();
        for (w, m) in report.basis.iter().zip(&report.measurements) {
            text.push_str(&format!("{w} {}\n", format_rational(m)));
        }
        fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    let graph = g.graph();
    let mut exact = true;
    for (e, got) in report.recovered.iter().enumerate() {
        let truth = g.weight(e);
        exact &= got == truth;
        writeln!(
            out,
            "edge {e} {} recovered {} true {}",
            edge_label(graph, e),
            format_rational(got),
            format_rational(truth)
        )?;
    }
    writeln!(out, "queries {}", report.query_count)?;
    writeln!(out, "{}", if exact { "EXACT MATCH" } else { "MISMATCH" })?;
    Ok(if exact { 0 } else { 1 })
}

pub fn cmd_enumerate(
    g: &Graph,
    start: VertexId,
    max_len: Option<usize>,
    list: bool,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    check_start(g, start)?;
    let cap = max_len.unwrap_or_else(|| default_cap(g));
    if list {
        for w in enumerate_closed_nb_walks(g, start, cap) {
            writeln!(out, "{w}")?;
        }
    }
    writeln!(
        out,
        "closed walks {} up to {cap} edges",
        count_closed_nb_walks(g, start, cap)
    )?;
    let span = revealable_span(g, start, cap);
    writeln!(out, "rank {} of {}", span.rank, span.edge_count)?;
    if span.is_full_rank() {
        writeln!(out, "all weights observable")?;
        return Ok(0);
    }
    if span.rank == 1 {
        writeln!(out, "only cycle multiples observable")?;
    }
    for class in &span.identical_rows {
        let labels: Vec<String> = class.iter().map(|&e| edge_label(g, e)).collect();
        writeln!(out, "identical rows {}", labels.join(" "))?;
    }
    if !span.zero_rows.is_empty() {
        let labels: Vec<String> = span.zero_rows.iter().map(|&e| edge_label(g, e)).collect();
        writeln!(out, "never traversed {}", labels.join(" "))?;
    }
    for direction in &span.unobservable {
        let parts: Vec<String> = direction
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(e, c)| format!("{c}*w{}", edge_label(g, e)))
            .collect();
        writeln!(out, "unobservable direction {}", parts.join(" + "))?;
    }
    if g.min_degree().is_some_and(|d| d >= 3) && g.is_connected() {
        writeln!(out, "cap too small")?;
    }
    Ok(1)
}
