//! `hermspec`: spectra, certificates, constructions and searches for
//! Hermitian adjacency matrices of mixed graphs.
//!
//! Exit codes: 0 on success, 1 when a certificate is "no" under
//! `--expect-yes` or a reproduction check fails, 2 on usage, input or
//! operation errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hermspec_core::certify::{
    certify_signed_two_ev, certify_three_ev_tournament, certify_two_ev, certify_two_ev_float,
    Certificate,
};
use hermspec_core::constructions::{
    huang_oriented_hypercube, huang_signed_hypercube, named_graph, named_underlying,
    oriented_to_signed, paley_skew_hadamard, signed_to_oriented, tournament_from_skew_hadamard,
    NAMED_GRAPHS,
};
use hermspec_core::cyclotomic::{build_float_h, Order, RootOfUnity};
use hermspec_core::graph::{
    encode_digraph6, parse_graph_text, to_mixed_text, to_signed_text, GraphText, MixedGraph,
    OrientedGraph, SignedGraph, SimpleGraph,
};
use hermspec_core::reproduce::{Reproduction, Scale, Status};
use hermspec_core::search::{
    search_mixed_orientations, search_orientations, search_signings, Filter, HitGraph,
    SearchOptions, SearchReport,
};
use hermspec_core::spectra::{ComplexMatrix, Spectrum, DEFAULT_CLUSTER_TOL};
use serde::Serialize;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hermspec", version, about = "Spectra of Hermitian adjacency matrices of mixed graphs")]
struct Cli {
    /// Print machine-readable JSON only.
    #[arg(long, global = true)]
    json: bool,
    /// Eigenvalue clustering tolerance for the float paths.
    #[arg(long, global = true, default_value_t = DEFAULT_CLUSTER_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and clusters of H for a graph file or named graph.
    Spectrum {
        /// Graph file, `-` for stdin, or a named graph.
        input: String,
        /// Order of the root of unity (ignored for signed graphs).
        #[arg(long, default_value_t = 6)]
        k: u32,
    },
    /// Decide whether H has exactly two distinct eigenvalues.
    Certify {
        input: String,
        #[arg(long, default_value_t = 6)]
        k: u32,
        /// Test a regular tournament against the three-eigenvalue formula
        /// instead.
        #[arg(long)]
        three_ev: bool,
        /// Exit with status 1 unless the verdict is yes.
        #[arg(long)]
        expect_yes: bool,
    },
    /// Build a named graph, a Paley skew-Hadamard matrix, its tournament or
    /// a signed hypercube.
    Construct {
        #[command(subcommand)]
        what: Construction,
        #[arg(long, value_enum, global = true, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Scan every orientation, mixed orientation or signing of a graph.
    Search {
        /// Named underlying graph (K6, C4, Q3, K3,3, K55-M, ...) or a graph
        /// file whose underlying graph is used.
        underlying: String,
        #[arg(long, value_enum, default_value_t = Mode::Oriented)]
        mode: Mode,
        #[arg(long, default_value_t = 6)]
        k: u32,
        #[arg(long, value_enum, default_value_t = FilterKind::TwoEv)]
        filter: FilterKind,
        #[arg(long, env = "HERMSPEC_THREADS")]
        threads: Option<usize>,
        /// Write every hit here: digraph6 lines, or signed text blocks.
        #[arg(long)]
        hits_out: Option<PathBuf>,
    },
    /// Bipartite signed graph to oriented graph, or back.
    Convert {
        input: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the reproduction checks.
    VerifyPaper {
        #[arg(long, default_value = "full")]
        scale: Scale,
        #[arg(long, env = "HERMSPEC_THREADS")]
        threads: Option<usize>,
        /// Directory for hit-list artifacts.
        #[arg(long)]
        artifacts: Option<PathBuf>,
        /// `NAME=OTHER`: replace fixture NAME by the named graph OTHER.
        #[arg(long, hide = true)]
        corrupt_fixture: Option<String>,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// One of the named graphs.
    Named { name: String },
    /// The Paley skew-Hadamard matrix of order q + 1.
    Paley { q: u64 },
    /// The regular tournament read off the Paley matrix.
    Tournament { q: u64 },
    /// Huang's signed n-cube, or by default its oriented counterpart.
    Hypercube {
        n: u32,
        #[arg(long)]
        signed: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Text,
    Digraph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Oriented,
    Mixed,
    Signed,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterKind {
    TwoEv,
    ThreeEv,
}

enum Outcome {
    Ok,
    VerdictNo,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerdictNo) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        bail!("--tol must be a positive number");
    }
    match &cli.command {
        Command::Spectrum { input, k } => spectrum(cli, input, *k),
        Command::Certify {
            input,
            k,
            three_ev,
            expect_yes,
        } => certify(cli, input, *k, *three_ev, *expect_yes),
        Command::Construct {
            what,
            format,
            output,
        } => construct(cli, what, *format, output.as_deref()),
        Command::Search {
            underlying,
            mode,
            k,
            filter,
            threads,
            hits_out,
        } => search(cli, underlying, *mode, *k, *filter, *threads, hits_out.as_deref()),
        Command::Convert {
            input,
            format,
            output,
        } => convert(cli, input, *format, output.as_deref()),
        Command::VerifyPaper {
            scale,
            threads,
            artifacts,
            corrupt_fixture,
        } => verify(cli, *scale, *threads, artifacts.clone(), corrupt_fixture.as_deref()),
    }
}

/// A file path, `-` for stdin, or a named graph.
fn load(input: &str) -> Result<GraphText> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else if Path::new(input).is_file() {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    } else {
        return named_graph(input).map(GraphText::Mixed).map_err(|_| {
            anyhow!(
                "'{input}' is neither a file nor a named graph (known: {})",
                NAMED_GRAPHS.join(", ")
            )
        });
    };
    parse_graph_text(&text).with_context(|| format!("parsing {input}"))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn signed_matrix(g: &SignedGraph) -> ComplexMatrix {
    let adj: Vec<f64> = g.adjacency().iter().map(|&x| x as f64).collect();
    ComplexMatrix::from_real(g.n(), &adj)
}

#[derive(Serialize)]
struct SpectrumOutput {
    /// `null` for the real adjacency matrix of a signed graph.
    k: Option<u32>,
    #[serde(flatten)]
    spectrum: Spectrum,
}

fn spectrum(cli: &Cli, input: &str, k: u32) -> Result<Outcome> {
    let (k, h) = match load(input)? {
        GraphText::Mixed(g) => (Some(k), build_float_h(&g, &RootOfUnity::for_order(k)?)),
        GraphText::Signed(g) => (None, signed_matrix(&g)),
    };
    let spectrum = Spectrum::of(&h, cli.tol)?;
    if cli.json {
        print_json(&SpectrumOutput { k, spectrum })?;
    } else {
        for (value, mult) in &spectrum.clusters {
            println!("{value:>12.8}  x{mult}");
        }
    }
    Ok(Outcome::Ok)
}

fn describe(c: &Certificate) -> String {
    match (&c.pair, c.multiplicities) {
        (Some((r, s)), Some((mr, ms))) if c.verdict => {
            format!("yes: r = {r} (x{mr}), s = {s} (x{ms}), k = {}, n = {}", c.k, c.n)
        }
        _ => format!(
            "no: {}",
            c.failure_reason.as_deref().unwrap_or("not two eigenvalues")
        ),
    }
}

fn certify(cli: &Cli, input: &str, k: u32, three_ev: bool, expect_yes: bool) -> Result<Outcome> {
    let graph = load(input)?;
    let verdict = if three_ev {
        let GraphText::Mixed(g) = graph else {
            bail!("--three-ev needs a tournament, got a signed graph");
        };
        let t = OrientedGraph::try_from(g)?;
        let report = certify_three_ev_tournament(&t)?;
        if cli.json {
            print_json(&report)?;
        } else {
            let expected: Vec<String> = report.expected.iter().map(|(v, m)| format!("{v:.6} (x{m})")).collect();
            println!(
                "{}: order {}, {} distinct, expected {}, max deviation {:.2e}{}",
                if report.verdict { "pass" } else { "fail" },
                report.order,
                report.distinct,
                expected.join(", "),
                report.max_deviation,
                if report.collapsed { ", collapsed" } else { "" }
            );
        }
        report.verdict
    } else {
        let cert = match graph {
            GraphText::Mixed(g) if Order::try_from(k).is_ok() => certify_two_ev(&g, k)?,
            GraphText::Mixed(g) => certify_two_ev_float(&g, &RootOfUnity::for_order(k)?, cli.tol)?,
            GraphText::Signed(g) => certify_signed_two_ev(&g, cli.tol)?,
        };
        if cli.json {
            print_json(&cert)?;
        } else {
            println!("{}", describe(&cert));
        }
        cert.verdict
    };
    Ok(if expect_yes && !verdict {
        Outcome::VerdictNo
    } else {
        Outcome::Ok
    })
}

fn mixed_output(g: &MixedGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Text => to_mixed_text(g),
        GraphFormat::Digraph6 => encode_digraph6(g) + "\n",
    }
}

fn signed_output(g: &SignedGraph, format: GraphFormat) -> Result<String> {
    match format {
        GraphFormat::Text => Ok(to_signed_text(g)),
        GraphFormat::Digraph6 => bail!("digraph6 cannot carry edge signs"),
    }
}

fn construct(cli: &Cli, what: &Construction, format: GraphFormat, output: Option<&Path>) -> Result<Outcome> {
    let (json, text) = match what {
        Construction::Named { name } => {
            let g = named_graph(name)?;
            (serde_json::to_string_pretty(&g)?, mixed_output(&g, format))
        }
        Construction::Paley { q } => {
            let a = paley_skew_hadamard(*q)?;
            (serde_json::to_string_pretty(&a)?, a.to_text())
        }
        Construction::Tournament { q } => {
            let t = tournament_from_skew_hadamard(&paley_skew_hadamard(*q)?);
            (serde_json::to_string_pretty(&t)?, mixed_output(&t, format))
        }
        Construction::Hypercube { n, signed: true } => {
            let s = huang_signed_hypercube(*n)?;
            (serde_json::to_string_pretty(&s)?, signed_output(&s, format)?)
        }
        Construction::Hypercube { n, signed: false } => {
            let d = huang_oriented_hypercube(*n)?;
            (serde_json::to_string_pretty(&d)?, mixed_output(&d, format))
        }
    };
    if cli.json {
        write_out(output, &(json + "\n"))?;
    } else {
        write_out(output, &text)?;
    }
    Ok(Outcome::Ok)
}

fn underlying(spec: &str) -> Result<(SimpleGraph, String)> {
    if Path::new(spec).is_file() || spec == "-" {
        let g = match load(spec)? {
            GraphText::Mixed(g) => g.underlying(),
            GraphText::Signed(g) => g.underlying(),
        };
        return Ok((g, spec.to_string()));
    }
    Ok((named_underlying(spec)?, spec.to_string()))
}

fn search(
    cli: &Cli,
    spec: &str,
    mode: Mode,
    k: u32,
    filter: FilterKind,
    threads: Option<usize>,
    hits_out: Option<&Path>,
) -> Result<Outcome> {
    if threads == Some(0) {
        bail!("--threads must be at least 1");
    }
    let (g, label) = underlying(spec)?;
    let opts = SearchOptions {
        threads,
        tol: cli.tol,
        ..SearchOptions::default()
    };
    let tol = cli.tol;
    let mut report = match mode {
        Mode::Signed => {
            let three = |s: &SignedGraph| {
                Spectrum::of(&signed_matrix(s), tol).is_ok_and(|sp| sp.distinct() == 3)
            };
            let f = match filter {
                FilterKind::TwoEv => Filter::TwoEv,
                FilterKind::ThreeEv => Filter::Custom(&three),
            };
            search_signings(&g, f, &opts)?
        }
        Mode::Oriented | Mode::Mixed => {
            let root = RootOfUnity::for_order(k)?;
            let three = |m: &MixedGraph| {
                Spectrum::of(&build_float_h(m, &root), tol).is_ok_and(|sp| sp.distinct() == 3)
            };
            let f = match filter {
                FilterKind::TwoEv => Filter::TwoEv,
                FilterKind::ThreeEv => Filter::Custom(&three),
            };
            if matches!(mode, Mode::Oriented) {
                search_orientations(&g, k, f, &opts)?
            } else {
                search_mixed_orientations(&g, k, f, &opts)?
            }
        }
    };
    report.label = Some(label);
    if let Some(path) = hits_out {
        std::fs::write(path, hits_text(&report)).with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.json {
        print_json(&report)?;
    } else {
        println!(
            "{} hits ({} up to isomorphism) among {} assignments, {} skipped as disconnected, {:.2} s",
            report.hits.len(),
            report.hits_up_to_iso.len(),
            report.space_size,
            report.skipped_disconnected,
            report.elapsed_secs
        );
        for (hit, size) in report.hits_up_to_iso.iter().zip(&report.class_sizes) {
            let cert = hit.certificate.as_ref().map(describe).unwrap_or_default();
            println!("{}  class size {size}  {cert}", hit.encoding);
        }
    }
    Ok(Outcome::Ok)
}

fn hits_text(report: &SearchReport) -> String {
    let mut out = String::new();
    for hit in &report.hits {
        match &hit.graph {
            HitGraph::Mixed(g) => {
                out.push_str(&encode_digraph6(g));
                out.push('\n');
            }
            HitGraph::Signed(s) => {
                out.push_str(&to_signed_text(s));
                out.push('\n');
            }
        }
    }
    out
}

fn convert(cli: &Cli, input: &str, format: GraphFormat, output: Option<&Path>) -> Result<Outcome> {
    let (json, text) = match load(input)? {
        GraphText::Signed(s) => {
            let d = signed_to_oriented(&s)?;
            (serde_json::to_string_pretty(&d)?, mixed_output(&d, format))
        }
        GraphText::Mixed(g) => {
            let d = OrientedGraph::try_from(g)?;
            let s = oriented_to_signed(&d)?;
            (serde_json::to_string_pretty(&s)?, signed_output(&s, format)?)
        }
    };
    if cli.json {
        write_out(output, &(json + "\n"))?;
    } else {
        write_out(output, &text)?;
    }
    Ok(Outcome::Ok)
}

fn verify(
    cli: &Cli,
    scale: Scale,
    threads: Option<usize>,
    artifacts: Option<PathBuf>,
    corrupt: Option<&str>,
) -> Result<Outcome> {
    let mut run = Reproduction::new(scale).threads(threads).artifacts_dir(artifacts);
    if let Some(spec) = corrupt {
        let (name, other) = spec
            .split_once('=')
            .ok_or_else(|| anyhow!("--corrupt-fixture expects NAME=OTHER"))?;
        named_graph(name)?;
        run = run.override_fixture(name, named_graph(other)?);
    }
    let report = run.run();
    if cli.json {
        print_json(&report)?;
    } else {
        for c in &report.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            println!("{status}  {:<4} {:>8.2} s  {}", c.id, c.elapsed_secs, c.claim);
            if !c.detail.is_empty() {
                println!("      {}", c.detail);
            }
        }
        println!("{}", if report.passed { "all checks passed" } else { "some checks failed" });
    }
    Ok(if report.passed {
        Outcome::Ok
    } else {
        Outcome::VerdictNo
    })
}
