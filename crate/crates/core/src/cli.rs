//! Command-line front end.
//!
//! ```text
//! polycert verify --cert FILE [--direction max|min] [--naive]
//! polycert mul [--engine naive|heap] [--route convert|per-bucket|hybrid] A B
//! polycert add A B
//! polycert convert [--mode sparse|dense|distributed] FILE
//! polycert stats [--format text|csv] <verify|mul|add> ...
//! ```
//!
//! `verify` exits 0 for a valid certificate, 1 for an invalid one (after
//! printing a `witness:` line) and 2 for unreadable input. Usage errors exit
//! 2 as well.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::Coefficient;
use crate::counters::{CounterScope, OpCounters};
use crate::geobucket::{Geobucket, LcStrategy, DEFAULT_GROWTH};
use crate::heapmul::{self, Direction, GbRoute, DEFAULT_HYBRID_THRESHOLD};
use crate::monomial::{MonomialOrder, VariableSet};
use crate::poly::Polynomial;
use crate::recursive::{to_recursive, RecursionMode};
use crate::textio::{self, PolyFile, TextError};
use crate::verifier::{self, Verdict};

#[derive(Debug, Parser)]
#[command(name = "polycert", version, about = "Sparse polynomial arithmetic and ideal-membership certificate checking")]
pub struct Cli {
    /// Coefficient domain.
    #[arg(long, value_enum, default_value_t = Domain::Rational, global = true)]
    pub domain: Domain,
    /// Override the monomial order declared in input files.
    #[arg(long, global = true)]
    pub order: Option<MonomialOrder>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    Integer,
    Rational,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a certificate f = sum lambda_i * g_i.
    Verify(VerifyArgs),
    /// Multiply two polynomial files.
    Mul(MulArgs),
    /// Add two polynomial files.
    Add(AddArgs),
    /// Print a polynomial in recursive or distributed form.
    Convert(ConvertArgs),
    /// Run verify, mul or add and report operation counts.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Naive,
    Heap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Convert,
    PerBucket,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Sparse,
    Dense,
    Distributed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub cert: PathBuf,
    #[arg(long, value_enum, default_value_t = DirectionArg::Max)]
    pub direction: DirectionArg,
    /// Use plain arithmetic instead of the heap-of-heaps checker.
    #[arg(long)]
    pub naive: bool,
}

#[derive(Debug, Args)]
pub struct MulArgs {
    #[arg(long, value_enum, default_value_t = Engine::Heap)]
    pub engine: Engine,
    /// Load the second operand into a geobucket and multiply by this route
    /// (heap engine only).
    #[arg(long, value_enum)]
    pub route: Option<RouteArg>,
    /// Geobucket growth factor.
    #[arg(long, default_value_t = DEFAULT_GROWTH)]
    pub growth: usize,
    /// Largest bucket merged into the list side under the hybrid route.
    #[arg(long, default_value_t = DEFAULT_HYBRID_THRESHOLD)]
    pub threshold: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Debug, Args)]
pub struct AddArgs {
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Sparse)]
    pub mode: ModeArg,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[command(subcommand)]
    pub op: StatsOp,
}

#[derive(Debug, Subcommand)]
pub enum StatsOp {
    Verify(VerifyArgs),
    Mul(MulArgs),
    Add(AddArgs),
}

/// Column order of the CSV report.
pub const CSV_HEADER: &str = "command,n_inputs,comparisons,coeff_muls,heap_extractions,peak_terms";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: &'static str,
    pub n_inputs: usize,
    pub counters: OpCounters,
    pub peak_terms: usize,
}

impl Report {
    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Csv => format!(
                "{CSV_HEADER}\n{},{},{},{},{},{}\n",
                self.command,
                self.n_inputs,
                self.counters.comparisons,
                self.counters.coeff_muls,
                self.counters.heap_extractions,
                self.peak_terms
            ),
            ReportFormat::Text => format!(
                "command: {}\nn_inputs: {}\ncomparisons: {}\ncoeff_adds: {}\ncoeff_muls: {}\nheap_extractions: {}\npeak_terms: {}\n",
                self.command,
                self.n_inputs,
                self.counters.comparisons,
                self.counters.coeff_adds,
                self.counters.coeff_muls,
                self.counters.heap_extractions,
                self.peak_terms
            ),
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: TextError },
    #[error("{0}")]
    Other(String),
}

struct Outcome {
    text: String,
    output: Option<PathBuf>,
    code: i32,
    report: Option<Report>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_poly<C: Coefficient>(path: &Path, order: Option<MonomialOrder>) -> Result<PolyFile<C>, CliError> {
    textio::parse_poly_file(&read(path)?, order).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load_pair<C: Coefficient>(
    a: &Path,
    b: &Path,
    order: Option<MonomialOrder>,
) -> Result<(VariableSet, Polynomial<C>, Polynomial<C>), CliError> {
    let pa = load_poly::<C>(a, order)?;
    let pb = load_poly::<C>(b, order)?;
    if pa.vars != pb.vars {
        return Err(CliError::Other(format!(
            "{} and {} declare different variables",
            a.display(),
            b.display()
        )));
    }
    if pa.poly.order() != pb.poly.order() {
        return Err(CliError::Other(format!(
            "{} and {} declare different orders; pass --order",
            a.display(),
            b.display()
        )));
    }
    Ok((pa.vars, pa.poly, pb.poly))
}

fn run_verify<C: Coefficient>(args: &VerifyArgs, order: Option<MonomialOrder>) -> Result<Outcome, CliError> {
    let file = textio::parse_certificate_with_order::<C>(&read(&args.cert)?, order).map_err(|source| {
        CliError::Input {
            path: args.cert.clone(),
            source,
        }
    })?;
    let cert = &file.certificate;
    let result = if args.naive {
        verifier::verify_naive(cert)
    } else {
        let direction = match args.direction {
            DirectionArg::Max => Direction::MaxFirst,
            DirectionArg::Min => Direction::MinFirst,
        };
        verifier::verify(cert, direction)
    };
    let (text, code) = match (&result.verdict, &result.witness) {
        (Verdict::Valid, _) => ("valid\n".to_string(), 0),
        (Verdict::Invalid, Some((m, c))) => (
            format!("invalid\nwitness: {}\n", textio::print_monomial_coeff(&file.vars, m, c)),
            1,
        ),
        (Verdict::Invalid, None) => unreachable!("invalid verdicts carry a witness"),
    };
    Ok(Outcome {
        text,
        output: None,
        code,
        report: Some(Report {
            command: "verify",
            n_inputs: 2 * cert.len() + 1,
            counters: result.stats.counters,
            peak_terms: result.stats.peak_live_terms,
        }),
    })
}

fn run_mul<C: Coefficient>(args: &MulArgs, order: Option<MonomialOrder>) -> Result<Outcome, CliError> {
    let (vars, a, b) = load_pair::<C>(&args.a, &args.b, order)?;
    let scope = CounterScope::open();
    let (product, working) = match (args.engine, args.route) {
        (Engine::Naive, None) => {
            let p = a.mul_naive(&b).map_err(|e| CliError::Other(e.to_string()))?;
            let n = p.term_count();
            (p, n)
        }
        (Engine::Naive, Some(_)) => {
            return Err(CliError::Other("--route requires --engine heap".into()));
        }
        (Engine::Heap, None) => {
            let (p, stats) = heapmul::mul_heap_with_stats(&a, &b).map_err(|e| CliError::Other(e.to_string()))?;
            let n = p.term_count() + stats.max_heap;
            (p, n)
        }
        (Engine::Heap, Some(route)) => {
            let mut gb = Geobucket::new(b.order(), b.nvars(), args.growth, LcStrategy::ScanAll)
                .map_err(|e| CliError::Other(e.to_string()))?;
            for t in b.terms() {
                gb.add_term(t.clone()).map_err(|e| CliError::Other(e.to_string()))?;
            }
            let route = match route {
                RouteArg::Convert => GbRoute::ConvertFirst,
                RouteArg::PerBucket => GbRoute::PerBucketStreams,
                RouteArg::Hybrid => GbRoute::Hybrid {
                    threshold: args.threshold,
                },
            };
            let (p, stats) =
                heapmul::mul_heap_gb_with_stats(&a, &gb, route).map_err(|e| CliError::Other(e.to_string()))?;
            let n = p.term_count() + stats.max_heap;
            (p, n)
        }
    };
    let counters = scope.close();
    Ok(Outcome {
        text: format!("{}\n", textio::print_poly(&product, &vars)),
        output: args.output.clone(),
        code: 0,
        report: Some(Report {
            command: "mul",
            n_inputs: 2,
            counters,
            peak_terms: working,
        }),
    })
}

fn run_add<C: Coefficient>(args: &AddArgs, order: Option<MonomialOrder>) -> Result<Outcome, CliError> {
    let (vars, a, b) = load_pair::<C>(&args.a, &args.b, order)?;
    let scope = CounterScope::open();
    let sum = a.add(&b).map_err(|e| CliError::Other(e.to_string()))?;
    let counters = scope.close();
    Ok(Outcome {
        text: format!("{}\n", textio::print_poly(&sum, &vars)),
        output: args.output.clone(),
        code: 0,
        report: Some(Report {
            command: "add",
            n_inputs: 2,
            counters,
            peak_terms: sum.term_count(),
        }),
    })
}

fn run_convert<C: Coefficient>(args: &ConvertArgs, order: Option<MonomialOrder>) -> Result<Outcome, CliError> {
    let pf = load_poly::<C>(&args.input, order)?;
    let text = match args.mode {
        ModeArg::Sparse => to_recursive(&pf.poly, RecursionMode::SparseInVariables)
            .display(&pf.vars)
            .to_string(),
        ModeArg::Dense => to_recursive(&pf.poly, RecursionMode::DenseInVariables)
            .display(&pf.vars)
            .to_string(),
        ModeArg::Distributed => textio::print_poly(&pf.poly, &pf.vars),
    };
    Ok(Outcome {
        text: format!("{text}\n"),
        output: args.output.clone(),
        code: 0,
        report: None,
    })
}

fn dispatch<C: Coefficient>(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify(a) => run_verify::<C>(a, cli.order),
        Command::Mul(a) => run_mul::<C>(a, cli.order),
        Command::Add(a) => run_add::<C>(a, cli.order),
        Command::Convert(a) => run_convert::<C>(a, cli.order),
        Command::Stats(s) => {
            let inner = match &s.op {
                StatsOp::Verify(a) => run_verify::<C>(a, cli.order)?,
                StatsOp::Mul(a) => run_mul::<C>(a, cli.order)?,
                StatsOp::Add(a) => run_add::<C>(a, cli.order)?,
            };
            let report = inner.report.expect("stats operations report");
            Ok(Outcome {
                text: report.render(s.format),
                output: None,
                code: 0,
                report: None,
            })
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match cli.domain {
        Domain::Integer => dispatch::<BigInt>(&cli),
        Domain::Rational => dispatch::<BigRational>(&cli),
    };
    match outcome {
        Ok(o) => {
            let written = match &o.output {
                Some(path) => fs::write(path, &o.text).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(o.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                let _ = writeln!(err, "error: {msg}");
                return 2;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
