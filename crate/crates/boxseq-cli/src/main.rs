//! Command-line front end: construct, verify, decompose, order, search, and
//! report, with bit-exact JSON I/O.
//!
//! Exit codes: 0 pass, 1 verified-fail, 2 usage/parse error, 3 NOT_FOUND.
//! All rationals serialize as exact `"p/q"` strings and certificate integers
//! as decimal strings, so repeated runs with a fixed seed and budget produce
//! byte-identical output.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use boxseq::construct::{construct_one, construct_three, construct_two, ConstructionOutput};
use boxseq::decompose::{decompose, DecomposeOutcome};
use boxseq::error::Error;
use boxseq::search::{
    search_rect, search_square, RECT_EXHAUSTIVE_MAX_D, SQUARE_EXHAUSTIVE_MAX_D,
};
use boxseq::sequence::VectorSequence;
use boxseq::signmatrix::{sylvester, verify_rect, verify_square, SignMatrix};
use boxseq::steinitz::steinitz_order_with;
use boxseq::verify::{is_tau_witness, kstar_check, sum_check, VerifyLimits, VerificationReport};

const EXIT_PASS: u8 = 0;
const EXIT_VERIFIED_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "boxseq", version, about = "Minimal vector sequences in the box: construct, order, decompose, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a lower-bound sequence (c1, c2, or c3)
    Construct(ConstructArgs),
    /// Verify a sequence file: tau witness, k* condition, or sum membership
    Verify(VerifyArgs),
    /// Find a proper subsequence with sum in the box
    Decompose(IoArgs),
    /// Order a zero-sum sequence so every prefix sum stays in d*[-1,1]^d
    Steinitz(IoArgs),
    /// Sign-matrix providers and verifiers
    Matrix(MatrixArgs),
    /// Enumerate minimal multisets over {-N..N}^m (non-redundant
    /// subadditivity constraints)
    Enum(EnumArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    C1,
    C2,
    C3,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    CsvSummary,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Matrix dimension d (the sequence dimension is 2d, d+1, or 2d+1)
    #[arg(long)]
    d: usize,
    /// Optional sign-matrix JSON file; otherwise a matrix is searched or
    /// built
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Witness,
    Kstar,
    Sum,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = VerifyMode::Witness)]
    mode: VerifyMode,
    /// Cap on subset enumeration: at most 2^LIMIT multiplicity patterns
    #[arg(long, default_value_t = 26)]
    subset_limit: u32,
    /// Cap on k* multiplicity vectors
    #[arg(long, default_value_t = 10_000_000)]
    kstar_budget: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IoArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixAction {
    SearchRect,
    SearchSquare,
    Verify,
    Sylvester,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(value_enum)]
    action: MatrixAction,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long)]
    m: usize,
    #[arg(long = "N")]
    n_bound: i64,
    #[arg(long = "t-max")]
    t_max: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let payload = serde_json::json!({
                "error": err.to_string(),
                "kind": error_kind(&err),
            });
            eprintln!("{payload}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Parse(_) => "parse",
        Error::Precondition(_) | Error::Dimension(_) => "precondition",
        Error::SubsetLimit { .. } | Error::KStarBudget(_) | Error::EnumLimit(_) => "budget",
        _ => "error",
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::Steinitz(args) => cmd_steinitz(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Enum(args) => cmd_enum(args),
    }
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Writes the payload newline-terminated to the output file or stdout.
fn emit(output: &Option<PathBuf>, payload: &str) -> Result<(), Error> {
    match output {
        Some(path) => {
            let mut f = fs::File::create(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            writeln!(f, "{payload}").map_err(|e| Error::Parse(e.to_string()))
        }
        None => {
            println!("{payload}");
            Ok(())
        }
    }
}

fn load_sequence(path: &PathBuf) -> Result<VectorSequence, Error> {
    VectorSequence::from_json_str(&read_file(path)?)
}

fn load_matrix(path: &PathBuf) -> Result<SignMatrix, Error> {
    SignMatrix::from_json_str(&read_file(path)?)
}

fn cmd_construct(args: ConstructArgs) -> Result<u8, Error> {
    let matrix = match (&args.matrix, args.kind) {
        (Some(path), _) => load_matrix(path)?,
        (None, Kind::C1) => search_rect(args.d, args.budget, args.seed)?.matrix,
        (None, Kind::C2) | (None, Kind::C3) => {
            if args.d.is_power_of_two() {
                sylvester(args.d)?
            } else {
                search_square(args.d, args.budget, args.seed)?.matrix
            }
        }
    };
    let out = match args.kind {
        Kind::C1 => construct_one(&matrix)?,
        Kind::C2 => construct_two(&matrix)?,
        Kind::C3 => construct_three(&matrix)?,
    };
    let payload = match args.format {
        OutputFormat::Json => out.seq.to_json_string(),
        OutputFormat::CsvSummary => construct_csv(&args, &out)?,
    };
    emit(&args.output, &payload)?;
    Ok(EXIT_PASS)
}

/// One CSV row per construction: dimension, kind, length, brute-force
/// minimum subset size (blank when over the enumeration limit), and the
/// certificate's largeness metric.
fn construct_csv(args: &ConstructArgs, out: &ConstructionOutput) -> Result<String, Error> {
    let limits = VerifyLimits::default();
    let min_subset = match boxseq::verify::min_box_subset(&out.seq, &limits) {
        Ok(report) => report.min_size.map(|s| s.to_string()).unwrap_or_default(),
        Err(Error::SubsetLimit { .. }) => String::new(),
        Err(e) => return Err(e),
    };
    let metric = match &out.certificate {
        boxseq::signmatrix::MatrixCertificate::Rect(c) => c.l1_norm.to_string(),
        boxseq::signmatrix::MatrixCertificate::Square(c) => c.first_row_min.to_string(),
    };
    Ok(format!(
        "d,kind,t,min_subset_size,certificate_metric\n{},{},{},{},{}",
        args.d,
        out.kind.as_str(),
        out.seq.len(),
        min_subset,
        metric
    ))
}

fn report_exit(report: &VerificationReport) -> u8 {
    if report.passed {
        EXIT_PASS
    } else {
        EXIT_VERIFIED_FAIL
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Error> {
    let seq = load_sequence(&args.input)?;
    let limits = VerifyLimits {
        subset_patterns_log2: args.subset_limit,
        kstar_budget: args.kstar_budget,
    };
    let report = match args.mode {
        VerifyMode::Witness => is_tau_witness(&seq, &limits)?,
        VerifyMode::Kstar => kstar_check(&seq, &limits)?,
        VerifyMode::Sum => sum_check(&seq),
    };
    let payload = serde_json::to_string(&report).expect("report serializes");
    emit(&args.output, &payload)?;
    Ok(report_exit(&report))
}

fn cmd_decompose(args: IoArgs) -> Result<u8, Error> {
    let seq = load_sequence(&args.input)?;
    match decompose(&seq)? {
        DecomposeOutcome::Found(result) => {
            let payload = serde_json::to_string(&result).expect("result serializes");
            emit(&args.output, &payload)?;
            Ok(EXIT_PASS)
        }
        DecomposeOutcome::NotFound => {
            let payload = serde_json::json!({"outcome": "not_found"}).to_string();
            emit(&args.output, &payload)?;
            Ok(EXIT_NOT_FOUND)
        }
    }
}

fn cmd_steinitz(args: IoArgs) -> Result<u8, Error> {
    let seq = load_sequence(&args.input)?;
    let ord = steinitz_order_with(&seq, false)?;
    let payload = serde_json::json!({
        "perm": ord.perm,
        "prefix_norms": ord.prefix_norms.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
    })
    .to_string();
    emit(&args.output, &payload)?;
    Ok(EXIT_PASS)
}

fn require_d(d: Option<usize>) -> Result<usize, Error> {
    d.ok_or_else(|| Error::Precondition("--d is required for this action".into()))
}

fn cmd_matrix(args: MatrixArgs) -> Result<u8, Error> {
    let (payload, code) = match args.action {
        MatrixAction::Sylvester => {
            let m = sylvester(require_d(args.d)?)?;
            let cert = verify_square(&m)?;
            let payload = serde_json::json!({
                "matrix": m.to_json_value(),
                "certificate": cert.to_json_value(),
            })
            .to_string();
            (payload, if cert.passed { EXIT_PASS } else { EXIT_VERIFIED_FAIL })
        }
        MatrixAction::SearchRect => {
            let d = require_d(args.d)?;
            let out = search_rect(d, args.budget, args.seed)?;
            let payload = serde_json::json!({
                "matrix": out.matrix.to_json_value(),
                "certificate": out.certificate.to_json_value(),
                "objective": out.objective.to_string(),
                "exhaustive": d <= RECT_EXHAUSTIVE_MAX_D,
                "evaluations": out.evaluations,
            })
            .to_string();
            (payload, EXIT_PASS)
        }
        MatrixAction::SearchSquare => {
            let d = require_d(args.d)?;
            let out = search_square(d, args.budget, args.seed)?;
            let payload = serde_json::json!({
                "matrix": out.matrix.to_json_value(),
                "certificate": out.certificate.to_json_value(),
                "objective": out.objective.to_string(),
                "exhaustive": d <= SQUARE_EXHAUSTIVE_MAX_D,
                "evaluations": out.evaluations,
            })
            .to_string();
            (payload, EXIT_PASS)
        }
        MatrixAction::Verify => {
            let path = args.input.as_ref().ok_or_else(|| {
                Error::Precondition("--input is required for matrix verify".into())
            })?;
            let m = load_matrix(path)?;
            let (payload, passed) = if m.rows() + 1 == m.cols() {
                let cert = verify_rect(&m)?;
                let passed = cert.passed;
                (
                    serde_json::json!({
                        "matrix": m.to_json_value(),
                        "certificate": cert.to_json_value(),
                    })
                    .to_string(),
                    passed,
                )
            } else if m.rows() == m.cols() {
                let cert = verify_square(&m)?;
                let passed = cert.passed;
                (
                    serde_json::json!({
                        "matrix": m.to_json_value(),
                        "certificate": cert.to_json_value(),
                    })
                    .to_string(),
                    passed,
                )
            } else {
                return Err(Error::Dimension(format!(
                    "no contract matches shape {}x{}",
                    m.rows(),
                    m.cols()
                )));
            };
            (payload, if passed { EXIT_PASS } else { EXIT_VERIFIED_FAIL })
        }
    };
    emit(&args.output, &payload)?;
    Ok(code)
}

fn cmd_enum(args: EnumArgs) -> Result<u8, Error> {
    let out = boxseq::verify::minimal_multiset_enum(args.m, args.n_bound, args.t_max)?;
    let max_len = out.iter().map(VectorSequence::len).max().unwrap_or(0);
    let payload = serde_json::json!({
        "m": args.m,
        "N": args.n_bound,
        "t_max": args.t_max,
        "count": out.len(),
        "max_length": max_len,
        "multisets": out.iter().map(VectorSequence::to_json_value).collect::<Vec<_>>(),
    })
    .to_string();
    emit(&args.output, &payload)?;
    Ok(EXIT_PASS)
}
