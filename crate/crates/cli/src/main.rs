use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use welldoc_core::format::parse_morphism;
use welldoc_core::prng::{tuple_coverage, CombinedStream, Coverage, LcgParams};
use welldoc_core::returns::{returns_by_scan, returns_complete, returns_via_images, Completeness, ReturnSet};
use welldoc_core::welldoc::{
    decide_welldoc, empirical_welldoc, CellStatus, EmpiricalReport, EmpiricalVerdict, Report, Verdict,
};
use welldoc_core::word::{Morphism, PrefixStream, Word};
use welldoc_core::Error;

const DEFAULT_HORIZON: usize = 100_000;

/// Morphic words and the WELLDOC property.
#[derive(Debug, Parser)]
#[command(name = "welldoc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a prefix of the fixed point starting with 0.
    Generate {
        #[command(flatten)]
        input: Input,
        /// Number of symbols.
        #[arg(short = 'n', long, env = "WELLDOC_HORIZON", default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Decide the WELLDOC property.
    Decide {
        #[command(flatten)]
        input: Input,
        /// Attach an empirical scan to the report.
        #[arg(long)]
        empirical: bool,
        #[command(flatten)]
        scan: Scan,
        #[command(flatten)]
        output: Output,
    },
    /// Measure the sets X_{u,m} on a prefix of the fixed point.
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        scan: Scan,
        /// Also list cells with full coverage in text output.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Return words to 0, or to a given factor with --target.
    Returns {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Complete)]
        method: Method,
        /// Factor to return to (scan method only).
        #[arg(long)]
        target: Option<String>,
        /// Prefix length for the scan method.
        #[arg(short = 'n', long, env = "WELLDOC_HORIZON", default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Linear congruential generators combined along the fixed point.
    Prng {
        #[command(flatten)]
        input: Input,
        /// Generator `a,c,m,seed`, one per letter in letter order.
        #[arg(long = "lcg", value_name = "A,C,M,SEED", required = true)]
        lcg: Vec<String>,
        /// Number of samples.
        #[arg(short = 'n', long, env = "WELLDOC_HORIZON", default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
        /// Report coverage of overlapping d-tuples.
        #[arg(long, value_name = "D")]
        coverage: Option<usize>,
        /// Write samples as little-endian u64 instead of text.
        #[arg(long)]
        binary: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Morphism, e.g. "3;0->02;1->101;2->102" or {"sigma":2,"images":["01","0"]}.
    #[arg(short = 'm', long)]
    morphism: Option<String>,
    /// File holding the morphism in either form.
    #[arg(short = 'f', long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Scan {
    /// Prefix length scanned.
    #[arg(short = 'n', long, env = "WELLDOC_HORIZON", default_value_t = DEFAULT_HORIZON)]
    horizon: usize,
    /// Longest factor examined.
    #[arg(long, default_value_t = 5)]
    lmax: usize,
    /// Largest modulus examined.
    #[arg(long, default_value_t = 6)]
    mmax: u64,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Certified enumeration of the returns to 0.
    Complete,
    /// Returns seen in a prefix.
    Scan,
    /// Block decomposition of the images (every image must use every letter).
    Images,
}

/// Process exit codes.
mod exit {
    pub const OK: u8 = 0;
    pub const NEGATIVE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const NOT_PROLONGABLE: u8 = 3;
    pub const INCONCLUSIVE: u8 = 4;
    pub const FAILURE: u8 = 5;
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Welldoc => exit::OK,
        Verdict::NotWelldoc | Verdict::NotRecurrent => exit::NEGATIVE,
    }
}

fn empirical_code(v: EmpiricalVerdict) -> u8 {
    match v {
        EmpiricalVerdict::Consistent => exit::OK,
        EmpiricalVerdict::Falsified => exit::NEGATIVE,
        EmpiricalVerdict::Inconclusive => exit::INCONCLUSIVE,
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::LetterOutOfRange { .. }
        | Error::EmptyImage(_)
        | Error::EmptyAlphabet
        | Error::BadModulus { .. }
        | Error::DimensionMismatch { .. }
        | Error::Precondition(_) => exit::USAGE,
        Error::NotProlongable(_) => exit::NOT_PROLONGABLE,
        Error::TooFewOccurrences { .. } => exit::INCONCLUSIVE,
        _ => exit::FAILURE,
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: error_code(&e), message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: exit::FAILURE, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: exit::USAGE, message: message.into() }
}

fn load(input: &Input) -> Result<Morphism, Failure> {
    let text = match (&input.morphism, &input.file) {
        (Some(text), None) => text.clone(),
        (None, Some(path)) => {
            fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?
        }
        _ => return Err(usage("give exactly one of --morphism and --file")),
    };
    Ok(parse_morphism(&text)?)
}

fn emit(output: &Output, bytes: &[u8]) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, bytes)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("reports serialize");
    out.push(b'\n');
    out
}

fn check_horizon(horizon: usize) -> Result<(), Failure> {
    if horizon == 0 {
        return Err(usage("horizon must be at least 1"));
    }
    Ok(())
}

fn check_scan(scan: &Scan) -> Result<(), Failure> {
    check_horizon(scan.horizon)?;
    if scan.lmax == 0 {
        return Err(usage("--lmax must be at least 1"));
    }
    if scan.mmax == 0 {
        return Err(usage("--mmax must be at least 1"));
    }
    Ok(())
}

fn vector(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

fn words(ws: &[Word], sigma: usize) -> String {
    let parts: Vec<String> = ws.iter().map(|w| w.encode(sigma)).collect();
    parts.join(" ")
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Generate { input, horizon, output } => {
            check_horizon(horizon)?;
            let phi = load(&input)?;
            let mut stream = PrefixStream::new(phi.clone(), 0)?;
            let prefix = Word::from(stream.prefix(horizon));
            let body = match output.format {
                Format::Text => format!("{}\n", prefix.encode(phi.sigma())).into_bytes(),
                Format::Json => to_json(&serde_json::json!({
                    "morphism": phi.to_string(),
                    "horizon": horizon,
                    "prefix": prefix.encode(phi.sigma()),
                })),
            };
            emit(&output, &body)?;
            Ok(exit::OK)
        }
        Command::Decide { input, empirical, scan, output } => {
            let phi = load(&input)?;
            let decision = decide_welldoc(&phi)?;
            let scanned = if empirical {
                check_scan(&scan)?;
                Some(empirical_welldoc(&phi, scan.lmax, scan.mmax, scan.horizon)?)
            } else {
                None
            };
            let report = Report::new(&phi, &decision, scanned.as_ref());
            let body = match output.format {
                Format::Json => to_json(&report),
                Format::Text => decision_text(&report, scanned.as_ref()).into_bytes(),
            };
            emit(&output, &body)?;
            Ok(verdict_code(decision.verdict))
        }
        Command::Verify { input, scan, all, output } => {
            check_scan(&scan)?;
            let phi = load(&input)?;
            let report = empirical_welldoc(&phi, scan.lmax, scan.mmax, scan.horizon)?;
            let body = match output.format {
                Format::Json => to_json(&report),
                Format::Text => empirical_text(&report, phi.sigma(), all).into_bytes(),
            };
            emit(&output, &body)?;
            Ok(empirical_code(report.verdict))
        }
        Command::Returns { input, method, target, horizon, output } => {
            let phi = load(&input)?;
            if target.is_some() && method != Method::Scan {
                return Err(usage("--target requires --method scan"));
            }
            let set = match method {
                Method::Complete => returns_complete(&phi)?,
                Method::Images => returns_via_images(&phi)?,
                Method::Scan => {
                    check_horizon(horizon)?;
                    let target = match target {
                        Some(t) => Word::decode(&t, phi.sigma())?,
                        None => Word::new(vec![0]),
                    };
                    let mut stream = PrefixStream::new(phi.clone(), 0)?;
                    returns_by_scan(&mut stream, &target, horizon)?
                }
            };
            let body = match output.format {
                Format::Json => to_json(&set),
                Format::Text => returns_text(&set, phi.sigma()).into_bytes(),
            };
            emit(&output, &body)?;
            Ok(exit::OK)
        }
        Command::Prng { input, lcg, horizon, coverage, binary, output } => {
            let phi = load(&input)?;
            let params = lcg.iter().map(|s| s.parse::<LcgParams>()).collect::<Result<Vec<_>, _>>()?;
            if params.len() != phi.sigma() {
                return Err(usage(format!(
                    "expected {} --lcg generators (one per letter), got {}",
                    phi.sigma(),
                    params.len()
                )));
            }
            let samples: Vec<u64> = CombinedStream::from_morphism(&phi, params.clone())?.take(horizon).collect();
            let summary = match coverage {
                Some(d) => Some(tuple_coverage(CombinedStream::from_morphism(&phi, params)?, d, horizon)?),
                None => None,
            };
            if let (true, Some(c)) = (binary, &summary) {
                eprintln!(
                    "coverage d={}: {}/{} = {:.6} (missing {})",
                    c.dimension, c.distinct, c.total, c.coverage, c.missing
                );
            }
            let body = prng_output(&samples, summary.as_ref(), output.format, binary);
            emit(&output, &body)?;
            Ok(exit::OK)
        }
    }
}

fn decision_text(report: &Report, scanned: Option<&EmpiricalReport>) -> String {
    let mut out = String::new();
    let sigma = report.sigma;
    out.push_str(&format!("morphism: {}\n", report.morphism));
    match report.recurrence.witness {
        Some(a) => out.push_str(&format!("recurrent: yes (0 reappears through letter {a})\n")),
        None => out.push_str("recurrent: no\n"),
    }
    if report.degenerate {
        out.push_str("degenerate: fixed point is 0^omega\n");
    }
    out.push_str(&format!("det: {}\n", report.det));
    if let Some(set) = &report.return_set {
        out.push_str(&format!("returns: {}\n", words(&set.words, sigma)));
    }
    if let Some(cert) = &report.generates_z {
        let detail = match (cert.answer, cert.failing_prime, &cert.k) {
            (true, _, Some(k)) => format!("yes (basis determinant {k})"),
            (false, Some(p), _) => format!("no (fails modulo {p})"),
            _ => if cert.answer { "yes" } else { "no" }.to_string(),
        };
        out.push_str(&format!("returns generate Z^{sigma}: {detail}\n"));
    }
    if report.binary_shortcut_used {
        out.push_str("binary shortcut: used\n");
    }
    out.push_str(&format!("verdict: {}\n", report.verdict));
    for reason in &report.reasons {
        out.push_str(&format!("reason: {reason}\n"));
    }
    if let Some(e) = scanned {
        out.push_str(&format!("empirical: {}\n", e.verdict));
    }
    out
}

fn empirical_text(report: &EmpiricalReport, sigma: usize, all: bool) -> String {
    let mut out = format!(
        "horizon {}, |u| <= {}, m <= {}: {} cells\n",
        report.horizon,
        report.max_factor_len,
        report.max_modulus,
        report.cells.len()
    );
    for cell in &report.cells {
        if cell.status == CellStatus::Full && !all {
            continue;
        }
        let status = match cell.status {
            CellStatus::Full => "full",
            CellStatus::Falsified => "FALSIFIED",
            CellStatus::Inconclusive => "inconclusive",
        };
        let missing = cell.witness.as_deref().map(vector).unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "u={} m={} {}/{} ({:.4}) occurrences={} missing={} {}\n",
            cell.u.encode(sigma),
            cell.m,
            cell.observed,
            cell.total,
            cell.coverage,
            cell.occurrences,
            missing,
            status
        ));
    }
    if let Some(f) = &report.falsified_at {
        out.push_str(&format!(
            "witness: u={} m={} vector {} is never reached\n",
            f.u.encode(sigma),
            f.m,
            vector(&f.witness)
        ));
    }
    out.push_str(&format!("verdict: {}\n", report.verdict));
    out
}

fn returns_text(set: &ReturnSet, sigma: usize) -> String {
    let mut out = format!("target: {}\n", set.target.encode(sigma));
    for (w, p) in set.words.iter().zip(&set.parikh) {
        out.push_str(&format!("{} {}\n", w.encode(sigma), vector(p.counts())));
    }
    let completeness = match set.completeness {
        Completeness::Certified => "certified",
        Completeness::HorizonOnly => "horizon-only",
    };
    out.push_str(&format!("completeness: {completeness}\n"));
    out
}

#[derive(Serialize)]
struct PrngReport<'a> {
    samples: &'a [u64],
    coverage: Option<&'a Coverage>,
}

fn prng_output(samples: &[u64], coverage: Option<&Coverage>, format: Format, binary: bool) -> Vec<u8> {
    if binary {
        return samples.iter().flat_map(|x| x.to_le_bytes()).collect();
    }
    match format {
        Format::Json => to_json(&PrngReport { samples, coverage }),
        Format::Text => {
            let mut out = String::new();
            for x in samples {
                out.push_str(&format!("{x}\n"));
            }
            if let Some(c) = coverage {
                out.push_str(&format!(
                    "coverage d={}: {}/{} = {:.6} (missing {})\n",
                    c.dimension, c.distinct, c.total, c.coverage, c.missing
                ));
            }
            out.into_bytes()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("welldoc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
