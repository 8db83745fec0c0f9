use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kerov_cli::render::{render_diagram, render_kerov, render_series, Format};
use kerov_cli::{run_suite, Suite, SuiteReport, VerifyConfig};
use kerov_core::diagram::DiagramJson;
use kerov_core::kerov::{generalized_kerov_with, kerov_polynomial_with, EnumerationOptions};
use kerov_core::series::{convert, SeriesJson};
use kerov_core::stanley::stanley_character;
use kerov_core::{MultiRectangular, Partition, SeriesRole, TruncatedSeries};
use serde::Serialize;

/// Kerov character polynomials from cycle factorizations.
#[derive(Parser)]
#[command(name = "kerov", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a Kerov polynomial.
    Compute(ComputeArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Convert a series between moments, free cumulants and S-functionals.
    Convert(ConvertArgs),
    /// Print the functionals of a multirectangular diagram.
    Diagram(DiagramArgs),
    /// Print the Stanley polynomial of a normalized character.
    Stanley(StanleyArgs),
}

#[derive(Args)]
struct Threads {
    /// Worker threads for the factorization enumeration.
    #[arg(long, env = "KEROV_THREADS")]
    threads: Option<usize>,
}

impl Threads {
    fn options(&self) -> EnumerationOptions {
        EnumerationOptions {
            threads: self.threads,
            ..EnumerationOptions::default()
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "target")]
struct Target {
    /// Length of the cycle.
    #[arg(long)]
    k: Option<usize>,
    /// Cycle lengths of a product of disjoint cycles, e.g. `2,1`.
    #[arg(long, value_delimiter = ',')]
    cycles: Option<Vec<usize>>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    threads: Threads,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest number of boxes of the diagrams fed to the character oracle.
    #[arg(long, default_value_t = 8)]
    max_boxes: u32,
    /// Largest cycle length checked.
    #[arg(long, default_value_t = 6)]
    max_k: usize,
    /// Suites to run; all by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    suites: Vec<Suite>,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[command(flatten)]
    threads: Threads,
}

#[derive(Clone, Copy, ValueEnum)]
enum Role {
    Moments,
    FreeCumulants,
    SFunctionals,
}

impl From<Role> for SeriesRole {
    fn from(r: Role) -> SeriesRole {
        match r {
            Role::Moments => SeriesRole::Moments,
            Role::FreeCumulants => SeriesRole::FreeCumulants,
            Role::SFunctionals => SeriesRole::SFunctionals,
        }
    }
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    from: Role,
    #[arg(long, value_enum)]
    to: Role,
    /// Series JSON file; standard input when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct DiagramArgs {
    /// A Young diagram given by its rows, e.g. `4,3,1`.
    #[arg(long, conflicts_with_all = ["p", "q"])]
    partition: Option<String>,
    /// Band heights, bottom band first; rationals such as `3/2` allowed.
    #[arg(long, value_delimiter = ',', requires = "q")]
    p: Vec<String>,
    /// Band widths, weakly decreasing.
    #[arg(long, value_delimiter = ',', requires = "p")]
    q: Vec<String>,
    /// Number of terms of each series.
    #[arg(long, default_value_t = 8)]
    order: usize,
    /// Print only this series, in the format read by `convert`.
    #[arg(long, value_enum)]
    series: Option<Role>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StanleyFormat {
    Text,
    Json,
}

#[derive(Args)]
struct StanleyArgs {
    #[command(flatten)]
    target: Target,
    /// Number of rectangular bands.
    #[arg(long, default_value_t = 2)]
    bands: usize,
    /// Keep only factorizations generating a transitive group.
    #[arg(long)]
    transitive: bool,
    #[arg(long, value_enum, default_value_t = StanleyFormat::Json)]
    format: StanleyFormat,
}

enum Failure {
    Usage(String),
    Verification,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// `println!` that gives up quietly when the reader has gone away.
macro_rules! out {
    ($($arg:tt)*) => {{
        let mut stdout = std::io::stdout().lock();
        if let Err(e) = writeln!(stdout, $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            return Err(Failure::Usage(e.to_string()));
        }
    }};
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Verify(args) => verify(args),
        Command::Convert(args) => convert_cmd(args),
        Command::Diagram(args) => diagram(args),
        Command::Stanley(args) => stanley(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parts_of(target: &Target) -> Vec<usize> {
    match (&target.k, &target.cycles) {
        (Some(k), _) => vec![*k],
        (None, Some(c)) => c.clone(),
        (None, None) => unreachable!("clap requires one of --k, --cycles"),
    }
}

fn compute(args: ComputeArgs) -> Result<(), Failure> {
    let options = args.threads.options();
    let result = match args.target.k {
        Some(k) => kerov_polynomial_with(k, &options)?,
        None => generalized_kerov_with(&parts_of(&args.target), &options)?,
    };
    out!("{}", render_kerov(&result, args.format));
    Ok(())
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: String,
    max_boxes: u32,
    max_k: usize,
    seed: u64,
    passed: bool,
    elapsed_ms: u128,
    suites: &'a [SuiteReport],
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let config = VerifyConfig {
        max_boxes: args.max_boxes,
        max_k: args.max_k,
        seed: args.seed,
        enumeration: args.threads.options(),
    };
    let suites = if args.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suites.clone()
    };
    let mut reports = Vec::new();
    for suite in suites {
        let report = run_suite(suite, &config);
        if let ReportFormat::Text = args.format {
            let verdict = if report.passed { "PASS" } else { "FAIL" };
            let seed = report.seed.map(|s| format!(", seed {s}")).unwrap_or_default();
            out!("{verdict} {suite} ({} checks{seed})", report.checks);
            for note in &report.notes {
                out!("    {note}");
            }
            if let Some(f) = &report.failure {
                out!("    counterexample: {f}");
            }
        }
        reports.push(report);
    }
    let passed = reports.iter().all(|r| r.passed);
    if let ReportFormat::Json = args.format {
        let report = RunReport {
            command: std::env::args().collect::<Vec<_>>().join(" "),
            max_boxes: config.max_boxes,
            max_k: config.max_k,
            seed: config.seed,
            passed,
            elapsed_ms: reports.iter().map(|r| r.elapsed_ms).sum(),
            suites: &reports,
        };
        out!("{}", serde_json::to_string_pretty(&report)?);
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn convert_cmd(args: ConvertArgs) -> Result<(), Failure> {
    let mut text = String::new();
    match &args.input {
        Some(path) if path.as_os_str() != "-" => {
            text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    let json: SeriesJson = serde_json::from_str(&text)?;
    let series = TruncatedSeries::from_json(&json)?;
    let from = SeriesRole::from(args.from);
    if series.role() != from {
        return Err(kerov_core::Error::RoleMismatch {
            expected: from,
            found: series.role(),
        }
        .into());
    }
    out!("{}", render_series(&convert(&series, args.to.into())?));
    Ok(())
}

fn diagram(args: DiagramArgs) -> Result<(), Failure> {
    let d = match &args.partition {
        Some(rows) => rows.parse::<Partition>()?.to_multirectangular(),
        None if args.p.is_empty() => MultiRectangular::empty(),
        None => MultiRectangular::from_json(&DiagramJson {
            p: args.p.clone(),
            q: args.q.clone(),
        })?,
    };
    out!("{}", render_diagram(&d, args.order, args.series.map(Into::into)));
    Ok(())
}

fn stanley(args: StanleyArgs) -> Result<(), Failure> {
    let poly = stanley_character(&parts_of(&args.target), args.bands, args.transitive)?;
    match args.format {
        StanleyFormat::Text => out!("{}", poly.to_text()),
        StanleyFormat::Json => out!("{}", serde_json::to_string_pretty(&poly.to_json())?),
    }
    Ok(())
}
