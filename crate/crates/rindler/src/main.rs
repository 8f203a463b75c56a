//! Command-line front end: angle sweeps, the closed-form audit report, and
//! the randomized kernel selftest.
//!
//! Exit codes: 0 on success (including `--help`/`--version`), 1 for
//! configuration problems (bad flags, bad config file, out-of-range
//! parameters, I/O failures), 2 when a numeric kernel fails or the selftest
//! finds a kernel disagreement.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use rindler::sweep::{
    compare_report, run_sweep, write_csv, write_json, Scenario, SweepConfig, SweepRecord,
};
use rindler::{run_selftest, Error};

#[derive(Parser)]
#[command(
    name = "rindler",
    version,
    about = "GHZ entanglement under the fermionic Unruh channel: \
             sweeps, closed-form audits, and kernel selftests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the Unruh mixing angle and print every quantifier per grid point
    Sweep(SweepArgs),
    /// Compare the numerics against the published closed forms over both
    /// standard scenarios
    Report(ReportArgs),
    /// Run seeded randomized cross-checks of the numeric kernels
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ScenarioArg {
    /// Only party C accelerates
    One,
    /// Parties B and C accelerate equally
    Two,
    /// Parties B and C accelerate with fixed angles --rb and --rc
    Custom,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Who accelerates [default: one]
    #[arg(long, value_enum)]
    scenario: Option<ScenarioArg>,
    /// Mixing angle of party B in [0, pi/4]; custom scenario only
    #[arg(long)]
    rb: Option<f64>,
    /// Mixing angle of party C in [0, pi/4]; custom scenario only
    #[arg(long)]
    rc: Option<f64>,
    /// Grid points over [0, pi/4], endpoints included [default: 201]
    #[arg(long)]
    grid: Option<usize>,
    /// Output format [default: csv]
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file; explicit flags win over file values
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Grid points per scenario [default: 201]
    #[arg(long)]
    grid: Option<usize>,
    /// Also write the report as JSON to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file; explicit flags win over file values
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Seed for the random-input stream
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random draws per suite
    #[arg(long, default_value_t = 64)]
    cases: usize,
}

/// Subset of the sweep/report options a TOML config file may set.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    scenario: Option<String>,
    rb: Option<f64>,
    rc: Option<f64>,
    grid: Option<usize>,
    format: Option<String>,
    out: Option<PathBuf>,
}

impl FileConfig {
    fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = fs::read_to_string(path).map_err(|e| {
            Failure::Lib(Error::Config(format!("cannot read {}: {e}", path.display())))
        })?;
        toml::from_str(&text).map_err(|e| {
            Failure::Lib(Error::Config(format!("cannot parse {}: {e}", path.display())))
        })
    }

    fn scenario_arg(&self) -> Result<Option<ScenarioArg>, Failure> {
        match self.scenario.as_deref() {
            None => Ok(None),
            Some("one") => Ok(Some(ScenarioArg::One)),
            Some("two") => Ok(Some(ScenarioArg::Two)),
            Some("custom") => Ok(Some(ScenarioArg::Custom)),
            Some(other) => Err(Failure::Lib(Error::Config(format!(
                "unknown scenario {other:?} in config file (expected \"one\", \"two\" or \"custom\")"
            )))),
        }
    }

    fn format_arg(&self) -> Result<Option<FormatArg>, Failure> {
        match self.format.as_deref() {
            None => Ok(None),
            Some("csv") => Ok(Some(FormatArg::Csv)),
            Some("json") => Ok(Some(FormatArg::Json)),
            Some(other) => Err(Failure::Lib(Error::Config(format!(
                "unknown format {other:?} in config file (expected \"csv\" or \"json\")"
            )))),
        }
    }
}

/// Anything that can abort a command, carrying its exit code.
enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(e) if e.is_numeric() => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successful output, not errors;
            // everything else is a usage problem.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Sweep(args) => run_sweep_command(args),
        Command::Report(args) => run_report_command(args),
        Command::Selftest(args) => run_selftest_command(args),
    }
}

fn resolve_scenario(args: &SweepArgs, file: &FileConfig) -> Result<Scenario, Failure> {
    let choice = match args.scenario {
        Some(s) => s,
        None => file.scenario_arg()?.unwrap_or(ScenarioArg::One),
    };
    if choice != ScenarioArg::Custom && (args.rb.is_some() || args.rc.is_some()) {
        return Err(Failure::Lib(Error::Config(
            "--rb and --rc apply only to --scenario custom".into(),
        )));
    }
    Ok(match choice {
        ScenarioArg::One => Scenario::OneObserver,
        ScenarioArg::Two => Scenario::TwoObservers,
        ScenarioArg::Custom => {
            let rb = args.rb.or(file.rb).ok_or_else(|| {
                Failure::Lib(Error::Config(
                    "custom scenario needs rb (--rb or config file)".into(),
                ))
            })?;
            let rc = args.rc.or(file.rc).ok_or_else(|| {
                Failure::Lib(Error::Config(
                    "custom scenario needs rc (--rc or config file)".into(),
                ))
            })?;
            Scenario::Custom { rb, rc }
        }
    })
}

/// Writes through `out` when given, falling back to stdout.
fn with_output<F>(out: Option<&Path>, write: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match out {
        Some(path) => {
            let mut file = fs::File::create(path)?;
            write(&mut file)?;
            file.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn run_sweep_command(args: SweepArgs) -> Result<i32, Failure> {
    let file = FileConfig::load(args.config.as_deref())?;
    let scenario = resolve_scenario(&args, &file)?;
    let grid = args.grid.or(file.grid).unwrap_or(201);
    let format = match args.format {
        Some(f) => f,
        None => file.format_arg()?.unwrap_or(FormatArg::Csv),
    };
    let out = args.out.clone().or(file.out);

    let records = run_sweep(&SweepConfig { scenario, grid })?;
    emit_records(&records, format, out.as_deref())?;
    Ok(0)
}

fn emit_records(
    records: &[SweepRecord],
    format: FormatArg,
    out: Option<&Path>,
) -> Result<(), Failure> {
    with_output(out, |w| match format {
        FormatArg::Csv => write_csv(records, w),
        FormatArg::Json => write_json(records, w),
    })
}

fn run_report_command(args: ReportArgs) -> Result<i32, Failure> {
    let file = FileConfig::load(args.config.as_deref())?;
    if file.scenario_arg()? == Some(ScenarioArg::Custom) {
        return Err(Failure::Lib(Error::Config(
            "the report always audits the standard scenarios; a custom scenario does not apply"
                .into(),
        )));
    }
    let grid = args.grid.or(file.grid).unwrap_or(201);
    let out = args.out.clone().or(file.out);

    let one = run_sweep(&SweepConfig { scenario: Scenario::OneObserver, grid })?;
    let two = run_sweep(&SweepConfig { scenario: Scenario::TwoObservers, grid })?;
    let report = compare_report(&one, &two)?;
    print!("{report}");
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&report)
            .map_err(io::Error::from)
            .map_err(Failure::Io)?;
        fs::write(&path, json + "\n")?;
    }
    Ok(0)
}

fn run_selftest_command(args: SelftestArgs) -> Result<i32, Failure> {
    let report = run_selftest(args.seed, args.cases)?;
    print!("{report}");
    Ok(if report.passed() { 0 } else { 2 })
}
