use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use grolab::config::{Command, RunConfig};
use grolab::report::emit_report;
use grolab::run::run;
use grolab::sweep::{sweep, SweepParam, SweepRange};

/// Verification suites for the Reeds-type lower bound on the Grothendieck constant.
#[derive(Debug, Parser)]
#[command(name = "grolab", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// INI-style config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the JSON verification report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Re-run the chain with outward-rounded interval arithmetic.
    #[arg(long, global = true)]
    certified: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    beta: Option<f64>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Grid size for the profile optimizer.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Profile (text format) to certify in the `profile` command.
    #[arg(long, global = true)]
    profile_in: Option<PathBuf>,
    /// Where the `profile` command writes the optimizer's profile.
    #[arg(long, global = true)]
    profile_out: Option<PathBuf>,
    /// Where `explore` and `sweep` write CSV.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Baseline, Reeds point and pairing constants.
    Constants,
    /// Baseline bound, Reeds point and the quadratic decay of F.
    Baseline,
    /// Dual certificate, discretized optimizer and gap identity.
    Profile,
    /// Third-chaos pairing constants.
    Pairing,
    /// Stability constants and the final chain.
    Chain,
    /// β-derivative scan, sign ascent and Monte Carlo.
    Explore,
    /// Every acceptance criterion.
    VerifyAll,
    /// One-parameter sweep written as CSV.
    Sweep {
        #[arg(long, value_enum)]
        param: Param,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long)]
        steps: usize,
        /// Space the points logarithmically.
        #[arg(long)]
        log: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Param {
    Lambda,
    Epsilon,
    Beta,
    Grid,
}

impl From<Param> for SweepParam {
    fn from(p: Param) -> Self {
        match p {
            Param::Lambda => SweepParam::Lambda,
            Param::Epsilon => SweepParam::Epsilon,
            Param::Beta => SweepParam::Beta,
            Param::Grid => SweepParam::Grid,
        }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn build_config(cli: &Cli, command: Command) -> Result<RunConfig> {
    let mut c = RunConfig::new(command);
    if let Some(path) = &cli.config {
        c.load_ini(path)?;
    }
    if cli.out.is_some() {
        c.output_path = cli.out.clone();
    }
    c.certified |= cli.certified;
    c.seed = cli.seed.unwrap_or(c.seed);
    c.beta = cli.beta.unwrap_or(c.beta);
    c.epsilon = cli.epsilon.unwrap_or(c.epsilon);
    c.grid = cli.grid.unwrap_or(c.grid);
    c.profile_in = cli.profile_in.clone().or(c.profile_in);
    c.profile_out = cli.profile_out.clone().or(c.profile_out);
    c.csv_path = cli.csv.clone().or(c.csv_path);
    c.validate()?;
    Ok(c)
}

fn write(path: &PathBuf, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn execute(config: &RunConfig) -> Result<bool> {
    let out = run(config)?;
    for c in &out.outcome.checks {
        eprintln!("{}", c.summary_line());
    }
    match &out.chain_json {
        Some(json) => println!("{json}"),
        None => println!("{}", out.outcome.to_json()),
    }
    if let Some(path) = &config.output_path {
        emit_report(&out.outcome, path)?;
    }
    if let (Some(path), Some(text)) = (&config.profile_out, &out.profile_text) {
        write(path, text)?;
    }
    if let (Some(path), Some(csv)) = (&config.csv_path, &out.csv) {
        write(path, csv)?;
    }
    for c in out.outcome.failures() {
        eprintln!("failed check: {}", c.name);
    }
    Ok(out.outcome.overall)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let command = match &cli.command {
        Cmd::Constants => Command::Constants,
        Cmd::Baseline => Command::Baseline,
        Cmd::Profile => Command::Profile,
        Cmd::Pairing => Command::Pairing,
        Cmd::Chain => Command::Chain,
        Cmd::Explore => Command::Explore,
        Cmd::VerifyAll => Command::VerifyAll,
        Cmd::Sweep { param, lo, hi, steps, log } => {
            let prepared = build_config(&cli, Command::Constants)
                .and_then(|c| Ok((c, SweepRange::new(*lo, *hi, *steps, *log)?)));
            let (config, range) = match prepared {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            return match sweep((*param).into(), &range, &config.quadrature).and_then(|csv| match &config.csv_path {
                Some(path) => write(path, &csv),
                None => {
                    print!("{csv}");
                    Ok(())
                }
            }) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(EXIT_FAIL)
                }
            };
        }
    };
    let config = match build_config(&cli, command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match execute(&config) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
