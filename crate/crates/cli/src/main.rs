mod commands;
mod record;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use record::Format;

#[derive(Debug, Parser)]
#[command(name = "shoreline", version, about = "Optimal search paths for a shoreline at unknown position")]
pub struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Run the acceptance suite (same as the `check` command).
    #[arg(long)]
    check: bool,

    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Spiral growth rate.
    #[arg(long, global = true)]
    pub kappa: Option<f64>,
    /// Coil expansion factor.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Target position on the line.
    #[arg(long = "X", global = true, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Distance to the shoreline; lengths scale by it.
    #[arg(long = "R", global = true, default_value_t = 1.0)]
    pub r: f64,
    /// Monte Carlo sample count.
    #[arg(short = 'n', global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of plot-data rows.
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// Plot-data domain as LO:HI.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub range: Option<Range>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(format!("range needs finite LO < HI, got {lo}:{hi}"));
        }
        Ok(Range { lo, hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpiralMode {
    Minmax,
    Minmean,
    Eval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoilMode {
    Minmax,
    Minmean,
    Mixed,
    Eval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimTarget {
    Spiral,
    Coil,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    DeltaRatio,
    #[value(name = "I", alias = "i")]
    I,
    SpiralPath,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Logarithmic spiral optima and objective evaluation.
    Spiral {
        #[arg(value_enum)]
        mode: SpiralMode,
    },
    /// Zig-zag coil optima and evaluation on the line.
    Coil {
        #[arg(value_enum)]
        mode: CoilMode,
    },
    /// Monte Carlo checks against the closed forms.
    Simulate {
        #[arg(value_enum)]
        target: SimTarget,
    },
    /// CSV data for plotting.
    PlotData {
        #[arg(value_enum)]
        figure: Figure,
    },
    /// Run the acceptance suite.
    Check,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl From<shoreline::Error> for CliError {
    fn from(e: shoreline::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Io(format!("cannot write output: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let opts = &cli.opts;
    let command = match (cli.command, cli.check) {
        (Some(c), false) => c,
        (None, true) | (Some(Command::Check), true) => Command::Check,
        (Some(_), true) => return Err(CliError::Usage("--check cannot be combined with a command".into())),
        (None, false) => return Err(CliError::Usage("a command is required; see --help".into())),
    };
    let record = match command {
        Command::Spiral { mode } => commands::spiral(mode, opts)?,
        Command::Coil { mode } => commands::coil(mode, opts)?,
        Command::Simulate { target } => commands::simulate(target, opts)?,
        Command::PlotData { figure } => {
            let csv = commands::plot_data(figure, opts)?;
            write_output(&csv, opts.out.as_deref())?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Check => {
            let (text, passed) = commands::check();
            write_output(&text, opts.out.as_deref())?;
            return Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    };
    if let Some(key) = record.non_finite() {
        return Err(CliError::Numerical(format!("non-finite value for `{key}`")));
    }
    write_output(&record.render(opts.format), opts.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg) | CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
