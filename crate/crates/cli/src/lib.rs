//! Command-line front end: simulation, sweeps, fidelity curves, parametric
//! data, verification against the published polynomials, and threshold
//! search. Data goes to stdout or `--output`; diagnostics go to stderr.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a mismatch, 2 on bad
//! arguments or out-of-range parameters.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use magicsq::experiments::{
    self, format_value, write_fidelity_csv, write_parametric_csv, write_report_csv,
    write_sweep_csv, DEFAULT_VERIFY_TOLERANCE,
};
use magicsq::game::{mean_success, success_probability};
use magicsq::{ChannelKind, GameInput, CLASSICAL_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "magicsq", version, about = "Noisy magic square game simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Success probability for one input, or the mean over all nine
    Simulate(SimulateArgs),
    /// Per-input and mean success with four-qubit fidelity over a noise grid
    Sweep(GridArgs),
    /// Single- and four-qubit channel fidelity
    Fidelity(FidelityArgs),
    /// (fidelity, mean success) pairs over a noise grid
    Parametric(GridArgs),
    /// Reconstruct all 54 success polynomials and compare with the published table
    Verify(VerifyArgs),
    /// Smallest noise level where mean success falls to the target
    Threshold(ThresholdArgs),
}

/// `all` or one channel name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelSelection {
    All,
    One(ChannelKind),
}

impl ChannelSelection {
    pub fn kinds(self) -> Vec<ChannelKind> {
        match self {
            ChannelSelection::All => ChannelKind::ALL.to_vec(),
            ChannelSelection::One(k) => vec![k],
        }
    }

    fn is_all(self) -> bool {
        self == ChannelSelection::All
    }
}

fn parse_channel(s: &str) -> Result<ChannelSelection, String> {
    if s == "all" {
        return Ok(ChannelSelection::All);
    }
    s.parse().map(ChannelSelection::One).map_err(|_| {
        let names: Vec<_> = ChannelKind::ALL.iter().map(|k| k.name()).collect();
        format!("expected `all` or one of {}", names.join(", "))
    })
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Channel name or `all`
    #[arg(long, default_value = "all", value_parser = parse_channel)]
    pub channel: ChannelSelection,
    /// Output file; `-` is stdout
    #[arg(long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Noise level in [0, 1]
    #[arg(long)]
    pub alpha: f64,
    /// Alice's row (1-3); give together with --col
    #[arg(long, requires = "col")]
    pub row: Option<u8>,
    /// Bob's column (1-3); give together with --row
    #[arg(long, requires = "row")]
    pub col: Option<u8>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of evenly spaced noise levels, endpoints included
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct FidelityArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Evaluate at a single noise level instead of a grid
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Largest accepted coefficient deviation
    #[arg(long, default_value_t = DEFAULT_VERIFY_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub common: Common,
    /// Mean success level to cross; defaults to the classical limit 8/9
    #[arg(long, default_value_t = CLASSICAL_LIMIT)]
    pub target: f64,
}

type BoxError = Box<dyn std::error::Error>;

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return EXIT_OK;
            }
            // clap spreads some messages over several lines; keep everything
            // before the usage block on one line
            let rendered = e.render().to_string();
            let line = rendered
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(stderr, "{line}");
            return EXIT_USAGE;
        }
    };

    let mut buf = Vec::new();
    let outcome = execute(&cli.command, &mut buf);
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = emit(output_of(&cli.command), &buf, stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    code
}

fn output_of(cmd: &Command) -> &PathBuf {
    match cmd {
        Command::Simulate(a) => &a.common.output,
        Command::Sweep(a) | Command::Parametric(a) => &a.common.output,
        Command::Fidelity(a) => &a.grid.common.output,
        Command::Verify(a) => &a.common.output,
        Command::Threshold(a) => &a.common.output,
    }
}

fn emit(path: &PathBuf, data: &[u8], stdout: &mut dyn Write) -> std::io::Result<()> {
    if path.as_os_str() == "-" {
        stdout.write_all(data)?;
        stdout.flush()
    } else {
        fs::write(path, data)
    }
}

fn execute(cmd: &Command, out: &mut Vec<u8>) -> Result<i32, BoxError> {
    match cmd {
        Command::Simulate(args) => simulate(args, out)?,
        Command::Sweep(args) => {
            let kinds = args.common.channel.kinds();
            let tables = kinds
                .iter()
                .map(|&k| experiments::sweep(k, args.points))
                .collect::<Result<Vec<_>, _>>()?;
            write_sweep_csv(out, &tables, args.common.channel.is_all())?;
        }
        Command::Parametric(args) => {
            let curves = args
                .common
                .channel
                .kinds()
                .into_iter()
                .map(|k| Ok((k, experiments::parametric_dataset(k, args.points)?)))
                .collect::<Result<Vec<_>, magicsq::Error>>()?;
            write_parametric_csv(out, &curves, args.common.channel.is_all())?;
        }
        Command::Fidelity(args) => fidelity(args, out)?,
        Command::Verify(args) => {
            let report = experiments::verify_against_reference(args.tolerance)?;
            write_report_csv(out, &report)?;
            if !report.all_passed() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Threshold(args) => {
            let sel = args.common.channel;
            let show = |a: Option<f64>| a.map_or_else(|| "none".to_string(), format_value);
            if sel.is_all() {
                writeln!(out, "channel,alpha")?;
            }
            for kind in sel.kinds() {
                let alpha = experiments::threshold_crossing(kind, args.target)?;
                if sel.is_all() {
                    writeln!(out, "{kind},{}", show(alpha))?;
                } else {
                    writeln!(out, "{}", show(alpha))?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn simulate(args: &SimulateArgs, out: &mut Vec<u8>) -> Result<(), BoxError> {
    let input = match (args.row, args.col) {
        (Some(r), Some(c)) => Some(GameInput::new(r, c)?),
        _ => None,
    };
    let sel = args.common.channel;
    if sel.is_all() {
        let column = input.map_or_else(|| "mean".to_string(), |i| format!("p{}{}", i.row(), i.col()));
        writeln!(out, "channel,{column}")?;
    }
    for kind in sel.kinds() {
        let spec = kind.at(args.alpha)?;
        let value = match input {
            Some(i) => success_probability(i, spec)?,
            None => mean_success(spec)?,
        };
        if sel.is_all() {
            writeln!(out, "{kind},{}", format_value(value))?;
        } else {
            writeln!(out, "{}", format_value(value))?;
        }
    }
    Ok(())
}

fn fidelity(args: &FidelityArgs, out: &mut Vec<u8>) -> Result<(), BoxError> {
    let sel = args.grid.common.channel;
    match args.alpha {
        Some(alpha) => {
            if sel.is_all() {
                writeln!(out, "channel,delta1,delta4")?;
            }
            for kind in sel.kinds() {
                let p = experiments::fidelity_point(kind.at(alpha)?)?;
                if sel.is_all() {
                    writeln!(out, "{kind},{},{}", format_value(p.delta1), format_value(p.delta4))?;
                } else {
                    writeln!(out, "{}", format_value(p.delta4))?;
                }
            }
        }
        None => {
            let curves = sel
                .kinds()
                .into_iter()
                .map(|k| Ok((k, experiments::fidelity_curve(k, args.grid.points)?)))
                .collect::<Result<Vec<_>, magicsq::Error>>()?;
            write_fidelity_csv(out, &curves, sel.is_all())?;
        }
    }
    Ok(())
}
