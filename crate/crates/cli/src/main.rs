use std::path::PathBuf;
use std::process::ExitCode;

use bitangent_cli::commands::{
    cmd_all_counts, cmd_band, cmd_bitangents, cmd_signed_count, solve, RunOptions,
};
use bitangent_cli::corpus::{load_quartic, read_corpus};
use bitangent_cli::plot::{render, Window, DEFAULT_RESOLUTION};
use bitangent_cli::report::{line_json, write_atomically, ReportBuilder, RunReport};
use bitangent_cli::suites::{cmd_verify, Suite, NOT_A_PROOF};
use bitangent_cli::{parse_line, CliError};
use bitangent_core::ProjLine;
use bitangent_numeric::rat::parse_rat;
use bitangent_numeric::Precision;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Bitangents of plane quartics, their types and signed counts.
#[derive(Parser, Debug)]
#[command(name = "bitangents", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Solver {
    /// Seed for the solver's random coordinate changes and generated cases.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Precision cap in bits (default: $BITANGENT_PRECISION_CAP or 4096).
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Args, Debug)]
struct Common {
    #[command(flatten)]
    solver: Solver,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn options(&self) -> RunOptions {
        self.solver.options()
    }
}

impl Solver {
    fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            precision: self
                .precision
                .map(Precision::with_cap)
                .unwrap_or_else(Precision::from_env),
        }
    }
}

#[derive(Args, Debug)]
struct QuarticArg {
    /// Built-in name (trott, fermat, hyperflex) or corpus file.
    quartic: String,
    /// Record to use from a corpus file (default: the first).
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all 28 bitangents with their real classification and types.
    Bitangents {
        #[command(flatten)]
        input: QuarticArg,
        /// Line at infinity for the types (default: 0 0 1).
        #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["L1", "L2", "L3"])]
        line: Option<Vec<String>>,
        #[command(flatten)]
        common: Common,
    },
    /// Signed count and Grothendieck-Witt sum relative to a line at infinity.
    SignedCount {
        #[command(flatten)]
        input: QuarticArg,
        #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["L1", "L2", "L3"])]
        line: Option<Vec<String>>,
        #[command(flatten)]
        common: Common,
    },
    /// Every attainable signed count, each with a witness line at infinity.
    AllCounts {
        #[command(flatten)]
        input: QuarticArg,
        #[command(flatten)]
        common: Common,
    },
    /// Signed counts along the pencil of lines V(y - slope x - c).
    Band {
        #[command(flatten)]
        input: QuarticArg,
        /// Slope as p/q or a decimal.
        #[arg(long, allow_negative_numbers = true)]
        slope: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = ["cap", "main", "klein", "sametype", "conjecture"])]
        suite: String,
        /// Corpus file (cap, klein and conjecture suites).
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Number of generated cases.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Draw the real curve and its bitangents in the chart z = 1 as SVG.
    Plot {
        #[command(flatten)]
        input: QuarticArg,
        /// Line at infinity used to color the bitangents (default: 0 0 1).
        #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["L1", "L2", "L3"])]
        line: Option<Vec<String>>,
        /// SVG output file; the JSON report goes to stdout.
        #[arg(long)]
        out: PathBuf,
        /// Plot window as xmin,xmax,ymin,ymax.
        #[arg(long, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
        window: String,
        /// Grid cells per side for curve tracing.
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        /// Overlay the grates of the line at infinity.
        #[arg(long)]
        grates: bool,
        #[command(flatten)]
        solver: Solver,
    },
}

fn line_or_default(line: &Option<Vec<String>>) -> Result<ProjLine, CliError> {
    match line {
        Some(c) => parse_line(c),
        None => Ok(ProjLine::z_axis_at_infinity()),
    }
}

fn run(cli: Cli) -> Result<(RunReport, Option<PathBuf>), CliError> {
    Ok(match cli.command {
        Command::Bitangents {
            input,
            line,
            common,
        } => {
            let rec = load_quartic(&input.quartic, input.name.as_deref())?;
            let m = line_or_default(&line)?;
            (cmd_bitangents(&rec, &m, common.options())?, common.out)
        }
        Command::SignedCount {
            input,
            line,
            common,
        } => {
            let rec = load_quartic(&input.quartic, input.name.as_deref())?;
            let m = line_or_default(&line)?;
            (cmd_signed_count(&rec, &m, common.options())?, common.out)
        }
        Command::AllCounts { input, common } => {
            let rec = load_quartic(&input.quartic, input.name.as_deref())?;
            (cmd_all_counts(&rec, common.options())?, common.out)
        }
        Command::Band {
            input,
            slope,
            common,
        } => {
            let rec = load_quartic(&input.quartic, input.name.as_deref())?;
            let slope = parse_rat(&slope)
                .ok_or_else(|| CliError::Input(format!("invalid slope {slope:?}")))?;
            (cmd_band(&rec, &slope, common.options())?, common.out)
        }
        Command::Verify {
            suite,
            corpus,
            n,
            common,
        } => {
            let suite: Suite = suite.parse().map_err(CliError::Input)?;
            let corpus = corpus.as_deref().map(read_corpus).transpose()?;
            if suite == Suite::Conjecture {
                eprintln!("{NOT_A_PROOF}");
            }
            (cmd_verify(suite, corpus, n, common.options())?, common.out)
        }
        Command::Plot {
            input,
            line,
            out,
            window,
            resolution,
            grates,
            solver,
        } => {
            let rec = load_quartic(&input.quartic, input.name.as_deref())?;
            let m = line_or_default(&line)?;
            let window = Window::parse(&window)?;
            let opts = solver.options();
            let report = ReportBuilder::new(
                "plot",
                json!({
                    "quartic": rec.to_string(),
                    "line": line_json(&m),
                    "window": window,
                    "resolution": resolution,
                    "grates": grates,
                }),
                opts.seed,
                opts.precision,
            );
            let set = solve(&rec, opts)?;
            let (doc, summary) = render(&set, &m, &window, resolution, grates)?;
            write_atomically(Some(&out), &doc)?;
            (report.finish(true, summary), None)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, out)) => {
            if let Err(e) = report.emit(out.as_deref()) {
                eprintln!("bitangents: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("bitangents: {} check failed", report.command);
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("bitangents: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
