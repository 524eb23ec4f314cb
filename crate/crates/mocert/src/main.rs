use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mocert::cli::{CliCommand, EpsilonSpec, OutputFormat, RunConfig};

/// Certification toolkit for multiobjective optimization: approximate
/// Pareto membership, Geoffrion properness with preset trade-off bounds,
/// and modified approximate KKT conditions on finite candidate sets.
#[derive(Parser)]
#[command(name = "mocert", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Registry key or path to a JSON instance configuration.
    #[arg(long, default_value = "biobjective-quadratic")]
    instance: String,
    /// Query point as a comma-separated coordinate list.
    #[arg(long, value_parser = parse_floats)]
    point: Option<Vec<f64>>,
    /// Approximation budget: a scalar or a comma-separated vector.
    #[arg(long)]
    epsilon: Option<String>,
    /// Grid resolution override for the candidate set.
    #[arg(long)]
    grid_resolution: Option<usize>,
    /// Numerical tolerance for residual checks.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Seed echoed into reports for sampling-based candidate sets.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV file of candidates replacing the instance's default set.
    #[arg(long)]
    candidates: Option<PathBuf>,
    /// Report format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Report destination; stdout when omitted. Relative paths honor
    /// the MOCERT_OUTPUT_DIR environment variable.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate Pareto membership over the candidate set.
    Pareto {
        #[command(flatten)]
        common: Common,
    },
    /// Geoffrion properness at a preset trade-off bound.
    Geoffrion {
        #[command(flatten)]
        common: Common,
        /// Trade-off bound.
        #[arg(long)]
        m_hat: f64,
        /// Weight vector (reserved for report context).
        #[arg(long, value_parser = parse_floats)]
        weights: Option<Vec<f64>>,
    },
    /// KKT residual and modified approximate KKT membership at a point.
    Kkt {
        #[command(flatten)]
        common: Common,
    },
    /// Saddle-point certificates of the per-objective Lagrangian.
    Saddle {
        #[command(flatten)]
        common: Common,
        /// Trade-off bound.
        #[arg(long)]
        m_hat: f64,
    },
    /// Certified approximation sequence toward a limit guess.
    Sequence {
        #[command(flatten)]
        common: Common,
        /// First budget of the geometric schedule.
        #[arg(long, default_value_t = 0.1)]
        eps0: f64,
        /// Geometric decay factor in (0, 1).
        #[arg(long, default_value_t = 0.5)]
        factor: f64,
        /// Number of schedule entries.
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Reproduce the built-in discrete four-point example end to end.
    Example {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_floats(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect()
}

fn build_config(command: CliCommand, common: &Common) -> Result<RunConfig, String> {
    let mut config = RunConfig::new(command, common.instance.clone());
    config.point = common.point.clone();
    if let Some(text) = &common.epsilon {
        config.epsilon = EpsilonSpec::parse(text).map_err(|e| e.to_string())?;
    }
    config.grid_resolution = common.grid_resolution;
    config.tol = common.tol;
    config.seed = common.seed;
    config.candidates = common.candidates.clone();
    config.output_format = if common.format == "csv" {
        OutputFormat::Csv
    } else {
        OutputFormat::Json
    };
    config.output_path = common.output.clone();
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match &cli.command {
        Command::Pareto { common } => build_config(CliCommand::Pareto, common),
        Command::Geoffrion { common, m_hat, weights } => {
            build_config(CliCommand::Geoffrion, common).map(|mut c| {
                c.m_hat = Some(*m_hat);
                c.weights = weights.clone();
                c
            })
        }
        Command::Kkt { common } => build_config(CliCommand::Kkt, common),
        Command::Saddle { common, m_hat } => {
            build_config(CliCommand::Saddle, common).map(|mut c| {
                c.m_hat = Some(*m_hat);
                c
            })
        }
        Command::Sequence { common, eps0, factor, count } => {
            build_config(CliCommand::Sequence, common).map(|mut c| {
                c.eps0 = *eps0;
                c.factor = *factor;
                c.count = *count;
                c
            })
        }
        Command::Example { common } => build_config(CliCommand::Example, common),
    };
    let config = match config {
        Ok(c) => c,
        Err(message) => {
            eprintln!("{message}");
            return ExitCode::from(2);
        }
    };
    let (code, report) = mocert::cli::run(&config);
    if config.output_path.is_none() {
        println!("{report}");
    }
    ExitCode::from(code.clamp(0, 255) as u8)
}
