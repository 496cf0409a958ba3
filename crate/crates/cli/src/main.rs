//! `drgwb`: parameter analysis, feasibility certificates, integrality sweeps,
//! graph checks, Terwilliger module tables and uniform-structure verdicts.
//!
//! Exit codes: 0 when a run completes (whatever the verdict), 2 for usage or
//! input errors, 3 when an internal invariant fails.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use drgwb_core::error::Error;

use report::Format;

#[derive(Debug, Parser)]
#[command(name = "drgwb", version, about = "Exact feasibility and Terwilliger-algebra tools for distance-regular graphs")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Flat `key = value` file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Intersection array, spectrum and local-graph data of classical parameters.
    Params(ParamsArgs),
    /// Feasibility verdict with certificates.
    Feasibility(FeasibilityArgs),
    /// Integrality sweep of k_D and f_D for the second family, D = 0 (mod 6).
    Sweep(SweepArgs),
    /// Distance-regularity and spectrum of a concrete graph.
    Graph(GraphArgs),
    /// Decomposition of the standard module into irreducible modules.
    Modules(ModulesArgs),
    /// Uniform-structure verdict with respect to a base vertex.
    Uniform(UniformArgs),
}

#[derive(Debug, Args)]
struct ParamsArgs {
    #[arg(short = 'D', long = "diameter")]
    d: u32,
    #[arg(short, long, allow_negative_numbers = true)]
    q: i64,
    #[arg(long, allow_negative_numbers = true)]
    alpha: String,
    #[arg(long, allow_negative_numbers = true)]
    beta: String,
}

#[derive(Debug, Args)]
struct FeasibilityArgs {
    /// Parameter family 1 (alpha = q + 1) or 2 (alpha = q).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), conflicts_with_all = ["alpha", "beta"])]
    family: Option<u8>,
    #[arg(short = 'D', long = "diameter")]
    d: u32,
    #[arg(short, long, allow_negative_numbers = true)]
    q: i64,
    #[arg(long, allow_negative_numbers = true, requires = "beta")]
    alpha: Option<String>,
    #[arg(long, allow_negative_numbers = true, requires = "alpha")]
    beta: Option<String>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    q_max: u64,
    #[arg(long)]
    d_max: u32,
    /// Worker threads; 0 picks the number of cores.
    #[arg(short, long, default_value_t = 0)]
    jobs: usize,
    /// Resumable per-cell cache; `sweep.tsv` is written here at the end.
    #[arg(long, env = "DRGWB_CHECKPOINT_DIR")]
    checkpoint_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct Source {
    /// Edge-list file: vertex count, then one `u v` pair per line.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Generator spec such as `hypercube:4` or `folded-hypercube:5`.
    #[arg(long = "gen")]
    generator: Option<String>,
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[command(flatten)]
    source: Source,
    /// Also check constancy of every p^h_ij.
    #[arg(long)]
    full: bool,
    /// Print the graph in edge-list format instead of a report.
    #[arg(long)]
    edge_list: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgebraMode {
    /// Generated by A and the dual idempotents.
    Full,
    /// Generated by L, R and the dual idempotents (flat edges removed).
    Quotient,
}

#[derive(Debug, Args)]
struct ModulesArgs {
    #[command(flatten)]
    source: Source,
    #[arg(short = 'x', long = "base", default_value_t = 0)]
    x: usize,
    #[arg(long, value_enum, default_value_t = AlgebraMode::Full)]
    mode: AlgebraMode,
}

#[derive(Debug, Args)]
struct UniformArgs {
    #[command(flatten)]
    source: Source,
    #[arg(short = 'x', long = "base", default_value_t = 0)]
    x: usize,
    /// Re-check a JSON report previously written by `uniform`.
    #[arg(long, conflicts_with_all = ["file", "generator"])]
    verify: Option<PathBuf>,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::DimensionMismatch(_) | Error::NotSquare { .. } | Error::ZeroPolynomial => {
                Failure::Internal(e.into())
            }
            _ => Failure::Input(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<Error>() {
            Ok(core) => core.into(),
            Err(e) => Failure::Input(e),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let report = match &cli.command {
        Command::Params(a) => commands::params(a.d, a.q, &a.alpha, &a.beta)?,
        Command::Feasibility(a) => match (a.family, &a.alpha, &a.beta) {
            (Some(f), _, _) => commands::feasibility_family(f, a.q, a.d)?,
            (None, Some(alpha), Some(beta)) => commands::feasibility_params(a.d, a.q, alpha, beta)?,
            _ => return Err(Failure::Input(anyhow::anyhow!("give --family or both --alpha and --beta"))),
        },
        Command::Sweep(a) => commands::sweep(a.q_max, a.d_max, a.jobs, a.checkpoint_dir.clone())?,
        Command::Graph(a) if a.edge_list => commands::edge_list(&load(&a.source)?),
        Command::Graph(a) => commands::graph(&load(&a.source)?, a.full)?,
        Command::Modules(a) => commands::modules(&load(&a.source)?, a.x, a.mode == AlgebraMode::Quotient)?,
        Command::Uniform(a) => match &a.verify {
            Some(path) => commands::verify_uniform(path)?,
            None => commands::uniform(&load(&a.source)?, a.x)?,
        },
    };
    let out = report.render(cli.format).map_err(Failure::Internal)?;
    match &cli.output {
        Some(path) => std::fs::write(path, out)
            .map_err(|e| Failure::Input(anyhow::anyhow!("writing {}: {e}", path.display())))?,
        None => print!("{out}"),
    }
    Ok(())
}

fn load(src: &Source) -> Result<drgwb_core::graphs::Graph, Failure> {
    Ok(match (&src.file, &src.generator) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(anyhow::anyhow!("reading {}: {e}", path.display())))?;
            let name = path.file_stem().map_or("graph".into(), |s| s.to_string_lossy().into_owned());
            drgwb_core::graphs::Graph::from_edge_list(&text, name)?
        }
        (None, Some(spec)) => drgwb_core::graphs::generate(spec)?,
        (None, None) => return Err(Failure::Input(anyhow::anyhow!("give --file or --gen"))),
    })
}

fn main() -> ExitCode {
    let mut args: Vec<String> = std::env::args().collect();
    if let Some(path) = config::find_path(&args) {
        if let Err(e) = config::merge(&mut args, path.as_ref()) {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Input(e))) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(e))) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(3)
        }
        Err(_) => {
            eprintln!("internal error: assertion failed");
            ExitCode::from(3)
        }
    }
}
