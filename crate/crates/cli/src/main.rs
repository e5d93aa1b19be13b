use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use intensity_cli::cache::GroupCache;
use intensity_cli::commands::{self, RunConfig};
use intensity_cli::report::{Format, Report};
use intensity_cli::{exit, CliError, Result};
use intensity_core::ExecMode;

/// Finite p-group computations: structure, subgroup lattices and intensity.
#[derive(Parser)]
#[command(name = "intensity-lab", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest group order a construction may reach.
    #[arg(long, global = true)]
    max_order: Option<u64>,
    /// Largest number of subgroups a lattice may hold.
    #[arg(long, global = true)]
    max_subgroups: Option<usize>,
    /// Seed for sampled pair checks on large groups.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Series, widths and the structural predicates of a group.
    Analyze { spec: String },
    /// Intensity of a group, with one witness per realized scalar.
    Intensity {
        spec: String,
        /// Candidate automorphisms tried per scalar before giving up.
        #[arg(long)]
        budget_candidates: Option<u64>,
    },
    /// The subgroup lattice up to conjugacy.
    Subgroups {
        spec: String,
        #[arg(long)]
        classes_only: bool,
    },
    /// Subfields, kappa-structures and Lambda-maps of F_3^2.
    KappaStructures,
    /// Recompute every documented fact and compare with its expected value.
    VerifyThesis {
        /// Treat checks skipped for lack of time as failures.
        #[arg(long)]
        strict: bool,
        /// Only run checks of modules starting with this name.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 60)]
        budget_minutes: u64,
    },
    /// Manage the group cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Delete every cached group.
    Clear,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::BAD_INPUT as u8 } else { exit::SUCCESS as u8 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let g = cli.global;
    let mut cfg = RunConfig::default();
    if let Some(n) = g.max_order {
        cfg.max_order = n;
    }
    if let Some(n) = g.max_subgroups {
        cfg.max_subgroups = n;
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(t) = g.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        if t == 1 {
            cfg.mode = ExecMode::Sequential;
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    }
    let cache = GroupCache::from_env();
    let emit = |report: &Report| write_report(report, g.format, g.output.as_deref());
    match cli.command {
        Command::Analyze { spec } => {
            cfg.validate()?;
            emit(&commands::analyze(&commands::read_spec(&spec)?, &cfg, &cache)?)?;
        }
        Command::Intensity { spec, budget_candidates } => {
            if let Some(b) = budget_candidates {
                cfg.budget_candidates = b;
            }
            cfg.validate()?;
            emit(&commands::intensity_report(&commands::read_spec(&spec)?, &cfg, &cache)?)?;
        }
        Command::Subgroups { spec, classes_only } => {
            cfg.validate()?;
            emit(&commands::subgroups(&commands::read_spec(&spec)?, classes_only, &cfg, &cache)?)?;
        }
        Command::KappaStructures => emit(&commands::kappa_structures()?)?,
        Command::VerifyThesis { strict, only, budget_minutes } => {
            cfg.validate()?;
            let budget = Duration::from_secs(budget_minutes.saturating_mul(60));
            let out = commands::verify_thesis(&cfg, strict, only, budget)?;
            print!("{}", out.table);
            if g.output.is_some() {
                emit(&out.report)?;
            }
            return Ok(out.exit_code);
        }
        Command::Cache { action: CacheAction::Clear } => {
            let n = cache.clear()?;
            println!("removed {n} cached group(s) from {}", cache.dir().display());
        }
    }
    Ok(exit::SUCCESS)
}

fn write_report(report: &Report, format: Format, output: Option<&str>) -> Result<()> {
    let text = report.render(format)?;
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write { path: path.to_string(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| CliError::Write { path: "stdout".into(), source })
        }
    }
}
