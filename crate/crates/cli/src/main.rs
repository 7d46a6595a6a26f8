use clap::{Args, Parser, Subcommand};
use fracrd_cli::commands::{self, CliError, CliResult, EXIT_ERROR};
use fracrd_cli::{parse_config, RunConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fracrd", version, about = "Time-fractional nonlocal reaction-diffusion experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Single simulation; exit 2 on blow-up or divergence.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Verification suite by id (AC5), name (comparison) or `all`.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// Optional config, only read for its seed.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// First eigenpair of the fractional operator.
    Eigen {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Blow-up functional, window and a run checked against it.
    Blowup {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Parallel runs over one parameter; axis and values default to the config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        axis: Option<String>,
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        #[command(flatten)]
        common: Common,
    },
}

fn load(path: &Path, seed: Option<u64>) -> CliResult<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg = parse_config(&text)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn threads(n: Option<usize>) -> CliResult<()> {
    if let Some(n) = n {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    match cli.cmd {
        Cmd::Run { config, common } => {
            threads(common.threads)?;
            commands::cmd_run(&load(&config, common.seed)?, &common.out)
        }
        Cmd::Verify { suite, config, common } => {
            threads(common.threads)?;
            let seed = match (common.seed, config) {
                (Some(s), _) => s,
                (None, Some(path)) => load(&path, None)?.seed,
                (None, None) => 0,
            };
            commands::cmd_verify(&suite, &common.out, seed)
        }
        Cmd::Eigen { config, common } => {
            threads(common.threads)?;
            commands::cmd_eigen(&load(&config, common.seed)?, &common.out)
        }
        Cmd::Blowup { config, common } => {
            threads(common.threads)?;
            commands::cmd_blowup(&load(&config, common.seed)?, &common.out)
        }
        Cmd::Sweep { config, axis, values, common } => {
            threads(common.threads)?;
            let cfg = load(&config, common.seed)?;
            let axis = axis
                .or_else(|| cfg.sweep_axis.clone())
                .ok_or_else(|| CliError::Usage("no sweep axis: pass --axis or set sweep_axis".into()))?;
            let values = values.unwrap_or_else(|| cfg.sweep_values.clone());
            commands::cmd_sweep(&cfg, &axis, &values, &common.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
