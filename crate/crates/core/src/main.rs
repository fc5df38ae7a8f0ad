use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use noah::baselines::run_baseline;
use noah::engine;
use noah::harness::{emit_report, run_campaign, CampaignConfig};
use noah::objectives::Objective;
use noah::{Method, NoahError, RunResult};

#[derive(Parser)]
#[command(
    name = "noah",
    version,
    about = "Current-aware swarm optimisation with irreversible settlement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single run of one method on the first configured objective; prints JSON.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "noah")]
        method: String,
    },
    /// Every configured (objective, method, seed) run plus the report files.
    Campaign {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `base_seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides `out`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Parses and checks a config file without running anything.
    ValidateConfig {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Serialize)]
struct RunOutput<'a> {
    config: &'a CampaignConfig,
    result: &'a RunResult,
}

fn load(path: Option<&PathBuf>) -> Result<CampaignConfig, NoahError> {
    match path {
        Some(p) => CampaignConfig::load(p),
        None => Ok(CampaignConfig::default()),
    }
}

fn run(cli: Cli) -> Result<(), NoahError> {
    match cli.command {
        Command::Run {
            config,
            seed,
            method,
        } => {
            let cfg = load(config.as_ref())?.synced();
            let method: Method = method.parse()?;
            let seed = seed.unwrap_or(cfg.base_seed);
            let objective = Objective::by_name(&cfg.objectives[0], cfg.domain()?)?;
            let flow = cfg.flow_field()?;
            let result = match method {
                Method::Noah => engine::run(&objective, &flow, &cfg.noah_params(), seed)?,
                m => run_baseline(m, &objective, &flow, &cfg.baseline_config(None), seed)?,
            };
            let text = serde_json::to_string_pretty(&RunOutput {
                config: &cfg,
                result: &result,
            })?;
            println!("{text}");
        }
        Command::Campaign {
            config,
            seed,
            out,
            threads,
        } => {
            let mut cfg = CampaignConfig::load(&config)?;
            if let Some(s) = seed {
                cfg.base_seed = s;
            }
            if let Some(o) = out {
                cfg.out = o;
            }
            if threads == Some(0) {
                return Err(NoahError::Config("--threads must be >= 1".into()));
            }
            let outcome = run_campaign(&cfg, threads)?;
            let files = emit_report(&outcome, &cfg.out)?;
            for b in &outcome.report.benchmarks {
                for m in &b.methods {
                    println!(
                        "{:<16} {:<7} mean {:>12.6} std {:>10.6} success {}",
                        b.objective,
                        m.method,
                        m.fitness.mean,
                        m.fitness.std,
                        m.success_rate.map_or("-".into(), |r| format!("{:.2}", r)),
                    );
                }
            }
            for flag in &outcome.report.flags {
                println!("flag: {flag}");
            }
            println!("wrote {} files to {}", files.len(), cfg.out.display());
        }
        Command::ValidateConfig { config } => {
            let cfg = CampaignConfig::load(&config)?;
            println!(
                "ok: {} objective(s), {} method(s), {} seed(s)",
                cfg.objectives.len(),
                cfg.methods.len(),
                cfg.n_seeds
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_config() => {
            eprintln!("config error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
