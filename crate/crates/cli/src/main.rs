use anyhow::Result;
use boardbench_cli::config::{Overrides, RunConfig};
use boardbench_cli::runner::EvalOptions;
use boardbench_cli::{cmd_gen, cmd_play, cmd_rate, cmd_report, cmd_run};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "boardbench", version, about = "Board-game evaluation harness for vision-language models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an offline dataset: board images plus manifest.json
    Gen(CommonArgs),
    /// Evaluate an agent over a generated dataset
    Run(RunArgs),
    /// Play full games against the scripted opponents
    Play(CommonArgs),
    /// Print the ability-rating tables, divergences, and difficulty chains
    Rate,
    /// Merge metrics files from run/play into one report
    Report(ReportArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON config file; built-in defaults apply when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Games to include, comma-separated (ttt,reversi,sudoku,minesweeper,gomoku,chess)
    #[arg(long, value_delimiter = ',')]
    games: Vec<String>,
    /// Tasks to include, comma-separated (perceiving,qa,rule)
    #[arg(long, value_delimiter = ',')]
    tasks: Vec<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads
    #[arg(long)]
    parallelism: Option<usize>,
    /// Agent to evaluate: random, oracle, or http
    #[arg(long)]
    agent: Option<String>,
    /// Samples per (game, task) for gen; sessions per game for play
    #[arg(long)]
    samples: Option<u32>,
    /// Continue an interrupted run instead of refusing to overwrite it
    #[arg(long)]
    resume: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Dataset directory produced by gen (holds manifest.json); results and
    /// metrics are written next to it
    #[arg(long)]
    out: PathBuf,
    /// Config file supplying adapter settings for the http agent
    #[arg(long)]
    config: Option<PathBuf>,
    /// Agent to evaluate: random, oracle, or http
    #[arg(long)]
    agent: Option<String>,
    /// Worker threads
    #[arg(long)]
    parallelism: Option<usize>,
    /// Continue an interrupted run instead of refusing to overwrite it
    #[arg(long)]
    resume: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// Metrics files, or directories containing metrics-*.json
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Directory for report.json and report.txt; prints only when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn effective_config(args: &CommonArgs) -> Result<RunConfig> {
    let mut config = RunConfig::load(args.config.as_deref())?;
    config.apply(&Overrides {
        seed: args.seed,
        games: args.games.clone(),
        tasks: args.tasks.clone(),
        out: args.out.clone(),
        parallelism: args.parallelism,
        agent: args.agent.clone(),
        samples: args.samples,
    })?;
    Ok(config)
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Gen(args) => {
            cmd_gen(&effective_config(&args)?)?;
        }
        Command::Run(args) => {
            let opts = EvalOptions {
                agent: args.agent,
                parallelism: args.parallelism,
                adapter: match args.config {
                    Some(path) => Some(RunConfig::load(Some(&path))?.adapter),
                    None => None,
                },
                resume: args.resume,
            };
            cmd_run(&args.out, &opts)?;
        }
        Command::Play(args) => {
            let resume = args.resume;
            cmd_play(&effective_config(&args)?, resume)?;
        }
        Command::Rate => cmd_rate()?,
        Command::Report(args) => {
            cmd_report(&args.inputs, args.out.as_deref())?;
        }
    }
    Ok(())
}
