//! `prescen` command line: ingestion, classification, evaluation, rule
//! mining, causation graphs and descriptive reports.
//!
//! Exit status: 0 on success, 2 for usage and configuration errors, 1 for
//! any other failure.

pub mod config;
mod stages;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{ConfigError, Settings, CONFIG_ENV};
pub use stages::BUNDLED_RULES;

#[derive(Debug, Parser)]
#[command(name = "prescen", version, about = "Pre-crash scenario analytics for automated-vehicle crash reports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse and validate records; list rejected rows.
    Validate,
    /// Parse, validate and filter to the analysis set.
    Ingest,
    /// Assign a scenario to every analysis record.
    Classify,
    /// Classify and score against ground-truth labels.
    Evaluate,
    /// Classify, then mine association rules.
    Mine,
    /// Aggregate causation chains into a graph.
    Dream,
    /// Descriptive tables and the damage heatmap.
    Report,
    /// Every stage in order.
    Pipeline,
}

/// Flags override the matching config keys.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Flags {
    /// Config file (TOML). Defaults to $PRESCEN_CONFIG when set.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Record file (.csv, or .jsonl/.ndjson for JSON lines). Repeatable.
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,
    /// Mapping rule file. Defaults to the bundled reference rules.
    #[arg(long, global = true)]
    pub rules: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Ground-truth labels: CSV with record_id and scenario_id.
    #[arg(long, global = true)]
    pub truth: Option<PathBuf>,
    /// Causation chain file.
    #[arg(long, global = true)]
    pub chains: Option<PathBuf>,
    /// Extra taxonomy terms for the chain file.
    #[arg(long, global = true)]
    pub taxonomy: Option<PathBuf>,
    #[arg(long, global = true)]
    pub min_support: Option<f64>,
    #[arg(long, global = true)]
    pub min_confidence: Option<f64>,
    #[arg(long, global = true)]
    pub min_lift: Option<f64>,
    #[arg(long, global = true)]
    pub min_len: Option<usize>,
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Mining target: `scenario` (any scenario label), `any`, or an id.
    #[arg(long, global = true)]
    pub scenario: Option<String>,
    /// Mining universe: `all`, `rear-end`, `intersection` or ids like `20,24`.
    #[arg(long, global = true)]
    pub universe: Option<String>,
    /// Fields to mine, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub fields: Vec<String>,
    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

/// Runs one subcommand on resolved settings and returns its summary line.
pub fn execute(command: Command, settings: &Settings) -> anyhow::Result<String> {
    let go = || match command {
        Command::Validate => stages::validate(settings),
        Command::Ingest => stages::ingest(settings),
        Command::Classify => stages::classify(settings),
        Command::Evaluate => stages::evaluate_cmd(settings),
        Command::Mine => stages::mine_cmd(settings),
        Command::Dream => stages::dream(settings),
        Command::Report => stages::report(settings),
        Command::Pipeline => stages::pipeline(settings),
    };
    match settings.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(anyhow::Error::from)?
            .install(go),
        None => go(),
    }
}

/// Parses `args` (program name first), runs, prints, and returns the exit
/// status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = Settings::resolve(&cli.flags).and_then(|s| execute(cli.command, &s));
    match outcome {
        Ok(line) => {
            println!("{line}");
            0
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ConfigError>().is_some() {
                2
            } else {
                1
            }
        }
    }
}
