//! Run configuration: a TOML file, overridden key by key by flags.
//!
//! Relative paths in the file resolve against the file's directory.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use prescen::reporting::ScenarioGroup;
use prescen::rule_miner::{ConsequentFilter, FieldSelection, MiningParams, Universe};
use prescen::ScenarioId;
use serde::Deserialize;

use crate::Flags;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "PRESCEN_CONFIG";

/// A bad config file or flag value. Exits with status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FileConfig {
    pub input: Vec<PathBuf>,
    pub rules: Option<PathBuf>,
    pub truth: Option<PathBuf>,
    pub chains: Option<PathBuf>,
    pub taxonomy: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub mining: MiningSection,
    pub report: ReportSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MiningSection {
    pub min_support: f64,
    pub min_confidence: f64,
    pub min_lift: f64,
    pub min_len: usize,
    pub max_len: usize,
    pub fields: Option<Vec<String>>,
    pub universe: String,
    pub scenario: String,
}

impl Default for MiningSection {
    fn default() -> Self {
        let p = MiningParams::default();
        MiningSection {
            min_support: p.min_support,
            min_confidence: p.min_confidence,
            min_lift: p.min_lift,
            min_len: p.min_len,
            max_len: p.max_len,
            fields: None,
            universe: "all".into(),
            scenario: "scenario".into(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReportSection {
    pub severity_groups: Vec<GroupSection>,
}

impl Default for ReportSection {
    fn default() -> Self {
        let g = |g: ScenarioGroup| GroupSection {
            name: g.name,
            scenarios: g.scenarios.iter().map(|s| s.id()).collect(),
            intersection_only: g.intersection_only,
        };
        ReportSection {
            severity_groups: vec![g(ScenarioGroup::intersection()), g(ScenarioGroup::rear_end())],
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub name: String,
    pub scenarios: Vec<u8>,
    #[serde(default)]
    pub intersection_only: bool,
}

/// Everything a stage needs, after merging file, flags and defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub inputs: Vec<PathBuf>,
    pub rules: Option<PathBuf>,
    pub truth: Option<PathBuf>,
    pub chains: Option<PathBuf>,
    pub taxonomy: Option<PathBuf>,
    pub out: PathBuf,
    pub threads: Option<usize>,
    pub params: MiningParams,
    pub selection: FieldSelection,
    pub universe: Universe,
    pub consequent: ConsequentFilter,
    pub groups: Vec<ScenarioGroup>,
}

pub fn parse_consequent(s: &str) -> Result<ConsequentFilter, String> {
    match s.trim() {
        "scenario" => Ok(ConsequentFilter::AnyScenario),
        "any" => Ok(ConsequentFilter::Any),
        id => id
            .parse::<u8>()
            .ok()
            .and_then(ScenarioId::new)
            .map(ConsequentFilter::Scenario)
            .ok_or_else(|| format!("bad scenario target `{s}`: expected `scenario`, `any` or a scenario id")),
    }
}

fn load_file(path: &Path) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg: FileConfig = toml::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new(""));
    let rebase = |p: &mut PathBuf| {
        if p.is_relative() {
            *p = base.join(&*p);
        }
    };
    cfg.input.iter_mut().for_each(rebase);
    for p in [&mut cfg.rules, &mut cfg.truth, &mut cfg.chains, &mut cfg.taxonomy, &mut cfg.out]
        .into_iter()
        .flatten()
    {
        rebase(p);
    }
    Ok(cfg)
}

impl Settings {
    pub fn resolve(flags: &Flags) -> anyhow::Result<Settings> {
        let path = flags
            .config
            .clone()
            .or_else(|| std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
        let cfg = match path {
            Some(p) => load_file(&p)?,
            None => FileConfig::default(),
        };

        let mut m = cfg.mining;
        if let Some(v) = flags.min_support {
            m.min_support = v;
        }
        if let Some(v) = flags.min_confidence {
            m.min_confidence = v;
        }
        if let Some(v) = flags.min_lift {
            m.min_lift = v;
        }
        if let Some(v) = flags.min_len {
            m.min_len = v;
        }
        if let Some(v) = flags.max_len {
            m.max_len = v;
        }
        if let Some(v) = &flags.universe {
            m.universe = v.clone();
        }
        if let Some(v) = &flags.scenario {
            m.scenario = v.clone();
        }
        if !flags.fields.is_empty() {
            m.fields = Some(flags.fields.clone());
        }

        let params = MiningParams {
            min_support: m.min_support,
            min_confidence: m.min_confidence,
            min_lift: m.min_lift,
            min_len: m.min_len,
            max_len: m.max_len,
        };
        params.check().map_err(|e| bad(e.to_string()))?;
        if !m.min_lift.is_finite() || m.min_lift < 0.0 {
            return Err(bad(format!("min_lift {} must be a finite non-negative number", m.min_lift)));
        }
        let selection = match &m.fields {
            Some(names) => FieldSelection::parse(names).map_err(|e| bad(e.to_string()))?,
            None => FieldSelection::environment(),
        };
        let universe: Universe = m.universe.parse().map_err(|e: prescen::rule_miner::MiningError| bad(e.to_string()))?;
        let consequent = parse_consequent(&m.scenario).map_err(bad)?;

        let mut groups = Vec::new();
        for g in cfg.report.severity_groups {
            let scenarios = g
                .scenarios
                .iter()
                .map(|&id| ScenarioId::new(id).ok_or_else(|| bad(format!("group `{}`: unknown scenario {id}", g.name))))
                .collect::<anyhow::Result<BTreeSet<_>>>()?;
            groups.push(ScenarioGroup {
                name: g.name,
                scenarios,
                intersection_only: g.intersection_only,
            });
        }

        if flags.threads == Some(0) || cfg.threads == Some(0) {
            return Err(bad("threads must be at least 1"));
        }

        Ok(Settings {
            inputs: if flags.input.is_empty() { cfg.input } else { flags.input.clone() },
            rules: flags.rules.clone().or(cfg.rules),
            truth: flags.truth.clone().or(cfg.truth),
            chains: flags.chains.clone().or(cfg.chains),
            taxonomy: flags.taxonomy.clone().or(cfg.taxonomy),
            out: flags.out.clone().or(cfg.out).unwrap_or_else(|| PathBuf::from("out")),
            threads: flags.threads.or(cfg.threads),
            params,
            selection,
            universe,
            consequent,
            groups,
        })
    }
}
