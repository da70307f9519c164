//! One function per subcommand. Each writes its files under the output
//! directory and returns its one-line summary.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use prescen::dream_causation::{CausalChainGraph, Taxonomy};
use prescen::ingestion::{
    annual_party_distribution, filter_for_analysis, parse_files, write_records, FilterReport, ParseOutcome,
    RecordFormat,
};
use prescen::reporting::{
    control_type_distribution, damage_heatmap, location_distribution, severity_by_scenario, severity_distribution,
    write_frequency_csv, write_frequency_jsonl, write_heatmap_csv, write_heatmap_jsonl, write_table_csv,
    write_table_jsonl, DistributionTable,
};
use prescen::rule_miner::{encode_transactions, fixed3, mine, write_rules_csv, AssociationRule};
use prescen::scenario_engine::{classify_records, evaluate, scenario_frequency_table, EvaluationReport, RuleSet};
use prescen::{percent, CrashRecord, ScenarioId, Schema};

use crate::config::{ConfigError, Settings};

/// Rules used when no rule file is configured.
pub const BUNDLED_RULES: &str = include_str!("../../../data/reference.rules");

fn create(out: &Path, sub: &str, name: &str) -> Result<BufWriter<File>> {
    let dir = out.join(sub);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn write_file(out: &Path, sub: &str, name: &str, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let mut w = create(out, sub, name)?;
    body(&mut w).with_context(|| format!("writing {sub}/{name}"))?;
    w.flush().with_context(|| format!("writing {sub}/{name}"))?;
    Ok(())
}

fn parse_inputs(s: &Settings) -> Result<ParseOutcome> {
    if s.inputs.is_empty() {
        return Err(ConfigError("no input file; pass --input or set `input` in the config".into()).into());
    }
    Ok(parse_files(&s.inputs, Schema::bundled())?)
}

fn write_diagnostics(s: &Settings, parsed: &ParseOutcome) -> Result<()> {
    write_file(&s.out, "reports", "diagnostics.txt", |w| {
        for d in &parsed.diagnostics {
            writeln!(w, "{d}")?;
        }
        Ok(())
    })
}

fn load_rules(s: &Settings) -> Result<RuleSet> {
    match &s.rules {
        Some(p) => RuleSet::load(p).with_context(|| format!("loading rules from {}", p.display())),
        None => RuleSet::parse(BUNDLED_RULES).context("bundled rules"),
    }
}

/// Parsed, validated and filtered records.
struct Analysis {
    parsed: ParseOutcome,
    records: Vec<CrashRecord>,
    filter: FilterReport,
}

fn analysis(s: &Settings) -> Result<Analysis> {
    let parsed = parse_inputs(s)?;
    let (records, filter) = filter_for_analysis(&parsed.records);
    Ok(Analysis { parsed, records, filter })
}

pub fn validate(s: &Settings) -> Result<String> {
    let parsed = parse_inputs(s)?;
    write_diagnostics(s, &parsed)?;
    for d in &parsed.diagnostics {
        eprintln!("{d}");
    }
    Ok(format!(
        "validate: {} valid records, {} rejected rows",
        parsed.records.len(),
        parsed.diagnostics.len()
    ))
}

pub fn ingest(s: &Settings) -> Result<String> {
    ingest_with(s, &analysis(s)?)
}

fn ingest_with(s: &Settings, a: &Analysis) -> Result<String> {
    write_diagnostics(s, &a.parsed)?;
    write_file(&s.out, "reports", "analysis_records.csv", |w| {
        write_records(w, &a.records, RecordFormat::Delimited).map_err(std::io::Error::other)
    })?;
    let f = &a.filter;
    write_file(&s.out, "reports", "filter.csv", |w| {
        writeln!(w, "stage,count")?;
        writeln!(w, "input,{}", f.input)?;
        writeln!(w, "removed_mode,{}", f.removed_mode)?;
        writeln!(w, "removed_vehicle_count,{}", f.removed_vehicle_count)?;
        writeln!(w, "retained,{}", f.retained)
    })?;
    let dist = annual_party_distribution(&a.records);
    write_file(&s.out, "reports", "annual_parties.csv", |w| {
        writeln!(w, "year,party,count,percent")?;
        for (year, parties) in &dist.years {
            let total = dist.year_total(*year) as u64;
            for (party, n) in parties {
                writeln!(w, "{year},{},{n},{}", party.name(), percent::format(*n as u64, total))?;
            }
        }
        Ok(())
    })?;
    Ok(format!(
        "ingest: {} records read, {} retained ({} not autonomous, {} not two-vehicle), {} rejected rows",
        f.input,
        f.retained,
        f.removed_mode,
        f.removed_vehicle_count,
        a.parsed.diagnostics.len()
    ))
}

fn assign(s: &Settings, records: &[CrashRecord]) -> Result<BTreeMap<String, ScenarioId>> {
    let rules = load_rules(s)?;
    let classified = classify_records(records, &rules);
    write_file(&s.out, "assignments", "assignments.csv", |w| {
        let mut c = csv::Writer::from_writer(w);
        c.write_record(["record_id", "scenario_id", "scenario", "rule_id", "manual_check"])?;
        for (r, cl) in records.iter().zip(&classified) {
            c.write_record([
                r.record_id.as_str(),
                &cl.scenario.id().to_string(),
                cl.scenario.name(),
                cl.trace.rule_id.as_deref().unwrap_or(""),
                if cl.trace.low_confidence { "yes" } else { "no" },
            ])?;
        }
        c.flush()
    })?;
    let map: BTreeMap<String, ScenarioId> = records
        .iter()
        .zip(&classified)
        .map(|(r, c)| (r.record_id.clone(), c.scenario))
        .collect();
    let table = scenario_frequency_table(&map);
    write_file(&s.out, "assignments", "frequency.csv", |w| write_frequency_csv(w, &table))?;
    write_file(&s.out, "assignments", "frequency.jsonl", |w| write_frequency_jsonl(w, &table))?;
    Ok(map)
}

pub fn classify(s: &Settings) -> Result<String> {
    let a = analysis(s)?;
    let map = assign(s, &a.records)?;
    let table = scenario_frequency_table(&map);
    let top = table
        .first()
        .map(|r| format!(", top {} ({})", r.scenario.id(), r.count))
        .unwrap_or_default();
    Ok(format!("classify: {} records into {} scenarios{top}", map.len(), table.len()))
}

fn read_truth(path: &Path) -> Result<BTreeMap<String, ScenarioId>> {
    let mut rdr = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (Some(id_col), Some(s_col)) = (col("record_id"), col("scenario_id")) else {
        bail!("{}: header must name record_id and scenario_id", path.display());
    };
    let mut out = BTreeMap::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let id = row.get(id_col).unwrap_or("").to_string();
        let raw = row.get(s_col).unwrap_or("");
        let s = raw
            .trim()
            .parse::<u8>()
            .ok()
            .and_then(ScenarioId::new)
            .with_context(|| format!("{}:{line}: unknown scenario `{raw}`", path.display()))?;
        if out.insert(id.clone(), s).is_some() {
            bail!("{}:{line}: duplicate record_id `{id}`", path.display());
        }
    }
    Ok(out)
}

fn write_evaluation(s: &Settings, report: &EvaluationReport) -> Result<()> {
    let total = report.total as u64;
    write_file(&s.out, "assignments", "evaluation.csv", |w| {
        writeln!(w, "metric,count,percent")?;
        writeln!(w, "total,{},{}", report.total, percent::format(total, total))?;
        writeln!(w, "correct,{},{}", report.correct, percent::format(report.correct as u64, total))?;
        writeln!(w, "false,{},{}", report.false_count, percent::format(report.false_count as u64, total))?;
        writeln!(w, "missed,{},{}", report.missed(), percent::format(report.missed() as u64, total))
    })?;
    write_file(&s.out, "assignments", "confusion.csv", |w| {
        writeln!(w, "truth_id,predicted_id,count")?;
        for (t, row) in &report.confusion {
            for (p, n) in row {
                writeln!(w, "{},{},{n}", t.id(), p.id())?;
            }
        }
        Ok(())
    })?;
    write_file(&s.out, "assignments", "scenario_scores.csv", |w| {
        writeln!(w, "scenario_id,truth,predicted,correct,missed")?;
        for (sc, v) in report.scores() {
            writeln!(w, "{},{},{},{},{}", sc.id(), v.truth_count, v.predicted_count, v.correct, v.missed)?;
        }
        Ok(())
    })
}

fn evaluate_with(s: &Settings, truth_path: &Path, map: &BTreeMap<String, ScenarioId>) -> Result<String> {
    let truth = read_truth(truth_path)?;
    let report = evaluate(map, &truth).with_context(|| format!("comparing with {}", truth_path.display()))?;
    write_evaluation(s, &report)?;
    Ok(format!(
        "evaluate: {} records, FAR {}%, MAR {}%, accuracy {}%",
        report.total,
        percent::format(report.false_count as u64, report.total as u64),
        percent::format(report.missed() as u64, report.total as u64),
        percent::format(report.correct as u64, report.total as u64)
    ))
}

fn truth_path(s: &Settings) -> Result<&PathBuf> {
    s.truth
        .as_ref()
        .ok_or_else(|| ConfigError("evaluate needs --truth or `truth` in the config".into()).into())
}

pub fn evaluate_cmd(s: &Settings) -> Result<String> {
    let truth = truth_path(s)?;
    let a = analysis(s)?;
    let map = assign(s, &a.records)?;
    evaluate_with(s, truth, &map)
}

fn mine_with(s: &Settings, records: &[CrashRecord], map: &BTreeMap<String, ScenarioId>) -> Result<(String, usize)> {
    let tx = encode_transactions(records, &s.selection, map, &s.universe)?;
    let rules = mine(&tx, &s.params, &s.consequent)?;
    write_file(&s.out, "rules", "rules.csv", |w| write_rules_csv(w, &rules).map_err(std::io::Error::other))?;
    let top = rules.first().map(describe_rule).unwrap_or_default();
    let line = format!(
        "mine: {} transactions in universe {}, {} rules{top}",
        tx.len(),
        s.universe,
        rules.len()
    );
    Ok((line, rules.len()))
}

fn describe_rule(r: &AssociationRule) -> String {
    format!(
        ", top {} => {} (support {}, confidence {}, lift {})",
        r.antecedent.join(" + "),
        r.consequent.join(" + "),
        r.support_text(),
        r.confidence_text(),
        r.lift_text()
    )
}

pub fn mine_cmd(s: &Settings) -> Result<String> {
    let a = analysis(s)?;
    let map = assign(s, &a.records)?;
    Ok(mine_with(s, &a.records, &map)?.0)
}

pub fn dream(s: &Settings) -> Result<String> {
    let path = s
        .chains
        .as_ref()
        .ok_or_else(|| ConfigError("dream needs --chains or `chains` in the config".into()))?;
    dream_from(s, path)
}

fn dream_from(s: &Settings, path: &Path) -> Result<String> {
    let mut taxonomy = Taxonomy::bundled();
    if let Some(t) = &s.taxonomy {
        let text = fs::read_to_string(t).with_context(|| format!("reading {}", t.display()))?;
        taxonomy.extend_from_str(&text).with_context(|| format!("taxonomy {}", t.display()))?;
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graph = CausalChainGraph::from_chain_text(taxonomy, &text).with_context(|| format!("chains {}", path.display()))?;
    let agg = graph.aggregate();
    write_file(&s.out, "dream", "graph.dot", |w| w.write_all(graph.emit_graph().as_bytes()))?;
    write_file(&s.out, "dream", "links.csv", |w| {
        writeln!(w, "from,to,crashes")?;
        for ((a, b), n) in &agg.links {
            writeln!(w, "{a},{b},{n}")?;
        }
        Ok(())
    })?;
    let total = graph.crash_count();
    write_file(&s.out, "dream", "factors.csv", |w| {
        writeln!(w, "label,kind,crashes,total,share")?;
        for (label, n) in &agg.nodes {
            let kind = graph
                .taxonomy()
                .get(label)
                .map(|t| format!("{:?}", t.kind()).to_lowercase())
                .unwrap_or_default();
            writeln!(w, "{label},{kind},{n},{total},{}", fixed3(*n as u128, total as u128))?;
        }
        Ok(())
    })?;
    Ok(format!(
        "dream: {total} crashes, {} factors, {} links",
        agg.nodes.len(),
        agg.links.len()
    ))
}

fn write_table(out: &Path, stem: &str, table: &DistributionTable) -> Result<()> {
    write_file(out, "reports", &format!("{stem}.csv"), |w| write_table_csv(w, table))?;
    write_file(out, "reports", &format!("{stem}.jsonl"), |w| write_table_jsonl(w, table))
}

fn report_with(s: &Settings, records: &[CrashRecord], map: &BTreeMap<String, ScenarioId>) -> Result<String> {
    write_table(&s.out, "location", &location_distribution(records))?;
    write_table(&s.out, "control_type", &control_type_distribution(records))?;
    write_table(&s.out, "severity", &severity_distribution(records))?;
    let heat = damage_heatmap(records);
    write_file(&s.out, "reports", "heatmap.csv", |w| write_heatmap_csv(w, &heat))?;
    write_file(&s.out, "reports", "heatmap.jsonl", |w| write_heatmap_jsonl(w, &heat))?;
    let groups = severity_by_scenario(map, records, &s.groups);
    write_file(&s.out, "reports", "severity_by_scenario.csv", |w| {
        writeln!(w, "group,code,label,count,percent")?;
        for (name, t) in &groups {
            for r in &t.rows {
                writeln!(w, "{name},{},{},{},{}", r.code, r.label, r.count, percent::format(r.count as u64, t.total as u64))?;
            }
        }
        Ok(())
    })?;
    Ok(format!(
        "report: {} records, {} severity groups, {} damage-zone incidences",
        records.len(),
        groups.len(),
        heat.total
    ))
}

pub fn report(s: &Settings) -> Result<String> {
    let a = analysis(s)?;
    let map = assign(s, &a.records)?;
    report_with(s, &a.records, &map)
}

/// All stages in order. Stage summaries and timings go to `run.log`.
pub fn pipeline(s: &Settings) -> Result<String> {
    let mut log = Vec::new();
    let mut stage = |name: &str, start: std::time::Instant, line: &str| {
        log.push(format!("{line} [{name} {:.3}s]", start.elapsed().as_secs_f64()));
    };
    let now = std::time::Instant::now;

    let t = now();
    let a = analysis(s)?;
    stage("ingest", t, &ingest_with(s, &a)?);

    let t = now();
    let map = assign(s, &a.records)?;
    stage("classify", t, &format!("classify: {} records", map.len()));

    let mut eval = String::new();
    if let Some(truth) = &s.truth {
        let t = now();
        let line = evaluate_with(s, truth, &map)?;
        stage("evaluate", t, &line);
        eval = format!(", {}", line.split_once("records, ").map_or(line.as_str(), |(_, rest)| rest));
    }

    let t = now();
    let (line, rule_count) = mine_with(s, &a.records, &map)?;
    stage("mine", t, &line);

    if let Some(chains) = &s.chains {
        let t = now();
        stage("dream", t, &dream_from(s, chains)?);
    }

    let t = now();
    stage("report", t, &report_with(s, &a.records, &map)?);

    fs::create_dir_all(&s.out)?;
    let mut text = log.join("\n");
    text.push('\n');
    fs::write(s.out.join("run.log"), text).context("writing run.log")?;

    Ok(format!(
        "pipeline: {} records retained, {} classified, {rule_count} rules{eval}",
        a.filter.retained,
        map.len()
    ))
}
