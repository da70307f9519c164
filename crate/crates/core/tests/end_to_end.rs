//! Library stages chained on the bundled corpus.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use prescen::dream_causation::{CausalChainGraph, Taxonomy};
use prescen::ingestion::{filter_for_analysis, parse_reader, parse_records, write_records, RecordFormat};
use prescen::reporting::{damage_heatmap, location_distribution, write_table_csv};
use prescen::rule_miner::{encode_transactions, mine, write_rules_csv, ConsequentFilter, FieldSelection, MiningParams, Universe};
use prescen::scenario_engine::{classify_all, evaluate, scenario_frequency_table, RuleSet};
use prescen::{percent, CrashRecord, DamageZone, ScenarioId, Schema};
use proptest::prelude::*;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn analysis_records() -> Vec<CrashRecord> {
    static RECORDS: OnceLock<Vec<CrashRecord>> = OnceLock::new();
    RECORDS
        .get_or_init(|| {
            let parsed = parse_records(&data("corpus_raw.csv")).unwrap();
            assert!(parsed.diagnostics.is_empty());
            filter_for_analysis(&parsed.records).0
        })
        .clone()
}

fn rules() -> RuleSet {
    RuleSet::load(&data("reference.rules")).unwrap()
}

#[test]
fn json_lines_round_trip_preserves_records() {
    let records = analysis_records();
    let mut buf = Vec::new();
    write_records(&mut buf, &records, RecordFormat::JsonLines).unwrap();
    let back = parse_reader(buf.as_slice(), RecordFormat::JsonLines, Schema::bundled()).unwrap();
    assert!(back.diagnostics.is_empty());
    assert_eq!(back.records, records);
}

#[test]
fn classification_and_scoring() {
    let records = analysis_records();
    let assigned = classify_all(&records, &rules());
    assert_eq!(assigned.len(), 322);
    let table = scenario_frequency_table(&assigned);
    assert_eq!(table.len(), 24);
    assert_eq!(table.iter().map(|r| r.count).sum::<usize>(), 322);

    // Perfect labels score perfectly.
    let report = evaluate(&assigned, &assigned).unwrap();
    assert_eq!((report.correct, report.false_count, report.missed()), (322, 0, 0));
    assert_eq!(report.accuracy, 1.0);
}

#[test]
fn rear_end_mining_output_is_ranked_and_bounded() {
    let records = analysis_records();
    let assigned = classify_all(&records, &rules());
    let tx = encode_transactions(&records, &FieldSelection::environment(), &assigned, &Universe::rear_end()).unwrap();
    let rear_end = assigned.values().filter(|s| ScenarioId::REAR_END.contains(s)).count();
    assert_eq!(tx.len(), rear_end);

    let params = MiningParams { min_support: 0.1, ..MiningParams::default() };
    let mined = mine(&tx, &params, &ConsequentFilter::AnyScenario).unwrap();
    assert!(!mined.is_empty());
    for pair in mined.windows(2) {
        assert!(pair[0].count >= pair[1].count);
    }
    for r in &mined {
        assert!((3..=6).contains(&r.len()));
        assert!(r.lift > 1.0 && r.confidence >= 0.8 && r.support >= 0.1);
        assert!(r.consequent[0].starts_with("Scenario="));
    }

    let mut out = Vec::new();
    write_rules_csv(&mut out, &mined).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().count(), mined.len() + 1);
}

#[test]
fn descriptive_tables() {
    let records = analysis_records();
    let loc = location_distribution(&records);
    assert_eq!(loc.total, 322);
    assert!(loc.share_where(|c| c == 1).unwrap() > 0.5);
    let heat = damage_heatmap(&records);
    assert_eq!(heat.max_zone(), Some(DamageZone::RearBumper));
    let incidences: usize = records.iter().map(|r| r.damage_locations.len()).sum();
    assert_eq!(heat.total, incidences);

    let mut out = Vec::new();
    write_table_csv(&mut out, &loc).unwrap();
    assert!(String::from_utf8(out).unwrap().starts_with("dimension,code,label,count,percent\n"));
}

#[test]
fn chain_graph_output_is_stable() {
    let text = std::fs::read_to_string(data("intersection_chains.dream")).unwrap();
    let a = CausalChainGraph::from_chain_text(Taxonomy::bundled(), &text).unwrap();
    let b = CausalChainGraph::from_chain_text(Taxonomy::bundled(), &text).unwrap();
    assert_eq!(a.emit_graph(), b.emit_graph());
    assert_eq!(a.crash_count(), 15);
    let agg = a.aggregate();
    assert_eq!(agg.nodes["misjudgement-of-situation"], 10);
}

proptest! {
    #[test]
    fn location_percentages_sum_to_100(picks in proptest::collection::vec(0usize..322, 1..80)) {
        let records = analysis_records();
        let subset: Vec<CrashRecord> = picks.iter().map(|&i| records[i].clone()).collect();
        let table = location_distribution(&subset);
        let sum: u64 = table.rows.iter().map(|r| percent::hundredths(r.count as u64, table.total as u64).unwrap()).sum();
        prop_assert!((sum as i64 - 10_000).abs() <= 5 * table.rows.len() as i64);
        let counts: BTreeMap<u8, usize> = table.rows.iter().map(|r| (r.code, r.count)).collect();
        prop_assert_eq!(counts.values().sum::<usize>(), subset.len());
    }
}
