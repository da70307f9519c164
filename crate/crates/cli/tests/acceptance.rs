//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero on any unexpected result.
//!
//! A criterion listed in `UNATTAINABLE` is still computed in full and
//! reported as FAIL. It only stops counting against the exit status while
//! it keeps failing. If it ever passes, the suite fails so the entry gets
//! removed.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use prescen::data_model::codes::{control, severity};
use prescen::dream_causation::{CausalChainGraph, NodeKind, Taxonomy};
use prescen::ingestion::{filter_for_analysis, parse_reader, parse_records, RecordFormat};
use prescen::reporting::{control_type_distribution, severity_distribution};
use prescen::rule_miner::{
    apriori_bounded, encode_transactions, generate_rules, mine, AssociationRule, ConsequentFilter, FieldSelection,
    MiningParams, Transaction, Universe,
};
use prescen::scenario_engine::{classify_all, evaluate, scenario_frequency_table, RuleSet};
use prescen::{CrashRecord, ScenarioId, Schema};
use prescen_fixtures::{descriptive, dream, oracle, REFERENCE_RULES};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const UNATTAINABLE: &[(u8, &str)] = &[(
    6,
    "an exact 1/2 share is impossible over 15 crashes; the fixture realises 8/15",
)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(checks: Vec<(bool, String)>) -> Outcome {
    let passed = checks.iter().all(|(ok, _)| *ok);
    let detail = checks
        .into_iter()
        .map(|(ok, d)| if ok { d } else { format!("MISMATCH {d}") })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { passed, detail }
}

fn within_budget(elapsed: Duration, secs: f64) -> (bool, String) {
    (elapsed.as_secs_f64() < secs, format!("runtime {:.3}s < {secs}s", elapsed.as_secs_f64()))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// At most 12 distinct tokens over at most 32 transactions.
fn random_transactions(r: &mut ChaCha8Rng) -> Vec<BTreeSet<String>> {
    let tokens = r.gen_range(1..=12);
    let n = r.gen_range(1..=32);
    let density = r.gen_range(0.15..0.85);
    (0..n)
        .map(|_| (0..tokens).filter(|_| r.gen_bool(density)).map(|t| format!("tok{t:02}")).collect())
        .collect()
}

fn as_transactions(sets: &[BTreeSet<String>]) -> Vec<Transaction> {
    sets.iter()
        .enumerate()
        .map(|(i, items)| Transaction {
            record_id: format!("T{i}"),
            items: items.clone(),
        })
        .collect()
}

fn reparse(records: &[CrashRecord]) -> Vec<CrashRecord> {
    let text = prescen_fixtures::records_csv(records);
    parse_reader(text.as_bytes(), RecordFormat::Delimited, Schema::bundled())
        .expect("fixture parses")
        .records
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let sets = 256;
    let mut mismatches = Vec::new();
    let mut rules_checked = 0;
    for case in 0..sets {
        let raw = random_transactions(&mut r);
        let tx = as_transactions(&raw);
        let min_support = r.gen_range(1..=8) as f64 / 16.0;
        let min_confidence = r.gen_range(0..=10) as f64 / 10.0;

        let got: BTreeMap<Vec<String>, usize> = apriori_bounded(&tx, min_support, 12)
            .unwrap()
            .into_iter()
            .map(|s| (s.items, s.count))
            .collect();
        if got != oracle::frequent_itemsets(&raw, min_support) {
            mismatches.push(format!("case {case}: frequent sets"));
            continue;
        }

        let itemsets = apriori_bounded(&tx, min_support, 12).unwrap();
        let rules = generate_rules(&itemsets, &tx, min_confidence, 2, 12).unwrap();
        let expected = oracle::rules(&raw, min_support, min_confidence, 2, 12);
        let mut by_key: BTreeMap<(Vec<String>, Vec<String>), &AssociationRule> = BTreeMap::new();
        for rule in &rules {
            by_key.insert((rule.antecedent.clone(), rule.consequent.clone()), rule);
        }
        if by_key.len() != expected.len() || rules.len() != expected.len() {
            mismatches.push(format!("case {case}: {} rules vs {} expected", rules.len(), expected.len()));
            continue;
        }
        for e in &expected {
            rules_checked += 1;
            let ok = by_key.get(&(e.antecedent.clone(), e.consequent.clone())).is_some_and(|g| {
                g.count == e.count
                    && g.antecedent_count == e.antecedent_count
                    && g.consequent_count == e.consequent_count
                    && oracle::close(g.support, e.support, 1e-12)
                    && oracle::close(g.confidence, e.confidence, 1e-12)
                    && oracle::close(g.lift, e.lift, 1e-12)
            });
            if !ok {
                mismatches.push(format!("case {case}: rule {:?} => {:?}", e.antecedent, e.consequent));
            }
        }
    }
    outcome(vec![
        (mismatches.is_empty(), format!("{sets} random sets, {rules_checked} rules, {} mismatches {:?}", mismatches.len(), mismatches.iter().take(3).collect::<Vec<_>>())),
        within_budget(start.elapsed(), 30.0),
    ])
}

fn lvs_transactions() -> Vec<Transaction> {
    let records = reparse(&prescen_fixtures::lvs::records());
    let rules = RuleSet::parse(REFERENCE_RULES).unwrap();
    let assigned = classify_all(&records, &rules);
    encode_transactions(&records, &FieldSelection::environment(), &assigned, &Universe::rear_end()).unwrap()
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let mut rules_checked = 0;
    let mut identity_failures = 0;
    let mut monotone_failures = 0;
    let check = |rules: &[AssociationRule], failures: &mut usize| {
        for rule in rules {
            let n = rule.n as f64;
            let ante_support = rule.antecedent_count as f64 / n;
            let cons_support = rule.consequent_count as f64 / n;
            if !oracle::close(rule.confidence * ante_support, rule.support, 1e-12)
                || !oracle::close(rule.lift * cons_support, rule.confidence, 1e-12)
            {
                *failures += 1;
            }
        }
        rules.len()
    };
    for _ in 0..256 {
        let tx = as_transactions(&random_transactions(&mut r));
        let params = MiningParams {
            min_support: r.gen_range(1..=8) as f64 / 16.0,
            min_confidence: r.gen_range(0..=10) as f64 / 10.0,
            min_lift: 0.0,
            min_len: 2,
            max_len: 12,
        };
        let sets = apriori_bounded(&tx, params.min_support, 12).unwrap();
        let counts: BTreeMap<&[String], usize> = sets.iter().map(|s| (s.items.as_slice(), s.count)).collect();
        for s in &sets {
            for skip in 0..s.items.len() {
                if s.items.len() == 1 {
                    break;
                }
                let sub: Vec<String> = s.items.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, t)| t.clone()).collect();
                if counts.get(sub.as_slice()).is_none_or(|&c| c < s.count) {
                    monotone_failures += 1;
                }
            }
        }
        let rules = mine(&tx, &params, &ConsequentFilter::Any).unwrap();
        rules_checked += check(&rules, &mut identity_failures);
    }
    let lvs = mine(&lvs_transactions(), &MiningParams::default(), &ConsequentFilter::Any).unwrap();
    rules_checked += check(&lvs, &mut identity_failures);
    outcome(vec![
        (identity_failures == 0, format!("{rules_checked} rules, {identity_failures} identity failures")),
        (monotone_failures == 0, format!("{monotone_failures} anti-monotonicity failures over 256 sets")),
    ])
}

fn corpus_assignments() -> (BTreeMap<String, ScenarioId>, Instant) {
    let start = Instant::now();
    let parsed = parse_records(&data("corpus_raw.csv")).unwrap();
    let (records, _) = filter_for_analysis(&parsed.records);
    let rules = RuleSet::load(&data("reference.rules")).unwrap();
    (classify_all(&records, &rules), start)
}

fn read_truth() -> BTreeMap<String, ScenarioId> {
    let mut rdr = csv::Reader::from_path(data("ground_truth.csv")).unwrap();
    rdr.records()
        .map(|row| {
            let row = row.unwrap();
            (row[0].to_string(), ScenarioId::new(row[1].parse().unwrap()).unwrap())
        })
        .collect()
}

fn criterion_3() -> Outcome {
    let (assigned, start) = corpus_assignments();
    let report = evaluate(&assigned, &read_truth()).unwrap();
    let elapsed = start.elapsed();
    let pct = |x: f64| x * 100.0;
    let near = |got: f64, want: f64, name: &str| ((got - want).abs() <= 0.05, format!("{name} {got:.2}% vs {want}%"));
    outcome(vec![
        (report.total == 322, format!("{} records", report.total)),
        near(pct(report.far), 1.9, "FAR"),
        near(pct(report.mar), 0.6, "MAR"),
        near(pct(report.accuracy), 98.1, "accuracy"),
        within_budget(elapsed, 1.0),
    ])
}

fn criterion_4() -> Outcome {
    let (assigned, start) = corpus_assignments();
    let table = scenario_frequency_table(&assigned);
    let elapsed = start.elapsed();
    let mut checks = Vec::new();
    for (i, (id, count, pct)) in [(24u8, 105usize, 32.61f64), (20, 38, 11.80), (23, 35, 10.87)].into_iter().enumerate() {
        let row = &table[i];
        checks.push((
            row.scenario.id() == id && row.count == count && (row.percent() - pct).abs() <= 0.01,
            format!("row {}: ({}, {}, {:.2}%)", i + 1, row.scenario.id(), row.count, row.percent()),
        ));
    }
    checks.push(within_budget(elapsed, 1.0));
    outcome(checks)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let parsed = parse_records(&data("lvs_mining.csv")).unwrap();
    let rules = RuleSet::load(&data("reference.rules")).unwrap();
    let assigned = classify_all(&parsed.records, &rules);
    let tx = encode_transactions(&parsed.records, &FieldSelection::environment(), &assigned, &Universe::rear_end()).unwrap();
    let mined = mine(&tx, &MiningParams::default(), &ConsequentFilter::Scenario(ScenarioId::LVS)).unwrap();
    let elapsed = start.elapsed();
    let Some(top) = mined.first() else {
        return outcome(vec![(false, "no rules".into())]);
    };
    let near = |text: String, want: f64, name: &str| {
        let got: f64 = text.parse().unwrap();
        ((got - want).abs() <= 0.005, format!("{name} {text} vs {want}"))
    };
    outcome(vec![
        near(top.support_text(), 0.168, "support"),
        near(top.confidence_text(), 0.969, "confidence"),
        near(top.lift_text(), 1.73, "lift"),
        (true, format!("top rule {} => {}", top.antecedent.join(" + "), top.consequent.join(" + "))),
        within_budget(elapsed, 5.0),
    ])
}

fn random_graph_properties() -> (usize, usize, usize) {
    let taxonomy = Taxonomy::bundled();
    let genotypes: Vec<String> = taxonomy
        .terms()
        .filter(|(_, t)| t.kind() == NodeKind::Genotype)
        .map(|(l, _)| l.to_string())
        .collect();
    let phenotypes: Vec<String> = taxonomy
        .terms()
        .filter(|(_, t)| t.kind() == NodeKind::Phenotype)
        .map(|(l, _)| l.to_string())
        .collect();
    let mut r = rng(6);
    let (mut accepted, mut cyclic, mut non_idempotent) = (0, 0, 0);
    for _ in 0..200 {
        let mut g = CausalChainGraph::new(taxonomy.clone());
        for crash in 0..r.gen_range(1..12) {
            let mut chain: Vec<(String, String)> = (0..r.gen_range(1..5))
                .map(|_| (genotypes.choose(&mut r).unwrap().clone(), genotypes.choose(&mut r).unwrap().clone()))
                .collect();
            chain.push((genotypes.choose(&mut r).unwrap().clone(), phenotypes.choose(&mut r).unwrap().clone()));
            let id = format!("C{crash}");
            if g.add_crash_chain(&id, &chain).is_ok() {
                accepted += 1;
                let mut adjacency: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
                for (a, b) in g.links().keys() {
                    adjacency.entry(a).or_default().push(b);
                }
                if has_cycle(&adjacency) {
                    cyclic += 1;
                }
                let before = g.clone();
                if g.add_crash_chain(&id, &chain).is_err() || g != before {
                    non_idempotent += 1;
                }
            }
        }
    }
    (accepted, cyclic, non_idempotent)
}

fn has_cycle(adjacency: &BTreeMap<&str, Vec<&str>>) -> bool {
    fn visit<'a>(n: &'a str, adj: &BTreeMap<&'a str, Vec<&'a str>>, state: &mut BTreeMap<&'a str, u8>) -> bool {
        match state.get(n) {
            Some(1) => return true,
            Some(2) => return false,
            _ => {}
        }
        state.insert(n, 1);
        for &m in adj.get(n).map(Vec::as_slice).unwrap_or(&[]) {
            if visit(m, adj, state) {
                return true;
            }
        }
        state.insert(n, 2);
        false
    }
    let mut state = BTreeMap::new();
    adjacency.keys().any(|n| visit(n, adjacency, &mut state))
}

fn criterion_6() -> Outcome {
    let g = CausalChainGraph::from_chain_text(Taxonomy::bundled(), &dream::chain_text()).unwrap();
    let night = g.metadata_share(|m| m.get("lighting").is_some_and(|v| v == "night"));
    let hsr = g.factor_share("habitually-stretching-rules", None).unwrap();
    let tov = g.factor_share("temporary-obstruction-of-view", None).unwrap();
    let (accepted, cyclic, non_idempotent) = random_graph_properties();
    outcome(vec![
        (night.equals_ratio(10, 15), format!("night {}/{} = 10/15", night.count, night.total)),
        (hsr.equals_ratio(9, 15), format!("habitually-stretching-rules {}/{} = 9/15", hsr.count, hsr.total)),
        (tov.equals_ratio(1, 2), format!("temporary-obstruction-of-view {}/{} = 1/2", tov.count, tov.total)),
        (cyclic == 0 && accepted > 0, format!("{accepted} random insertions, {cyclic} cyclic graphs")),
        (non_idempotent == 0, format!("{non_idempotent} non-idempotent re-insertions")),
    ])
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let params = MiningParams::default();
    let mut total = 0;
    let mut outside = 0;
    let mut runs: Vec<Vec<Transaction>> = (0..256).map(|_| as_transactions(&random_transactions(&mut r))).collect();
    runs.push(lvs_transactions());
    for tx in &runs {
        let rules = mine(tx, &params, &ConsequentFilter::Any).unwrap();
        total += rules.len();
        outside += rules.iter().filter(|rule| !(3..=6).contains(&rule.len())).count();
    }
    outcome(vec![(outside == 0, format!("{} runs, {total} rules, {outside} outside [3, 6]", runs.len()))])
}

fn run_pipeline(out: &Path, threads: &str) -> Result<(), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_prescen"))
        .args(["pipeline", "--config"])
        .arg(data("config.toml"))
        .arg("--out")
        .arg(out)
        .args(["--threads", threads])
        .env_remove(prescen_cli::CONFIG_ENV)
        .output()
        .map_err(|e| e.to_string())?;
    if o.status.success() {
        Ok(())
    } else {
        Err(String::from_utf8_lossy(&o.stderr).into_owned())
    }
}

fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else if path.file_name().is_some_and(|n| n != "run.log") {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs = [("a", "4"), ("b", "4"), ("c", "1")];
    for (name, threads) in runs {
        if let Err(e) = run_pipeline(&dir.path().join(name), threads) {
            return outcome(vec![(false, format!("pipeline failed: {e}"))]);
        }
    }
    let a = tree(&dir.path().join("a"));
    let same_twice = a == tree(&dir.path().join("b"));
    let same_threads = a == tree(&dir.path().join("c"));

    let mut r = rng(8);
    let params = MiningParams::default();
    let filter = ConsequentFilter::AnyScenario;
    let mut tx = lvs_transactions();
    let reference = mine(&tx, &params, &filter).unwrap();
    let mut shuffle_stable = true;
    for _ in 0..5 {
        tx.shuffle(&mut r);
        shuffle_stable &= mine(&tx, &params, &filter).unwrap() == reference;
    }
    let pooled = |n: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| mine(&tx, &params, &filter).unwrap())
    };
    let pool_stable = pooled(1) == reference && pooled(4) == reference;
    outcome(vec![
        (same_twice && !a.is_empty(), format!("two pipeline runs, {} data files identical", a.len())),
        (same_threads, "pipeline with 1 and 4 threads identical".into()),
        (shuffle_stable, "mining invariant under 5 transaction shuffles".into()),
        (pool_stable, "mining identical on 1- and 4-thread pools".into()),
    ])
}

fn criterion_9() -> Outcome {
    let sev = severity_distribution(&reparse(&descriptive::severity_records()));
    let ctl = control_type_distribution(&reparse(&descriptive::control_records()));
    let near = |got: Option<f64>, want: f64, name: &str| {
        let got = got.unwrap_or(f64::NAN);
        ((got - want).abs() <= 0.01, format!("{name} {got:.2}% vs {want}%"))
    };
    outcome(vec![
        near(sev.percent(severity::SLIGHT), 75.5, "slight"),
        near(sev.percent(severity::MODERATE), 14.0, "moderate"),
        near(sev.percent(severity::SEVERE), 2.8, "severe"),
        near(ctl.percent(control::SIGNAL), 67.97, "signal"),
        near(ctl.percent(control::STOP_SIGN), 24.84, "stop sign"),
    ])
}

fn main() {
    let criteria: [(u8, &str, fn() -> Outcome); 9] = [
        (1, "apriori oracle equivalence", criterion_1),
        (2, "metric identities and anti-monotonicity", criterion_2),
        (3, "classifier FAR / MAR / accuracy", criterion_3),
        (4, "scenario frequency table", criterion_4),
        (5, "LVS mining fixture top rule", criterion_5),
        (6, "causation chain aggregation", criterion_6),
        (7, "rule length bounds", criterion_7),
        (8, "determinism", criterion_8),
        (9, "descriptive statistics", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in criteria {
        let o = f();
        let known = UNATTAINABLE.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        let note = match (o.passed, known) {
            (false, Some(why)) => format!(" [known: {why}]"),
            (true, Some(_)) => {
                unexpected.push(id);
                " [listed as unattainable but passed; remove the entry]".into()
            }
            (false, None) => {
                unexpected.push(id);
                String::new()
            }
            (true, None) => String::new(),
        };
        println!("criterion {id} {verdict}: {name}: {}{note}", o.detail);
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
