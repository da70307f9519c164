//! Rule-based scenario classification and FAR/MAR/accuracy scoring.

mod rules;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::data_model::{CrashRecord, ScenarioId};
use crate::percent;

pub use rules::{FieldPredicate, MappingRule, Operator, RuleLoadError, RuleSet};

/// Why a record received its scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchTrace {
    /// Winning rule, or `None` when the default scenario was used.
    pub rule_id: Option<String>,
    /// Rendered predicates of the winning rule.
    pub satisfied: Vec<String>,
    /// Set for rule-matched scenarios that need a manual check (VRU and animal).
    pub low_confidence: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub scenario: ScenarioId,
    pub trace: MatchTrace,
}

pub fn classify(record: &CrashRecord, rules: &RuleSet) -> Classification {
    match rules.by_priority().find(|r| r.matches(record)) {
        Some(rule) => Classification {
            scenario: rule.scenario,
            trace: MatchTrace {
                rule_id: Some(rule.rule_id.clone()),
                satisfied: rule.predicates.iter().map(|p| p.to_string()).collect(),
                low_confidence: rule.scenario.needs_manual_check(),
            },
        },
        None => Classification {
            scenario: rules.default_scenario(),
            trace: MatchTrace {
                rule_id: None,
                satisfied: Vec::new(),
                low_confidence: false,
            },
        },
    }
}

/// Classifies every record, preserving input order.
pub fn classify_records(records: &[CrashRecord], rules: &RuleSet) -> Vec<Classification> {
    records.par_iter().map(|r| classify(r, rules)).collect()
}

pub fn classify_all(records: &[CrashRecord], rules: &RuleSet) -> BTreeMap<String, ScenarioId> {
    records
        .par_iter()
        .map(|r| (r.record_id.clone(), classify(r, rules).scenario))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("prediction and ground-truth ids differ; without truth: [{}]; without prediction: [{}]", .without_truth.join(", "), .without_prediction.join(", "))]
pub struct KeyMismatch {
    pub without_truth: Vec<String>,
    pub without_prediction: Vec<String>,
}

/// Per true scenario tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScenarioScore {
    pub truth_count: usize,
    pub predicted_count: usize,
    pub correct: usize,
    pub missed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub total: usize,
    pub correct: usize,
    pub false_count: usize,
    pub missed_per_scenario: BTreeMap<ScenarioId, usize>,
    /// truth → predicted → count.
    pub confusion: BTreeMap<ScenarioId, BTreeMap<ScenarioId, usize>>,
    pub far: f64,
    pub mar: f64,
    pub accuracy: f64,
}

impl EvaluationReport {
    pub fn missed(&self) -> usize {
        self.missed_per_scenario.values().sum()
    }

    pub fn scores(&self) -> BTreeMap<ScenarioId, ScenarioScore> {
        let mut out: BTreeMap<ScenarioId, ScenarioScore> = BTreeMap::new();
        for (&truth, row) in &self.confusion {
            for (&predicted, &n) in row {
                out.entry(truth).or_default().truth_count += n;
                out.entry(predicted).or_default().predicted_count += n;
                if truth == predicted {
                    out.entry(truth).or_default().correct += n;
                }
            }
        }
        for (&s, &n) in &self.missed_per_scenario {
            out.entry(s).or_default().missed = n;
        }
        out
    }

    /// True scenarios whose records were all assigned correctly and that
    /// received no foreign records.
    pub fn scenarios_identified(&self) -> (usize, usize) {
        let scores = self.scores();
        let present = scores.values().filter(|s| s.truth_count > 0 || s.predicted_count > 0).count();
        let clean = scores
            .values()
            .filter(|s| s.truth_count > 0 && s.correct == s.truth_count && s.predicted_count == s.truth_count)
            .count();
        (clean, present)
    }
}

/// Scores predictions against ground truth, with scenario 36 as the
/// unresolved class.
///
/// - correct: predicted equals truth;
/// - false: predicted differs from truth and is not 36;
/// - missed (per true scenario): exactly one of predicted and truth is 36.
///
/// A record truly in 36 but assigned elsewhere is both false and missed.
pub fn evaluate(
    predicted: &BTreeMap<String, ScenarioId>,
    truth: &BTreeMap<String, ScenarioId>,
) -> Result<EvaluationReport, KeyMismatch> {
    let without_truth: Vec<String> = predicted.keys().filter(|k| !truth.contains_key(*k)).cloned().collect();
    let without_prediction: Vec<String> = truth.keys().filter(|k| !predicted.contains_key(*k)).cloned().collect();
    if !without_truth.is_empty() || !without_prediction.is_empty() {
        return Err(KeyMismatch {
            without_truth,
            without_prediction,
        });
    }

    let unresolved = ScenarioId::OTHER;
    let mut correct = 0;
    let mut false_count = 0;
    let mut missed_per_scenario: BTreeMap<ScenarioId, usize> = BTreeMap::new();
    let mut confusion: BTreeMap<ScenarioId, BTreeMap<ScenarioId, usize>> = BTreeMap::new();
    for (id, &p) in predicted {
        let t = truth[id];
        *confusion.entry(t).or_default().entry(p).or_default() += 1;
        if p == t {
            correct += 1;
            continue;
        }
        if p != unresolved {
            false_count += 1;
        }
        if (p == unresolved) != (t == unresolved) {
            *missed_per_scenario.entry(t).or_default() += 1;
        }
    }

    let total = predicted.len();
    let ratio = |n: usize| if total == 0 { 0.0 } else { n as f64 / total as f64 };
    let missed: usize = missed_per_scenario.values().sum();
    Ok(EvaluationReport {
        total,
        correct,
        false_count,
        far: ratio(false_count),
        mar: ratio(missed),
        accuracy: if total == 0 { 1.0 } else { ratio(correct) },
        missed_per_scenario,
        confusion,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyRow {
    pub scenario: ScenarioId,
    pub count: usize,
    /// Percentage of the total in hundredths, rounded half-up.
    pub hundredths: u64,
}

impl FrequencyRow {
    pub fn percent(&self) -> f64 {
        self.hundredths as f64 / 100.0
    }
}

/// Rows by count descending, ties by scenario id ascending.
pub fn scenario_frequency_table(assignments: &BTreeMap<String, ScenarioId>) -> Vec<FrequencyRow> {
    let total = assignments.len() as u64;
    let mut counts: BTreeMap<ScenarioId, usize> = BTreeMap::new();
    for &s in assignments.values() {
        *counts.entry(s).or_default() += 1;
    }
    let mut rows: Vec<FrequencyRow> = counts
        .into_iter()
        .map(|(scenario, count)| FrequencyRow {
            scenario,
            count,
            hundredths: percent::hundredths(count as u64, total).unwrap_or(0),
        })
        .collect();
    rows.sort_by(|a, b| b.count.cmp(&a.count).then(a.scenario.cmp(&b.scenario)));
    rows
}

/// Distinct scenarios in an assignment map.
pub fn distinct_scenarios(assignments: &BTreeMap<String, ScenarioId>) -> BTreeSet<ScenarioId> {
    assignments.values().copied().collect()
}
