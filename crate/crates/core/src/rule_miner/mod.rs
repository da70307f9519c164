//! Frequent item sets and association rules over encoded crash features.

mod apriori;
mod rules;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::data_model::{CrashRecord, Field, ScenarioId, Schema};

pub use rules::{filter_and_rank, generate_rules, generate_rules_for, AssociationRule, ConsequentFilter};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MiningError {
    #[error("min_support {0} must lie in (0, 1]")]
    MinSupport(f64),
    #[error("min_confidence {0} must lie in [0, 1]")]
    MinConfidence(f64),
    #[error("min_len {min_len} exceeds max_len {max_len}")]
    Lengths { min_len: usize, max_len: usize },
    #[error("min_len {0} is below 2")]
    MinLen(usize),
    #[error("field `{0}` cannot be mined")]
    UnminableField(String),
    #[error("unknown field `{0}` in selection")]
    UnknownField(String),
    #[error("empty field selection")]
    EmptySelection,
    #[error("record `{0}` has no scenario assignment")]
    MissingAssignment(String),
    #[error("bad universe `{0}`: expected all, rear-end, intersection or a comma-separated id list")]
    Universe(String),
}

/// One record's item tokens, each `Field.Name=label`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub record_id: String,
    pub items: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Itemset {
    /// Sorted tokens.
    pub items: Vec<String>,
    pub count: usize,
    /// Transactions in the mining universe.
    pub n: usize,
    pub support: f64,
}

/// Coded fields turned into item tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSelection(Vec<Field>);

impl FieldSelection {
    pub fn new(fields: Vec<Field>) -> Result<FieldSelection, MiningError> {
        if fields.is_empty() {
            return Err(MiningError::EmptySelection);
        }
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for f in fields {
            if !f.is_coded() {
                return Err(MiningError::UnminableField(f.name().to_string()));
            }
            if seen.insert(f) {
                kept.push(f);
            }
        }
        Ok(FieldSelection(kept))
    }

    pub fn parse<S: AsRef<str>>(names: &[S]) -> Result<FieldSelection, MiningError> {
        let fields = names
            .iter()
            .map(|n| Field::from_name(n.as_ref().trim()).ok_or_else(|| MiningError::UnknownField(n.as_ref().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        FieldSelection::new(fields)
    }

    /// Road environment and V1 intention fields.
    pub fn environment() -> FieldSelection {
        FieldSelection(vec![
            Field::LocationType,
            Field::Weather,
            Field::RoadwaySurface,
            Field::RoadwayConditions,
            Field::TrafficControlType,
            Field::Lighting,
            Field::TypeOfIntersection,
            Field::IfPeakTime,
            Field::V1Intention,
            Field::V1YieldFor,
            Field::CycleLane,
            Field::LaneMarkings,
            Field::RoadTypes,
            Field::RoadsideParking,
            Field::NumberOfLanesOneDirection,
        ])
    }

    pub fn fields(&self) -> &[Field] {
        &self.0
    }
}

impl Default for FieldSelection {
    fn default() -> Self {
        FieldSelection::environment()
    }
}

/// The records over which support is normalised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Universe {
    All,
    Scenarios(BTreeSet<ScenarioId>),
}

impl Universe {
    pub fn rear_end() -> Universe {
        Universe::Scenarios(ScenarioId::REAR_END.into_iter().collect())
    }

    pub fn contains(&self, s: ScenarioId) -> bool {
        match self {
            Universe::All => true,
            Universe::Scenarios(set) => set.contains(&s),
        }
    }
}

impl FromStr for Universe {
    type Err = MiningError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "all" => Ok(Universe::All),
            "rear-end" => Ok(Universe::rear_end()),
            "intersection" => Ok(Universe::Scenarios(ScenarioId::INTERSECTION.into_iter().collect())),
            list => {
                let ids = list
                    .split(',')
                    .map(|p| p.trim().parse::<u8>().ok().and_then(ScenarioId::new))
                    .collect::<Option<BTreeSet<_>>>()
                    .filter(|s| !s.is_empty())
                    .ok_or_else(|| MiningError::Universe(s.to_string()))?;
                Ok(Universe::Scenarios(ids))
            }
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Universe::All => f.write_str("all"),
            Universe::Scenarios(set) => {
                let ids: Vec<String> = set.iter().map(|s| s.id().to_string()).collect();
                f.write_str(&ids.join(","))
            }
        }
    }
}

/// Item token for one field value, e.g. `Traffic.Control.Type=signal`.
pub fn token(schema: &Schema, field: Field, code: u8) -> String {
    match schema.token_label(field, code) {
        Some(label) => format!("{}={}", field.token_name(), label),
        None => format!("{}={}", field.token_name(), code),
    }
}

/// One transaction per record whose assigned scenario lies in `universe`,
/// in record order. Absent values yield no token.
pub fn encode_transactions(
    records: &[CrashRecord],
    selection: &FieldSelection,
    assignments: &BTreeMap<String, ScenarioId>,
    universe: &Universe,
) -> Result<Vec<Transaction>, MiningError> {
    let schema = Schema::bundled();
    let mut out = Vec::new();
    for r in records {
        let scenario = *assignments
            .get(&r.record_id)
            .ok_or_else(|| MiningError::MissingAssignment(r.record_id.clone()))?;
        if !universe.contains(scenario) {
            continue;
        }
        let mut items: BTreeSet<String> = selection
            .fields()
            .iter()
            .filter_map(|&f| f.code(r).map(|c| token(schema, f, c)))
            .collect();
        items.insert(scenario.token());
        out.push(Transaction {
            record_id: r.record_id.clone(),
            items,
        });
    }
    Ok(out)
}

/// Every item set with support ≥ `min_support`, ordered by size then tokens.
pub fn apriori_frequent_itemsets(transactions: &[Transaction], min_support: f64) -> Result<Vec<Itemset>, MiningError> {
    apriori_bounded(transactions, min_support, usize::MAX)
}

/// As [`apriori_frequent_itemsets`], stopping at sets of `max_len` items.
pub fn apriori_bounded(transactions: &[Transaction], min_support: f64, max_len: usize) -> Result<Vec<Itemset>, MiningError> {
    apriori::check_support(min_support)?;
    let enc = apriori::Encoded::new(transactions);
    let sets = apriori::frequent(&enc, min_support, max_len);
    Ok(apriori::to_itemsets(&enc, sets))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiningParams {
    pub min_support: f64,
    pub min_confidence: f64,
    pub min_lift: f64,
    pub min_len: usize,
    pub max_len: usize,
}

impl Default for MiningParams {
    fn default() -> Self {
        MiningParams {
            min_support: 0.02,
            min_confidence: 0.8,
            min_lift: 1.0,
            min_len: 3,
            max_len: 6,
        }
    }
}

impl MiningParams {
    pub fn check(&self) -> Result<(), MiningError> {
        apriori::check_support(self.min_support)?;
        if !(0.0..=1.0).contains(&self.min_confidence) {
            return Err(MiningError::MinConfidence(self.min_confidence));
        }
        if self.min_len < 2 {
            return Err(MiningError::MinLen(self.min_len));
        }
        if self.min_len > self.max_len {
            return Err(MiningError::Lengths {
                min_len: self.min_len,
                max_len: self.max_len,
            });
        }
        Ok(())
    }
}

/// Frequent sets, rules, then filtering, for already encoded transactions.
pub fn mine(transactions: &[Transaction], params: &MiningParams, consequent: &ConsequentFilter) -> Result<Vec<AssociationRule>, MiningError> {
    params.check()?;
    let itemsets = apriori_bounded(transactions, params.min_support, params.max_len)?;
    let rules = generate_rules_for(&itemsets, transactions, params.min_confidence, params.min_len, params.max_len, consequent)?;
    Ok(filter_and_rank(rules, params.min_lift, consequent))
}

/// `num / den` rounded half-up to three decimals.
pub fn fixed3(num: u128, den: u128) -> String {
    if den == 0 {
        return String::new();
    }
    let thousandths = (num * 2000 + den) / (2 * den);
    format!("{}.{:03}", thousandths / 1000, thousandths % 1000)
}

/// Columns: antecedent (tokens joined by ` + `), consequent, support,
/// confidence, lift.
pub fn write_rules_csv<W: Write>(writer: W, rules: &[AssociationRule]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["antecedent", "consequent", "support", "confidence", "lift"])?;
    for r in rules {
        w.write_record([
            r.antecedent.join(" + "),
            r.consequent.join(" + "),
            r.support_text(),
            r.confidence_text(),
            r.lift_text(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
