use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use crate::data_model::ScenarioId;

use super::{fixed3, Itemset, MiningError, Transaction};

/// `antecedent ⇒ consequent` with the integer counts its metrics come from.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociationRule {
    pub antecedent: Vec<String>,
    pub consequent: Vec<String>,
    /// Transactions containing antecedent and consequent.
    pub count: usize,
    pub antecedent_count: usize,
    pub consequent_count: usize,
    pub n: usize,
    pub support: f64,
    pub confidence: f64,
    pub lift: f64,
}

impl AssociationRule {
    fn new(antecedent: Vec<String>, consequent: Vec<String>, count: usize, antecedent_count: usize, consequent_count: usize, n: usize) -> Self {
        AssociationRule {
            support: count as f64 / n as f64,
            confidence: count as f64 / antecedent_count as f64,
            lift: (count as f64 * n as f64) / (antecedent_count as f64 * consequent_count as f64),
            antecedent,
            consequent,
            count,
            antecedent_count,
            consequent_count,
            n,
        }
    }

    pub fn len(&self) -> usize {
        self.antecedent.len() + self.consequent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn support_text(&self) -> String {
        fixed3(self.count as u128, self.n as u128)
    }

    pub fn confidence_text(&self) -> String {
        fixed3(self.count as u128, self.antecedent_count as u128)
    }

    pub fn lift_text(&self) -> String {
        fixed3(
            self.count as u128 * self.n as u128,
            self.antecedent_count as u128 * self.consequent_count as u128,
        )
    }

    /// Exact confidence comparison.
    fn cmp_confidence(&self, other: &AssociationRule) -> Ordering {
        (self.count as u128 * other.antecedent_count as u128).cmp(&(other.count as u128 * self.antecedent_count as u128))
    }
}

/// All rules `A ⇒ S \ A` over the frequent sets `S` whose size lies in
/// `[min_len, max_len]`, with confidence ≥ `min_confidence`. Ordered by
/// size, antecedent, consequent.
pub fn generate_rules(
    itemsets: &[Itemset],
    transactions: &[Transaction],
    min_confidence: f64,
    min_len: usize,
    max_len: usize,
) -> Result<Vec<AssociationRule>, MiningError> {
    generate_rules_for(itemsets, transactions, min_confidence, min_len, max_len, &ConsequentFilter::Any)
}

/// [`generate_rules`] restricted to consequents `consequent` accepts.
/// Single-token filters only try one split per candidate token.
pub fn generate_rules_for(
    itemsets: &[Itemset],
    transactions: &[Transaction],
    min_confidence: f64,
    min_len: usize,
    max_len: usize,
    consequent: &ConsequentFilter,
) -> Result<Vec<AssociationRule>, MiningError> {
    if min_len > max_len {
        return Err(MiningError::Lengths { min_len, max_len });
    }
    if min_len < 2 {
        return Err(MiningError::MinLen(min_len));
    }
    let n = transactions.len();
    let counts: HashMap<&[String], usize> = itemsets.iter().map(|s| (s.items.as_slice(), s.count)).collect();
    let lookup = |items: &[String]| -> usize {
        counts.get(items).copied().unwrap_or_else(|| {
            transactions
                .iter()
                .filter(|t| items.iter().all(|i| t.items.contains(i)))
                .count()
        })
    };

    let mut out = Vec::new();
    for set in itemsets {
        let k = set.items.len();
        if k < min_len || k > max_len || k > 63 {
            continue;
        }
        let full = (1u64 << k) - 1;
        let masks: Vec<u64> = if *consequent == ConsequentFilter::Any {
            (1..full).collect()
        } else {
            (0..k)
                .filter(|&i| consequent.accepts(std::slice::from_ref(&set.items[i])))
                .map(|i| full & !(1 << i))
                .collect()
        };
        for mask in masks {
            let (mut antecedent, mut consequent) = (Vec::new(), Vec::new());
            for (i, item) in set.items.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    antecedent.push(item.clone());
                } else {
                    consequent.push(item.clone());
                }
            }
            let antecedent_count = lookup(&antecedent);
            if (set.count as f64 / antecedent_count as f64) < min_confidence {
                continue;
            }
            let consequent_count = lookup(&consequent);
            out.push(AssociationRule::new(antecedent, consequent, set.count, antecedent_count, consequent_count, n));
        }
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
    Ok(out)
}

/// Which consequents survive [`filter_and_rank`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsequentFilter {
    Any,
    /// A single scenario-label token.
    AnyScenario,
    /// Exactly this scenario's token.
    Scenario(ScenarioId),
}

impl ConsequentFilter {
    fn accepts(&self, consequent: &[String]) -> bool {
        match self {
            ConsequentFilter::Any => true,
            ConsequentFilter::AnyScenario => consequent.len() == 1 && consequent[0].starts_with("Scenario="),
            ConsequentFilter::Scenario(s) => consequent.len() == 1 && consequent[0] == s.token(),
        }
    }
}

/// Drops rules with lift ≤ `min_lift` or an unwanted consequent, then
/// rules dominated by a kept rule with a proper-subset antecedent, the same
/// consequent and at least the same confidence. Sorted by support, then
/// confidence (both descending), then antecedent and consequent.
pub fn filter_and_rank(rules: Vec<AssociationRule>, min_lift: f64, consequent: &ConsequentFilter) -> Vec<AssociationRule> {
    let kept: Vec<AssociationRule> = rules
        .into_iter()
        .filter(|r| r.lift > min_lift && consequent.accepts(&r.consequent))
        .collect();

    let index: HashMap<(&[String], &[String]), usize> = kept
        .iter()
        .enumerate()
        .map(|(i, r)| ((r.consequent.as_slice(), r.antecedent.as_slice()), i))
        .collect();
    let mut redundant = HashSet::new();
    for (i, r) in kept.iter().enumerate() {
        let k = r.antecedent.len();
        if k > 63 {
            continue;
        }
        for mask in 1u64..(1u64 << k) - 1 {
            let sub: Vec<String> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| r.antecedent[b].clone()).collect();
            if let Some(&j) = index.get(&(r.consequent.as_slice(), sub.as_slice())) {
                if kept[j].cmp_confidence(r) != Ordering::Less {
                    redundant.insert(i);
                    break;
                }
            }
        }
    }

    let mut out: Vec<AssociationRule> = kept
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !redundant.contains(i))
        .map(|(_, r)| r)
        .collect();
    out.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then_with(|| b.cmp_confidence(a))
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
    out
}
