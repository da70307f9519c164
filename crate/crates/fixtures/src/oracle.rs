//! Exhaustive reference for frequent sets and association rules over small
//! token universes (at most 20 distinct tokens).

use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRule {
    pub antecedent: Vec<String>,
    pub consequent: Vec<String>,
    pub count: usize,
    pub antecedent_count: usize,
    pub consequent_count: usize,
    pub support: f64,
    pub confidence: f64,
    pub lift: f64,
}

/// Sorted distinct tokens and, for every token subset (as a bitmask), the
/// number of transactions containing it.
fn count_table(transactions: &[BTreeSet<String>]) -> (Vec<String>, Vec<usize>) {
    let tokens: Vec<String> = transactions.iter().flatten().collect::<BTreeSet<_>>().into_iter().cloned().collect();
    assert!(tokens.len() <= 20, "oracle universe too large");
    let rows: Vec<u32> = transactions
        .iter()
        .map(|t| (0..tokens.len()).filter(|&b| t.contains(&tokens[b])).fold(0, |m, b| m | 1 << b))
        .collect();
    let counts = (0u32..1 << tokens.len())
        .map(|mask| rows.iter().filter(|&&r| r & mask == mask).count())
        .collect();
    (tokens, counts)
}

fn subset(tokens: &[String], mask: u32) -> Vec<String> {
    (0..tokens.len()).filter(|b| mask & (1 << b) != 0).map(|b| tokens[b].clone()).collect()
}

fn frequent_masks(counts: &[usize], n: usize, min_support: f64) -> impl Iterator<Item = u32> + '_ {
    (1..counts.len() as u32).filter(move |&m| counts[m as usize] > 0 && counts[m as usize] as f64 / n as f64 >= min_support)
}

/// Every non-empty token set with `count / n >= min_support`, with its
/// count, keyed by sorted tokens.
pub fn frequent_itemsets(transactions: &[BTreeSet<String>], min_support: f64) -> BTreeMap<Vec<String>, usize> {
    let n = transactions.len();
    if n == 0 {
        return BTreeMap::new();
    }
    let (tokens, counts) = count_table(transactions);
    frequent_masks(&counts, n, min_support)
        .map(|m| (subset(&tokens, m), counts[m as usize]))
        .collect()
}

/// Every split of every frequent set whose size is in `[min_len, max_len]`
/// with confidence at least `min_confidence`.
pub fn rules(
    transactions: &[BTreeSet<String>],
    min_support: f64,
    min_confidence: f64,
    min_len: usize,
    max_len: usize,
) -> Vec<OracleRule> {
    let n = transactions.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let (tokens, counts) = count_table(transactions);
    for set in frequent_masks(&counts, n, min_support) {
        let k = set.count_ones() as usize;
        if k < min_len || k > max_len {
            continue;
        }
        let c = counts[set as usize];
        // Walk the proper non-empty submasks of `set`.
        let mut a = (set - 1) & set;
        while a != 0 {
            let b = set & !a;
            let (ac, bc) = (counts[a as usize], counts[b as usize]);
            let confidence = c as f64 / ac as f64;
            if confidence >= min_confidence {
                out.push(OracleRule {
                    antecedent: subset(&tokens, a),
                    consequent: subset(&tokens, b),
                    count: c,
                    antecedent_count: ac,
                    consequent_count: bc,
                    support: c as f64 / n as f64,
                    confidence,
                    lift: confidence / (bc as f64 / n as f64),
                });
            }
            a = (a - 1) & set;
        }
    }
    out
}

/// `|a - b| <= tol * max(|a|, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}
