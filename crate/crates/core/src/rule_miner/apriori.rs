use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use super::{Itemset, MiningError, Transaction};

/// Transactions over interned tokens. Token ids follow lexicographic token
/// order, so sorted id lists compare like sorted token lists.
pub(crate) struct Encoded {
    pub tokens: Vec<String>,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl Encoded {
    pub fn new(transactions: &[Transaction]) -> Encoded {
        let vocabulary: BTreeSet<&str> = transactions
            .iter()
            .flat_map(|t| t.items.iter().map(String::as_str))
            .collect();
        let tokens: Vec<String> = vocabulary.into_iter().map(str::to_string).collect();
        let words = tokens.len().div_ceil(64).max(1);
        let rows = transactions
            .iter()
            .map(|t| {
                let mut bits = vec![0u64; words];
                for item in &t.items {
                    let id = tokens.binary_search(item).expect("token interned");
                    bits[id / 64] |= 1 << (id % 64);
                }
                bits
            })
            .collect();
        Encoded { tokens, words, rows }
    }

    fn mask(&self, ids: &[u32]) -> Vec<u64> {
        let mut bits = vec![0u64; self.words];
        for &id in ids {
            bits[id as usize / 64] |= 1 << (id % 64);
        }
        bits
    }

    pub fn count(&self, ids: &[u32]) -> usize {
        let mask = self.mask(ids);
        self.rows
            .iter()
            .filter(|row| row.iter().zip(&mask).all(|(r, m)| r & m == *m))
            .count()
    }
}

pub(crate) fn check_support(min_support: f64) -> Result<(), MiningError> {
    if min_support > 0.0 && min_support <= 1.0 {
        Ok(())
    } else {
        Err(MiningError::MinSupport(min_support))
    }
}

/// `count / n >= min_support`, the single comparison used for frequency.
pub(crate) fn is_frequent(count: usize, n: usize, min_support: f64) -> bool {
    n > 0 && count as f64 / n as f64 >= min_support
}

/// Level-wise Apriori. Each level joins frequent sets sharing all but their
/// last item, prunes candidates with an infrequent subset, then counts the
/// survivors in parallel.
pub(crate) fn frequent(enc: &Encoded, min_support: f64, max_len: usize) -> Vec<(Vec<u32>, usize)> {
    let n = enc.rows.len();
    let mut out = Vec::new();
    if n == 0 || max_len == 0 {
        return out;
    }

    let mut level: Vec<(Vec<u32>, usize)> = (0..enc.tokens.len() as u32)
        .into_par_iter()
        .map(|id| (vec![id], enc.count(&[id])))
        .filter(|&(_, c)| is_frequent(c, n, min_support))
        .collect();

    while !level.is_empty() {
        out.extend(level.iter().cloned());
        if level[0].0.len() >= max_len {
            break;
        }
        let known: HashSet<&[u32]> = level.iter().map(|(s, _)| s.as_slice()).collect();
        let mut candidates = Vec::new();
        for (i, (a, _)) in level.iter().enumerate() {
            let k = a.len();
            for (b, _) in &level[i + 1..] {
                if a[..k - 1] != b[..k - 1] {
                    break;
                }
                let mut c = a.clone();
                c.push(b[k - 1]);
                let all_subsets_frequent = (0..c.len() - 2).all(|skip| {
                    let sub: Vec<u32> = c
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, &t)| t)
                        .collect();
                    known.contains(sub.as_slice())
                });
                if all_subsets_frequent {
                    candidates.push(c);
                }
            }
        }
        level = candidates
            .into_par_iter()
            .map(|c| {
                let count = enc.count(&c);
                (c, count)
            })
            .filter(|&(_, count)| is_frequent(count, n, min_support))
            .collect();
    }
    out
}

pub(crate) fn to_itemsets(enc: &Encoded, sets: Vec<(Vec<u32>, usize)>) -> Vec<Itemset> {
    let n = enc.rows.len();
    let mut out: Vec<Itemset> = sets
        .into_iter()
        .map(|(ids, count)| Itemset {
            items: ids.iter().map(|&i| enc.tokens[i as usize].clone()).collect(),
            count,
            n,
            support: count as f64 / n as f64,
        })
        .collect();
    out.sort_by(|a, b| a.items.len().cmp(&b.items.len()).then_with(|| a.items.cmp(&b.items)));
    out
}
