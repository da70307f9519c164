//! DREAM causal chains: a DAG of genotype and phenotype nodes whose links
//! carry the crashes they explain.

mod chains;
mod taxonomy;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

pub use chains::{parse_chains, ChainEntry};
pub use taxonomy::{GenotypeCategory, NodeKind, Taxonomy, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DreamError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid label `{0}`")]
    BadLabel(String),
    #[error("label `{0}` is already registered with a different kind or group")]
    ConflictingTerm(String),
    #[error("link {from} -> {to} starts at a phenotype")]
    PhenotypeSource { from: String, to: String },
    #[error("link {from} -> {to} would close a cycle")]
    Cycle { from: String, to: String },
    #[error("crash {0}: no phenotype terminal")]
    NoPhenotypeTerminal(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Free-form crash metadata such as `lighting=dark`.
pub type CrashMeta = BTreeMap<String, String>;

/// Crash-count ratio. `None` fraction when no crash is registered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Share {
    pub count: usize,
    pub total: usize,
}

impl Share {
    pub fn fraction(self) -> Option<f64> {
        (self.total > 0).then(|| self.count as f64 / self.total as f64)
    }

    pub fn is_undefined(self) -> bool {
        self.total == 0
    }

    /// Exact comparison with `num / den`.
    pub fn equals_ratio(self, num: usize, den: usize) -> bool {
        self.total > 0 && den > 0 && self.count * den == num * self.total
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Aggregate {
    pub nodes: BTreeMap<String, usize>,
    pub links: BTreeMap<(String, String), usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CausalChainGraph {
    taxonomy: Taxonomy,
    links: BTreeMap<(String, String), BTreeSet<String>>,
    registry: BTreeMap<String, CrashMeta>,
}

impl CausalChainGraph {
    pub fn new(taxonomy: Taxonomy) -> Self {
        CausalChainGraph {
            taxonomy,
            links: BTreeMap::new(),
            registry: BTreeMap::new(),
        }
    }

    pub fn taxonomy(&self) -> &Taxonomy {
        &self.taxonomy
    }

    pub fn links(&self) -> &BTreeMap<(String, String), BTreeSet<String>> {
        &self.links
    }

    pub fn registry(&self) -> &BTreeMap<String, CrashMeta> {
        &self.registry
    }

    pub fn crash_count(&self) -> usize {
        self.registry.len()
    }

    /// Records `crash_id` on each link of `chain`, creating links as
    /// needed. All checks run before the graph is touched, so a failed call
    /// leaves it unchanged.
    pub fn add_crash_chain<S: AsRef<str>>(&mut self, crash_id: &str, chain: &[(S, S)]) -> Result<(), DreamError> {
        let mut reaches_phenotype = false;
        for (from, to) in chain {
            let (from, to) = (from.as_ref(), to.as_ref());
            let from_term = self.taxonomy.get(from).ok_or_else(|| DreamError::UnknownLabel(from.to_string()))?;
            let to_term = self.taxonomy.get(to).ok_or_else(|| DreamError::UnknownLabel(to.to_string()))?;
            if from_term.kind() == NodeKind::Phenotype {
                return Err(DreamError::PhenotypeSource {
                    from: from.to_string(),
                    to: to.to_string(),
                });
            }
            reaches_phenotype |= to_term.kind() == NodeKind::Phenotype;
        }
        if !reaches_phenotype {
            return Err(DreamError::NoPhenotypeTerminal(crash_id.to_string()));
        }

        let mut adjacency: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for (from, to) in self.links.keys() {
            adjacency.entry(from).or_default().insert(to);
        }
        for (from, to) in chain {
            let (from, to) = (from.as_ref(), to.as_ref());
            if from == to || reachable(&adjacency, to, from) {
                return Err(DreamError::Cycle {
                    from: from.to_string(),
                    to: to.to_string(),
                });
            }
            adjacency.entry(from).or_default().insert(to);
        }

        self.registry.entry(crash_id.to_string()).or_default();
        for (from, to) in chain {
            self.links
                .entry((from.as_ref().to_string(), to.as_ref().to_string()))
                .or_default()
                .insert(crash_id.to_string());
        }
        Ok(())
    }

    /// Sets metadata on a crash, registering it if needed.
    pub fn set_metadata(&mut self, crash_id: &str, key: &str, value: &str) {
        self.registry
            .entry(crash_id.to_string())
            .or_default()
            .insert(key.to_string(), value.to_string());
    }

    /// Crashes whose chain contains `label`.
    pub fn crashes_with(&self, label: &str) -> BTreeSet<&str> {
        self.links
            .iter()
            .filter(|((from, to), _)| from == label || to == label)
            .flat_map(|(_, ids)| ids.iter().map(String::as_str))
            .collect()
    }

    /// Share of registered crashes whose chain includes `label` and whose
    /// metadata satisfies `filter`.
    pub fn factor_share(&self, label: &str, filter: Option<&dyn Fn(&CrashMeta) -> bool>) -> Result<Share, DreamError> {
        if !self.taxonomy.contains(label) {
            return Err(DreamError::UnknownLabel(label.to_string()));
        }
        let with = self.crashes_with(label);
        let count = with
            .iter()
            .filter(|id| filter.is_none_or(|f| f(&self.registry[**id])))
            .count();
        Ok(Share {
            count,
            total: self.registry.len(),
        })
    }

    /// Share of registered crashes whose metadata satisfies `filter`.
    pub fn metadata_share(&self, filter: impl Fn(&CrashMeta) -> bool) -> Share {
        Share {
            count: self.registry.values().filter(|m| filter(m)).count(),
            total: self.registry.len(),
        }
    }

    /// Distinct crashes per node over its incident links, and per link.
    pub fn aggregate(&self) -> Aggregate {
        let mut node_crashes: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        let mut links = BTreeMap::new();
        for ((from, to), ids) in &self.links {
            for node in [from, to] {
                node_crashes.entry(node).or_default().extend(ids.iter().map(String::as_str));
            }
            links.insert((from.clone(), to.clone()), ids.len());
        }
        Aggregate {
            nodes: node_crashes.into_iter().map(|(k, v)| (k.to_string(), v.len())).collect(),
            links,
        }
    }

    /// Graphviz DOT with crash counts on nodes and edge labels.
    pub fn emit_graph(&self) -> String {
        let agg = self.aggregate();
        let mut out = String::from("digraph dream {\n");
        for (label, count) in &agg.nodes {
            let (shape, colour) = match self.taxonomy.get(label).map(Term::kind) {
                Some(NodeKind::Phenotype) => ("box", "palegreen"),
                _ => ("ellipse", "lightblue"),
            };
            let _ = writeln!(
                out,
                "  \"{label}\" [label=\"{label} ({count})\", shape={shape}, style=filled, fillcolor={colour}];"
            );
        }
        for ((from, to), count) in &agg.links {
            let _ = writeln!(out, "  \"{from}\" -> \"{to}\" [label=\"{count}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Depth-first search from `start` for `target`.
fn reachable(adjacency: &BTreeMap<&str, BTreeSet<&str>>, start: &str, target: &str) -> bool {
    let mut stack = vec![start];
    let mut seen = BTreeSet::new();
    while let Some(node) = stack.pop() {
        if node == target {
            return true;
        }
        if seen.insert(node) {
            if let Some(next) = adjacency.get(node) {
                stack.extend(next.iter().copied());
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const HSR: &str = "habitually-stretching-rules";
    const MOS: &str = "misjudgement-of-situation";
    const NO_ACTION: &str = "timing/no-action";
    const TOV: &str = "temporary-obstruction-of-view";
    const LATE: &str = "late-observation";

    fn graph() -> CausalChainGraph {
        CausalChainGraph::new(Taxonomy::bundled())
    }

    #[test]
    fn habitual_violation_chain() {
        let mut g = graph();
        g.add_crash_chain("C1", &[(HSR, MOS), (MOS, NO_ACTION)]).unwrap();
        assert_eq!(g.links().len(), 2);
        assert!(g.links().values().all(|ids| ids.contains("C1")));
        let before = g.clone();
        g.add_crash_chain("C1", &[(HSR, MOS), (MOS, NO_ACTION)]).unwrap();
        assert_eq!(g, before);
        assert!(g.aggregate().nodes.values().all(|&c| c == 1));
    }

    #[test]
    fn chain_errors() {
        let mut g = graph();
        assert_eq!(
            g.add_crash_chain("C1", &[(HSR, MOS)]),
            Err(DreamError::NoPhenotypeTerminal("C1".into()))
        );
        assert_eq!(g.add_crash_chain("C1", &[(HSR, "typo")]), Err(DreamError::UnknownLabel("typo".into())));
        assert!(matches!(
            g.add_crash_chain("C1", &[(NO_ACTION, "speed")]),
            Err(DreamError::PhenotypeSource { .. })
        ));
        g.add_crash_chain("C1", &[(HSR, MOS), (MOS, NO_ACTION)]).unwrap();
        assert!(matches!(
            g.add_crash_chain("C2", &[(MOS, HSR), (HSR, NO_ACTION)]),
            Err(DreamError::Cycle { .. })
        ));
        assert_eq!(g.crash_count(), 1);
        assert_eq!(
            g.add_crash_chain::<&str>("C3", &[]),
            Err(DreamError::NoPhenotypeTerminal("C3".into()))
        );
    }

    #[test]
    fn shared_link_counts_two() {
        let mut g = graph();
        g.add_crash_chain("C1", &[(TOV, LATE), (LATE, NO_ACTION)]).unwrap();
        g.add_crash_chain("C2", &[(TOV, LATE), (LATE, NO_ACTION)]).unwrap();
        let agg = g.aggregate();
        assert_eq!(agg.links[&(TOV.to_string(), LATE.to_string())], 2);
        let dot = g.emit_graph();
        assert!(dot.contains("\"temporary-obstruction-of-view\" -> \"late-observation\" [label=\"2\"];"));
    }

    #[test]
    fn empty_graph() {
        let g = graph();
        assert_eq!(g.emit_graph(), "digraph dream {\n}\n");
        let share = g.factor_share(TOV, None).unwrap();
        assert!(share.is_undefined());
        assert_eq!(share.fraction(), None);
        assert!(g.factor_share("nope", None).is_err());
    }

    #[test]
    fn share_with_metadata() {
        let mut g = graph();
        g.add_crash_chain("C1", &[(TOV, NO_ACTION)]).unwrap();
        g.add_crash_chain("C2", &[(HSR, NO_ACTION)]).unwrap();
        g.set_metadata("C1", "lighting", "dark");
        let dark = |m: &CrashMeta| m.get("lighting").is_some_and(|v| v == "dark");
        assert!(g.factor_share(TOV, None).unwrap().equals_ratio(1, 2));
        assert_eq!(g.factor_share(HSR, Some(&dark)).unwrap().count, 0);
        assert!(g.metadata_share(dark).equals_ratio(1, 2));
    }

    #[test]
    fn registered_terms() {
        let mut t = Taxonomy::bundled();
        t.extend_from_str("# extra\ngenotype organization insufficient-training\nphenotype force force\n")
            .unwrap();
        assert_eq!(t.get("force").map(Term::kind), Some(NodeKind::Phenotype));
        assert!(t.extend_from_str("genotype nowhere x").is_err());
        assert!(t.extend_from_str("genotype organization speed").is_err());
        let mut g = CausalChainGraph::new(t);
        g.add_crash_chain("C1", &[("insufficient-training", "force")]).unwrap();
    }

    fn labels() -> Vec<&'static str> {
        vec![HSR, MOS, TOV, LATE, "missed-observation", "insufficient-guidance", NO_ACTION, "speed", "direction"]
    }

    fn arb_chains() -> impl Strategy<Value = Vec<(u8, Vec<(usize, usize)>)>> {
        let n = labels().len();
        proptest::collection::vec((0u8..6, proptest::collection::vec((0..n, 0..n), 1..5)), 0..20)
    }

    fn acyclic(g: &CausalChainGraph) -> bool {
        let mut adjacency: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for (from, to) in g.links().keys() {
            adjacency.entry(from.as_str()).or_default().insert(to.as_str());
        }
        g.links().keys().all(|(from, to)| !reachable(&adjacency, to, from))
    }

    proptest! {
        #[test]
        fn graph_stays_acyclic_and_calls_are_idempotent(chains in arb_chains()) {
            let l = labels();
            let mut g = graph();
            for (crash, chain) in &chains {
                let chain: Vec<(&str, &str)> = chain.iter().map(|&(a, b)| (l[a], l[b])).collect();
                let id = format!("C{crash}");
                if g.add_crash_chain(&id, &chain).is_ok() {
                    prop_assert!(acyclic(&g));
                    let snapshot = g.clone();
                    prop_assert!(g.add_crash_chain(&id, &chain).is_ok());
                    prop_assert_eq!(&g, &snapshot);
                    let total = g.crash_count();
                    prop_assert!(g.aggregate().nodes.values().all(|&c| c <= total));
                }
            }
        }

        #[test]
        fn aggregate_ignores_insertion_order(chains in arb_chains()) {
            let l = labels();
            let accepted: Vec<(String, Vec<(&str, &str)>)> = {
                let mut g = graph();
                chains.iter().filter_map(|(crash, chain)| {
                    let chain: Vec<(&str, &str)> = chain.iter().map(|&(a, b)| (l[a], l[b])).collect();
                    let id = format!("C{crash}");
                    g.add_crash_chain(&id, &chain).ok().map(|_| (id, chain))
                }).collect()
            };
            let mut forward = graph();
            let mut backward = graph();
            for (id, chain) in &accepted {
                forward.add_crash_chain(id, chain).unwrap();
            }
            for (id, chain) in accepted.iter().rev() {
                backward.add_crash_chain(id, chain).unwrap();
            }
            prop_assert_eq!(forward.aggregate(), backward.aggregate());
            prop_assert_eq!(forward.emit_graph(), backward.emit_graph());
        }

        #[test]
        fn share_numerator_is_monotone(chains in arb_chains()) {
            let l = labels();
            let mut g = graph();
            for (crash, chain) in &chains {
                let chain: Vec<(&str, &str)> = chain.iter().map(|&(a, b)| (l[a], l[b])).collect();
                let before = g.factor_share(TOV, None).unwrap().count;
                let id = format!("N{crash}");
                let lacks = chain.iter().all(|&(a, b)| a != TOV && b != TOV);
                if lacks && g.add_crash_chain(&id, &chain).is_ok() && !g.crashes_with(TOV).contains(id.as_str()) {
                    prop_assert!(g.factor_share(TOV, None).unwrap().count <= before);
                }
            }
        }
    }
}
