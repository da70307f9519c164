//! Chain files:
//!
//! ```text
//! crash C01
//! meta lighting=dark scenario=27
//! habitually-stretching-rules -> misjudgement-of-situation
//! misjudgement-of-situation -> timing/no-action
//! end
//! ```

use super::{CausalChainGraph, CrashMeta, DreamError, Taxonomy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainEntry {
    /// Line of the `crash` header.
    pub line: usize,
    pub crash_id: String,
    pub meta: CrashMeta,
    pub links: Vec<(String, String)>,
}

pub fn parse_chains(text: &str) -> Result<Vec<ChainEntry>, DreamError> {
    let mut entries = Vec::new();
    let mut current: Option<ChainEntry> = None;
    for (idx, raw) in text.lines().enumerate() {
        let n = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| DreamError::Syntax { line: n, message };

        if let Some(id) = line.strip_prefix("crash ") {
            if current.is_some() {
                return Err(syntax("`crash` inside an open entry; missing `end`".into()));
            }
            let id = id.trim();
            if id.is_empty() || id.contains(char::is_whitespace) {
                return Err(syntax(format!("bad crash id `{id}`")));
            }
            if entries.iter().any(|e: &ChainEntry| e.crash_id == id) {
                return Err(syntax(format!("crash `{id}` listed twice")));
            }
            current = Some(ChainEntry {
                line: n,
                crash_id: id.to_string(),
                meta: CrashMeta::new(),
                links: Vec::new(),
            });
            continue;
        }

        let entry = current
            .as_mut()
            .ok_or_else(|| syntax(format!("`{line}` outside a crash entry")))?;
        if line == "end" {
            entries.push(current.take().expect("open entry"));
        } else if let Some(pairs) = line.strip_prefix("meta ") {
            for pair in pairs.split_whitespace() {
                let (k, v) = pair
                    .split_once('=')
                    .filter(|(k, _)| !k.is_empty())
                    .ok_or_else(|| syntax(format!("metadata `{pair}` is not key=value")))?;
                entry.meta.insert(k.to_string(), v.to_string());
            }
        } else if let Some((from, to)) = line.split_once("->") {
            let (from, to) = (from.trim(), to.trim());
            if from.is_empty() || to.is_empty() {
                return Err(syntax(format!("incomplete link `{line}`")));
            }
            entry.links.push((from.to_string(), to.to_string()));
        } else {
            return Err(syntax(format!("unrecognised line `{line}`")));
        }
    }
    if let Some(open) = current {
        return Err(DreamError::Syntax {
            line: open.line,
            message: format!("crash `{}` has no `end`", open.crash_id),
        });
    }
    Ok(entries)
}

impl CausalChainGraph {
    /// Builds a graph from parsed entries; errors name the entry's line.
    pub fn from_entries(taxonomy: Taxonomy, entries: &[ChainEntry]) -> Result<CausalChainGraph, DreamError> {
        let mut graph = CausalChainGraph::new(taxonomy);
        for e in entries {
            graph.add_crash_chain(&e.crash_id, &e.links).map_err(|err| DreamError::Syntax {
                line: e.line,
                message: err.to_string(),
            })?;
            for (k, v) in &e.meta {
                graph.set_metadata(&e.crash_id, k, v);
            }
        }
        Ok(graph)
    }

    pub fn from_chain_text(taxonomy: Taxonomy, text: &str) -> Result<CausalChainGraph, DreamError> {
        CausalChainGraph::from_entries(taxonomy, &parse_chains(text)?)
    }
}
