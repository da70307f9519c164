//! Mapping rules and the line-based rule file format.
//!
//! ```text
//! # comment
//! default_scenario = 36
//!
//! [rule lvs-av-lead]
//! priority = 70
//! scenario = 24
//! when crash_type = 3
//! when relative_position in 1,2
//! when traffic_control_type absent
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use crate::data_model::{CrashRecord, Field, FieldKind, ScenarioId, Schema};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operator {
    Equals(u8),
    NotEquals(u8),
    InSet(BTreeSet<u8>),
    Absent,
    Present,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldPredicate {
    pub field: Field,
    pub op: Operator,
}

impl FieldPredicate {
    pub fn new(field: Field, op: Operator) -> Self {
        FieldPredicate { field, op }
    }

    /// An absent value satisfies only `absent` and `!=`.
    pub fn holds(&self, record: &CrashRecord) -> bool {
        let value = self.field.code(record);
        match &self.op {
            Operator::Equals(v) => value == Some(*v),
            Operator::NotEquals(v) => value != Some(*v),
            Operator::InSet(set) => value.is_some_and(|c| set.contains(&c)),
            Operator::Absent => value.is_none(),
            Operator::Present => value.is_some(),
        }
    }

    fn values(&self) -> Vec<u8> {
        match &self.op {
            Operator::Equals(v) | Operator::NotEquals(v) => vec![*v],
            Operator::InSet(set) => set.iter().copied().collect(),
            Operator::Absent | Operator::Present => Vec::new(),
        }
    }
}

impl fmt::Display for FieldPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.op {
            Operator::Equals(v) => write!(f, "{} = {v}", self.field),
            Operator::NotEquals(v) => write!(f, "{} != {v}", self.field),
            Operator::InSet(set) => {
                let list: Vec<String> = set.iter().map(u8::to_string).collect();
                write!(f, "{} in {}", self.field, list.join(","))
            }
            Operator::Absent => write!(f, "{} absent", self.field),
            Operator::Present => write!(f, "{} present", self.field),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingRule {
    pub rule_id: String,
    pub priority: i64,
    pub scenario: ScenarioId,
    pub predicates: Vec<FieldPredicate>,
}

impl MappingRule {
    pub fn matches(&self, record: &CrashRecord) -> bool {
        self.predicates.iter().all(|p| p.holds(record))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RuleLoadError {
    #[error("cannot read rule file {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl RuleLoadError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        RuleLoadError::Syntax {
            line,
            message: message.into(),
        }
    }
}

/// An immutable, validated rule collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<MappingRule>,
    /// Indices into `rules`: priority descending, then file position.
    order: Vec<usize>,
    default_scenario: ScenarioId,
}

impl RuleSet {
    /// Builds a rule set from rules in file order.
    pub fn new(rules: Vec<MappingRule>, default_scenario: ScenarioId) -> Result<RuleSet, String> {
        let schema = Schema::bundled();
        let mut ids = BTreeSet::new();
        for rule in &rules {
            if !ids.insert(rule.rule_id.as_str()) {
                return Err(format!("duplicate rule id `{}`", rule.rule_id));
            }
            check_rule(rule, schema).map_err(|m| format!("rule `{}`: {m}", rule.rule_id))?;
        }
        let mut order: Vec<usize> = (0..rules.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(rules[i].priority), i));
        Ok(RuleSet {
            rules,
            order,
            default_scenario,
        })
    }

    pub fn load(path: &Path) -> Result<RuleSet, RuleLoadError> {
        let text = std::fs::read_to_string(path).map_err(|source| RuleLoadError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        RuleSet::parse(&text)
    }

    pub fn parse(text: &str) -> Result<RuleSet, RuleLoadError> {
        RuleSet::parse_with(text, Schema::bundled())
    }

    pub fn parse_with(text: &str, schema: &Schema) -> Result<RuleSet, RuleLoadError> {
        let mut parser = Parser {
            schema,
            default_scenario: None,
            rules: Vec::new(),
            current: None,
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                parser.line(idx + 1, line)?;
            }
        }
        parser.finish()
    }

    /// Rules in file order.
    pub fn rules(&self) -> &[MappingRule] {
        &self.rules
    }

    /// Rules in evaluation order.
    pub fn by_priority(&self) -> impl Iterator<Item = &MappingRule> {
        self.order.iter().map(|&i| &self.rules[i])
    }

    pub fn default_scenario(&self) -> ScenarioId {
        self.default_scenario
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

fn check_rule(rule: &MappingRule, schema: &Schema) -> Result<(), String> {
    if rule.predicates.is_empty() {
        return Err("rule has no predicates".into());
    }
    let mut equals: BTreeMap<Field, u8> = BTreeMap::new();
    let mut presence: BTreeMap<Field, bool> = BTreeMap::new();
    for p in &rule.predicates {
        check_predicate(p, schema)?;
        match p.op {
            Operator::Equals(v) => {
                if let Some(&prev) = equals.get(&p.field) {
                    if prev != v {
                        return Err(format!("contradictory predicates: {} = {prev} and {} = {v}", p.field, p.field));
                    }
                }
                equals.insert(p.field, v);
                presence.entry(p.field).or_insert(true);
            }
            Operator::Absent | Operator::Present => {
                let present = p.op == Operator::Present;
                if presence.insert(p.field, present).is_some_and(|prev| prev != present) {
                    return Err(format!("contradictory presence predicates on {}", p.field));
                }
            }
            _ => {}
        }
    }
    Ok(())
}

fn check_predicate(p: &FieldPredicate, schema: &Schema) -> Result<(), String> {
    let Some(domain) = schema.domain(p.field) else {
        return Err(format!("field `{}` cannot be used in a predicate", p.field));
    };
    if matches!(p.op, Operator::Absent | Operator::Present) && p.field.kind() != FieldKind::OptionalCode {
        return Err(format!("field `{}` is never absent", p.field));
    }
    if let Operator::InSet(set) = &p.op {
        if set.is_empty() {
            return Err(format!("empty value list for {}", p.field));
        }
    }
    for v in p.values() {
        if !domain.contains(v) {
            return Err(format!("{} code {v} out of range {}", p.field, domain.describe()));
        }
    }
    Ok(())
}

struct PendingRule {
    line: usize,
    rule_id: String,
    priority: Option<i64>,
    scenario: Option<ScenarioId>,
    predicates: Vec<FieldPredicate>,
}

struct Parser<'a> {
    schema: &'a Schema,
    default_scenario: Option<ScenarioId>,
    rules: Vec<(usize, MappingRule)>,
    current: Option<PendingRule>,
}

impl Parser<'_> {
    fn line(&mut self, n: usize, line: &str) -> Result<(), RuleLoadError> {
        if let Some(header) = line.strip_prefix('[') {
            let inner = header
                .strip_suffix(']')
                .ok_or_else(|| RuleLoadError::at(n, "unterminated rule header"))?;
            let id = inner
                .trim()
                .strip_prefix("rule")
                .map(str::trim)
                .filter(|id| !id.is_empty() && !id.contains(char::is_whitespace))
                .ok_or_else(|| RuleLoadError::at(n, "expected `[rule <id>]`"))?;
            self.close()?;
            if self.rules.iter().any(|(_, r)| r.rule_id == id) {
                return Err(RuleLoadError::at(n, format!("duplicate rule id `{id}`")));
            }
            self.current = Some(PendingRule {
                line: n,
                rule_id: id.to_string(),
                priority: None,
                scenario: None,
                predicates: Vec::new(),
            });
            return Ok(());
        }

        if let Some(rest) = line.strip_prefix("when ") {
            let predicate = parse_predicate(rest.trim(), self.schema).map_err(|m| RuleLoadError::at(n, m))?;
            let rule = self
                .current
                .as_mut()
                .ok_or_else(|| RuleLoadError::at(n, "predicate outside a rule"))?;
            rule.predicates.push(predicate);
            return Ok(());
        }

        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| RuleLoadError::at(n, format!("unrecognised line `{line}`")))?;
        match (key, self.current.as_mut()) {
            ("default_scenario", None) => {
                if self.default_scenario.is_some() {
                    return Err(RuleLoadError::at(n, "default_scenario given twice"));
                }
                self.default_scenario = Some(parse_scenario(value).map_err(|m| RuleLoadError::at(n, m))?);
            }
            ("priority", Some(rule)) => {
                if rule.priority.is_some() {
                    return Err(RuleLoadError::at(n, "priority given twice"));
                }
                let p = value
                    .parse::<i64>()
                    .map_err(|_| RuleLoadError::at(n, format!("priority `{value}` is not an integer")))?;
                rule.priority = Some(p);
            }
            ("scenario", Some(rule)) => {
                if rule.scenario.is_some() {
                    return Err(RuleLoadError::at(n, "scenario given twice"));
                }
                rule.scenario = Some(parse_scenario(value).map_err(|m| RuleLoadError::at(n, m))?);
            }
            ("default_scenario", Some(_)) => {
                return Err(RuleLoadError::at(n, "default_scenario must precede the first rule"))
            }
            (key, _) => return Err(RuleLoadError::at(n, format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    fn close(&mut self) -> Result<(), RuleLoadError> {
        let Some(p) = self.current.take() else { return Ok(()) };
        let rule = MappingRule {
            priority: p.priority.ok_or_else(|| RuleLoadError::at(p.line, format!("rule `{}` has no priority", p.rule_id)))?,
            scenario: p.scenario.ok_or_else(|| RuleLoadError::at(p.line, format!("rule `{}` has no scenario", p.rule_id)))?,
            rule_id: p.rule_id,
            predicates: p.predicates,
        };
        check_rule(&rule, self.schema).map_err(|m| RuleLoadError::at(p.line, format!("rule `{}`: {m}", rule.rule_id)))?;
        self.rules.push((p.line, rule));
        Ok(())
    }

    fn finish(mut self) -> Result<RuleSet, RuleLoadError> {
        self.close()?;
        let rules: Vec<MappingRule> = self.rules.into_iter().map(|(_, r)| r).collect();
        RuleSet::new(rules, self.default_scenario.unwrap_or(ScenarioId::OTHER)).map_err(|m| RuleLoadError::at(0, m))
    }
}

fn parse_scenario(text: &str) -> Result<ScenarioId, String> {
    text.parse::<u8>()
        .ok()
        .and_then(ScenarioId::new)
        .ok_or_else(|| format!("scenario `{text}` is not an id in 1-37"))
}

fn parse_code(field: Field, text: &str) -> Result<u8, String> {
    text.trim()
        .parse::<u8>()
        .map_err(|_| format!("{field}: `{}` is not a code", text.trim()))
}

fn parse_predicate(text: &str, schema: &Schema) -> Result<FieldPredicate, String> {
    let mut words = text.split_whitespace();
    let name = words.next().ok_or("empty predicate")?;
    let field = Field::from_name(name).ok_or_else(|| format!("unknown field `{name}`"))?;
    let op_word = words.next().ok_or_else(|| format!("missing operator after `{name}`"))?;
    let rest: String = words.collect::<Vec<_>>().join(" ");

    let op = match op_word {
        "=" => Operator::Equals(parse_code(field, &rest)?),
        "!=" => Operator::NotEquals(parse_code(field, &rest)?),
        "in" => {
            let values = rest
                .split(',')
                .filter(|v| !v.trim().is_empty())
                .map(|v| parse_code(field, v))
                .collect::<Result<BTreeSet<u8>, String>>()?;
            Operator::InSet(values)
        }
        "absent" | "present" if rest.is_empty() => {
            if op_word == "absent" {
                Operator::Absent
            } else {
                Operator::Present
            }
        }
        "absent" | "present" => return Err(format!("`{op_word}` takes no value")),
        other => return Err(format!("unknown operator `{other}`")),
    };
    let predicate = FieldPredicate::new(field, op);
    check_predicate(&predicate, schema)?;
    Ok(predicate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_of(text: &str) -> String {
        RuleSet::parse(text).unwrap_err().to_string()
    }

    #[test]
    fn parses_rules_in_order() {
        let rs = RuleSet::parse(
            "default_scenario = 36\n\
             [rule a]\npriority = 5\nscenario = 24\nwhen crash_type = 3 # rear-end\n\
             [rule b]\npriority = 9\nscenario = 20\nwhen relative_position in 1, 2\nwhen traffic_control_type absent\n",
        )
        .unwrap();
        assert_eq!(rs.len(), 2);
        let ids: Vec<&str> = rs.by_priority().map(|r| r.rule_id.as_str()).collect();
        assert_eq!(ids, ["b", "a"]);
        assert_eq!(rs.rules()[1].predicates[0].to_string(), "relative_position in 1,2");
    }

    #[test]
    fn load_errors_carry_line_numbers() {
        assert_eq!(err_of("[rule a]\npriority = 1\nscenario = 24\nwhen colour = 3\n"), "line 4: unknown field `colour`");
        assert_eq!(
            err_of("[rule a]\npriority = 1\nscenario = 24\nwhen weather = 9\n"),
            "line 4: weather code 9 out of range 1-7"
        );
        assert_eq!(err_of("[rule a]\npriority = 1\nscenario = 40\n"), "line 3: scenario `40` is not an id in 1-37");
        assert_eq!(err_of("[rule a]\npriority = 1\nscenario = 24\n"), "line 1: rule `a`: rule has no predicates");
        assert!(err_of("[rule a]\npriority = 1\nscenario = 24\nwhen weather = 1\nwhen weather = 2\n")
            .contains("contradictory"));
        assert_eq!(err_of("when weather = 1\n"), "line 1: predicate outside a rule");
        assert!(err_of("[rule a]\npriority = 1\nscenario = 2\nwhen weather absent\n").contains("never absent"));
        assert!(err_of("[rule a]\nscenario = 2\nwhen weather = 1\n").contains("no priority"));
        assert!(err_of("[rule a]\npriority = 1\nscenario = 2\nwhen weather = 1\n[rule a]\n").contains("line 5: duplicate"));
        assert!(err_of("[rule a]\npriority = 1\nscenario = 2\nwhen damage_locations = 1\n").contains("cannot be used"));
    }

    #[test]
    fn absent_values() {
        let mut r = crate::data_model::tests::sample_record();
        r.traffic_control_type = None;
        let ne = FieldPredicate::new(Field::TrafficControlType, Operator::NotEquals(3));
        let eq = FieldPredicate::new(Field::TrafficControlType, Operator::Equals(3));
        let set = FieldPredicate::new(Field::TrafficControlType, Operator::InSet([3].into()));
        assert!(ne.holds(&r));
        assert!(!eq.holds(&r));
        assert!(!set.holds(&r));
        assert!(FieldPredicate::new(Field::TrafficControlType, Operator::Absent).holds(&r));
    }
}
