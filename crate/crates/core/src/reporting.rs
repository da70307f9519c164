//! Descriptive statistics: distribution tables, the damage heatmap and
//! severity by scenario group, with delimited and JSON-lines emitters.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};

use crate::data_model::{codes, CrashRecord, DamageZone, Field, ScenarioId, Schema};
use crate::ingestion::AnnualPartyDistribution;
use crate::percent;
use crate::scenario_engine::FrequencyRow;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionRow {
    pub code: u8,
    pub label: String,
    pub count: usize,
}

/// Counts per code, in code order, with only observed codes listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    pub dimension: String,
    pub rows: Vec<DistributionRow>,
    pub total: usize,
}

impl DistributionTable {
    fn from_counts(dimension: &str, counts: BTreeMap<u8, usize>, label: impl Fn(u8) -> String) -> Self {
        let total = counts.values().sum();
        DistributionTable {
            dimension: dimension.to_string(),
            rows: counts
                .into_iter()
                .map(|(code, count)| DistributionRow {
                    code,
                    label: label(code),
                    count,
                })
                .collect(),
            total,
        }
    }

    fn of_field(dimension: &str, field: Field, records: &[&CrashRecord]) -> Self {
        let schema = Schema::bundled();
        let mut counts = BTreeMap::new();
        for r in records {
            if let Some(code) = field.code(r) {
                *counts.entry(code).or_default() += 1;
            }
        }
        DistributionTable::from_counts(dimension, counts, |c| {
            schema.label(field, c).map(|l| l.into_owned()).unwrap_or_else(|| c.to_string())
        })
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn count(&self, code: u8) -> usize {
        self.rows.iter().find(|r| r.code == code).map_or(0, |r| r.count)
    }

    /// Rounded percentage of one code in hundredths.
    pub fn hundredths(&self, code: u8) -> Option<u64> {
        percent::hundredths(self.count(code) as u64, self.total as u64)
    }

    pub fn percent(&self, code: u8) -> Option<f64> {
        percent::rounded(self.count(code) as u64, self.total as u64)
    }

    /// Fraction of the total whose code satisfies `pred`.
    pub fn share_where(&self, pred: impl Fn(u8) -> bool) -> Option<f64> {
        let hits: usize = self.rows.iter().filter(|r| pred(r.code)).map(|r| r.count).sum();
        (self.total > 0).then(|| hits as f64 / self.total as f64)
    }
}

pub fn location_distribution(records: &[CrashRecord]) -> DistributionTable {
    let all: Vec<&CrashRecord> = records.iter().collect();
    DistributionTable::of_field("location_type", Field::LocationType, &all)
}

/// Control types among intersection-located records.
pub fn control_type_distribution(records: &[CrashRecord]) -> DistributionTable {
    let at: Vec<&CrashRecord> = records.iter().filter(|r| r.is_intersection()).collect();
    DistributionTable::of_field("traffic_control_type", Field::TrafficControlType, &at)
}

pub fn severity_distribution(records: &[CrashRecord]) -> DistributionTable {
    let all: Vec<&CrashRecord> = records.iter().collect();
    DistributionTable::of_field("damage_severity", Field::DamageSeverity, &all)
}

/// Other-party counts of one year.
pub fn party_distribution(dist: &AnnualPartyDistribution, year: i32) -> DistributionTable {
    let counts = dist.years.get(&year).cloned().unwrap_or_default();
    let mut by_code = BTreeMap::new();
    let mut names = BTreeMap::new();
    for (party, n) in counts {
        let code = (1..=6u8)
            .find(|&c| crate::data_model::PartyType::from_object_code(c) == Some(party))
            .unwrap_or(0);
        by_code.insert(code, n);
        names.insert(code, party.name());
    }
    DistributionTable::from_counts(&format!("party_{year}"), by_code, |c| names[&c].to_string())
}

/// Damage-zone incidences on the body grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeatmapMatrix {
    pub cells: [[usize; DamageZone::GRID_COLS]; DamageZone::GRID_ROWS],
    pub zones: BTreeMap<DamageZone, usize>,
    pub total: usize,
}

impl HeatmapMatrix {
    pub fn count(&self, zone: DamageZone) -> usize {
        self.zones.get(&zone).copied().unwrap_or(0)
    }

    /// Most frequent zone; ties go to the lower zone code.
    pub fn max_zone(&self) -> Option<DamageZone> {
        DamageZone::ALL
            .iter()
            .copied()
            .filter(|z| self.count(*z) > 0)
            .max_by(|a, b| self.count(*a).cmp(&self.count(*b)).then(b.code().cmp(&a.code())))
    }
}

pub fn damage_heatmap(records: &[CrashRecord]) -> HeatmapMatrix {
    let mut m = HeatmapMatrix {
        cells: [[0; DamageZone::GRID_COLS]; DamageZone::GRID_ROWS],
        zones: DamageZone::ALL.iter().map(|&z| (z, 0)).collect(),
        total: 0,
    };
    for r in records {
        for &zone in &r.damage_locations {
            let (row, col) = zone.grid_position();
            m.cells[row][col] += 1;
            *m.zones.entry(zone).or_default() += 1;
            m.total += 1;
        }
    }
    m
}

/// Scenarios pooled for severity reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioGroup {
    pub name: String,
    pub scenarios: BTreeSet<ScenarioId>,
    /// Count only records located at an intersection.
    pub intersection_only: bool,
}

impl ScenarioGroup {
    /// Crossing-path scenarios plus non-collision, at intersections.
    pub fn intersection() -> ScenarioGroup {
        let mut scenarios: BTreeSet<ScenarioId> = ScenarioId::INTERSECTION.into_iter().collect();
        scenarios.insert(ScenarioId::NON_COLLISION);
        ScenarioGroup {
            name: "intersection".into(),
            scenarios,
            intersection_only: true,
        }
    }

    pub fn rear_end() -> ScenarioGroup {
        ScenarioGroup {
            name: "rear-end".into(),
            scenarios: ScenarioId::REAR_END.into_iter().collect(),
            intersection_only: false,
        }
    }

    pub fn admits(&self, scenario: ScenarioId, record: &CrashRecord) -> bool {
        self.scenarios.contains(&scenario) && (!self.intersection_only || record.is_intersection())
    }
}

/// Severity table per group. Records without an assignment are skipped.
pub fn severity_by_scenario(
    assignments: &BTreeMap<String, ScenarioId>,
    records: &[CrashRecord],
    groups: &[ScenarioGroup],
) -> Vec<(String, DistributionTable)> {
    groups
        .iter()
        .map(|g| {
            let members: Vec<&CrashRecord> = records
                .iter()
                .filter(|r| assignments.get(&r.record_id).is_some_and(|&s| g.admits(s, r)))
                .collect();
            let mut table = DistributionTable::of_field("damage_severity", Field::DamageSeverity, &members);
            table.dimension = format!("damage_severity[{}]", g.name);
            (g.name.clone(), table)
        })
        .collect()
}

/// Moderate or severe.
pub fn is_moderate_or_worse(code: u8) -> bool {
    code >= codes::severity::MODERATE
}

pub fn write_table_csv<W: Write>(writer: W, table: &DistributionTable) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["dimension", "code", "label", "count", "percent"])?;
    for r in &table.rows {
        w.write_record([
            table.dimension.clone(),
            r.code.to_string(),
            r.label.clone(),
            r.count.to_string(),
            percent::format(r.count as u64, table.total as u64),
        ])?;
    }
    w.flush()
}

pub fn write_table_jsonl<W: Write>(mut writer: W, table: &DistributionTable) -> io::Result<()> {
    for r in &table.rows {
        let row = serde_json::json!({
            "dimension": table.dimension,
            "code": r.code,
            "label": r.label,
            "count": r.count,
            "percent": percent::format(r.count as u64, table.total as u64),
        });
        writeln!(writer, "{row}")?;
    }
    Ok(())
}

pub fn write_heatmap_csv<W: Write>(writer: W, heatmap: &HeatmapMatrix) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["zone", "code", "row", "col", "count"])?;
    for zone in DamageZone::ALL {
        let (row, col) = zone.grid_position();
        w.write_record([
            zone.name().to_string(),
            zone.code().to_string(),
            row.to_string(),
            col.to_string(),
            heatmap.count(zone).to_string(),
        ])?;
    }
    w.flush()
}

pub fn write_heatmap_jsonl<W: Write>(mut writer: W, heatmap: &HeatmapMatrix) -> io::Result<()> {
    for zone in DamageZone::ALL {
        let (row, col) = zone.grid_position();
        let line = serde_json::json!({
            "zone": zone.name(),
            "code": zone.code(),
            "row": row,
            "col": col,
            "count": heatmap.count(zone),
        });
        writeln!(writer, "{line}")?;
    }
    Ok(())
}

pub fn write_frequency_csv<W: Write>(writer: W, rows: &[FrequencyRow]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["table_number", "scenario_id", "scenario", "count", "percent"])?;
    for r in rows {
        w.write_record([
            r.scenario.table_number().to_string(),
            r.scenario.id().to_string(),
            r.scenario.name().to_string(),
            r.count.to_string(),
            format!("{}.{:02}", r.hundredths / 100, r.hundredths % 100),
        ])?;
    }
    w.flush()
}

pub fn write_frequency_jsonl<W: Write>(mut writer: W, rows: &[FrequencyRow]) -> io::Result<()> {
    for r in rows {
        let line = serde_json::json!({
            "table_number": r.scenario.table_number(),
            "scenario_id": r.scenario.id(),
            "scenario": r.scenario.name(),
            "count": r.count,
            "percent": format!("{}.{:02}", r.hundredths / 100, r.hundredths % 100),
        });
        writeln!(writer, "{line}")?;
    }
    Ok(())
}
