//! Record files: parsing with per-row diagnostics, writing, the analysis
//! filter and per-year party counts.
//!
//! Two interchange formats are supported (see `docs/formats.md`):
//!
//! - delimited: UTF-8, comma separated, one header row of field names, one
//!   record per row, integer codes, empty cell = absent;
//! - JSON lines: one JSON object per line keyed by field name.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use chrono::{Datelike, NaiveDate};
use rayon::prelude::*;

use crate::data_model::{codes, validate_with, CrashRecord, DamageZone, Field, FieldKind, PartyType, Schema};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFormat {
    Delimited,
    JsonLines,
}

impl RecordFormat {
    /// `.jsonl`/`.ndjson` select JSON lines; anything else is delimited.
    pub fn from_path(path: &Path) -> RecordFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("ndjson") => RecordFormat::JsonLines,
            _ => RecordFormat::Delimited,
        }
    }
}

/// Abort-class ingestion failures.
#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Unreadable { path: PathBuf, source: io::Error },
    #[error("malformed header: {0}")]
    Header(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// A row that did not yield a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowDiagnostic {
    pub file: Option<String>,
    /// 1-based line number in the source file.
    pub line: u64,
    pub record_id: Option<String>,
    pub causes: Vec<String>,
}

impl fmt::Display for RowDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "line {}", self.line)?;
        if let Some(id) = &self.record_id {
            write!(f, " ({id})")?;
        }
        write!(f, ": {}", self.causes.join("; "))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseOutcome {
    /// Valid records in source order.
    pub records: Vec<CrashRecord>,
    pub diagnostics: Vec<RowDiagnostic>,
}

/// Parses a record file with the bundled schema, choosing the format from
/// the file extension.
pub fn parse_records(path: &Path) -> Result<ParseOutcome, IngestError> {
    parse_records_with(path, Schema::bundled())
}

pub fn parse_records_with(path: &Path, schema: &Schema) -> Result<ParseOutcome, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Unreadable {
        path: path.to_path_buf(),
        source,
    })?;
    parse_reader(file, RecordFormat::from_path(path), schema)
}

/// Parses several files concurrently. Records and diagnostics are merged in
/// file order, then row order; a record id repeated across files is reported
/// like an in-file duplicate.
pub fn parse_files(paths: &[PathBuf], schema: &Schema) -> Result<ParseOutcome, IngestError> {
    let outcomes: Vec<Result<ParseOutcome, IngestError>> =
        paths.par_iter().map(|p| parse_records_with(p, schema)).collect();

    let mut merged = ParseOutcome::default();
    let mut seen: HashMap<String, String> = HashMap::new();
    for (path, outcome) in paths.iter().zip(outcomes) {
        let outcome = outcome?;
        let name = path.display().to_string();
        for mut d in outcome.diagnostics {
            d.file = Some(name.clone());
            merged.diagnostics.push(d);
        }
        for record in outcome.records {
            if let Some(first) = seen.get(&record.record_id) {
                merged.diagnostics.push(RowDiagnostic {
                    file: Some(name.clone()),
                    line: 0,
                    record_id: Some(record.record_id.clone()),
                    causes: vec![format!("duplicate record_id `{}` (first seen in {first})", record.record_id)],
                });
                continue;
            }
            seen.insert(record.record_id.clone(), name.clone());
            merged.records.push(record);
        }
    }
    Ok(merged)
}

pub fn parse_reader<R: Read>(reader: R, format: RecordFormat, schema: &Schema) -> Result<ParseOutcome, IngestError> {
    let mut rows = RowCollector::new(schema);
    match format {
        RecordFormat::Delimited => parse_delimited(reader, &mut rows)?,
        RecordFormat::JsonLines => parse_json_lines(reader, &mut rows)?,
    }
    Ok(rows.finish())
}

struct RowCollector<'a> {
    schema: &'a Schema,
    outcome: ParseOutcome,
    first_line: HashMap<String, u64>,
}

impl<'a> RowCollector<'a> {
    fn new(schema: &'a Schema) -> Self {
        RowCollector {
            schema,
            outcome: ParseOutcome::default(),
            first_line: HashMap::new(),
        }
    }

    fn reject(&mut self, line: u64, record_id: Option<String>, causes: Vec<String>) {
        self.outcome.diagnostics.push(RowDiagnostic {
            file: None,
            line,
            record_id,
            causes,
        });
    }

    /// `cells` maps every known field to its raw text ("" when absent).
    fn accept(&mut self, line: u64, cells: &HashMap<Field, String>, mut causes: Vec<String>) {
        let id = cells.get(&Field::RecordId).map(|s| s.trim().to_string()).filter(|s| !s.is_empty());
        match build_record(cells, self.schema) {
            Ok(record) if causes.is_empty() => {
                if let Some(&first) = self.first_line.get(&record.record_id) {
                    let msg = format!("duplicate record_id `{}` (first seen on line {first})", record.record_id);
                    self.reject(line, id, vec![msg]);
                } else {
                    self.first_line.insert(record.record_id.clone(), line);
                    self.outcome.records.push(record);
                }
            }
            Ok(_) => self.reject(line, id, causes),
            Err(mut more) => {
                causes.append(&mut more);
                self.reject(line, id, causes);
            }
        }
    }

    fn finish(self) -> ParseOutcome {
        self.outcome
    }
}

fn parse_delimited<R: Read>(reader: R, rows: &mut RowCollector<'_>) -> Result<(), IngestError> {
    let mut csv = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(reader);
    let mut records = csv.records();

    let header = match records.next() {
        None => return Ok(()),
        Some(Err(e)) => return Err(IngestError::Header(e.to_string())),
        Some(Ok(h)) => h,
    };
    let columns = resolve_header(header.iter())?;

    for result in records {
        let row = match result {
            Ok(row) => row,
            Err(e) => match e.kind() {
                csv::ErrorKind::Utf8 { pos, .. } => {
                    let line = pos.as_ref().map_or(0, |p| p.line());
                    rows.reject(line, None, vec!["row is not valid UTF-8".into()]);
                    continue;
                }
                _ => return Err(e.into()),
            },
        };
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != columns.len() {
            let id_col = columns.iter().position(|&f| f == Field::RecordId);
            let id = id_col.and_then(|i| row.get(i)).map(str::to_string);
            rows.reject(line, id, vec![format!("expected {} fields, found {}", columns.len(), row.len())]);
            continue;
        }
        let cells: HashMap<Field, String> = columns.iter().copied().zip(row.iter().map(str::to_string)).collect();
        rows.accept(line, &cells, Vec::new());
    }
    Ok(())
}

fn resolve_header<'a>(names: impl Iterator<Item = &'a str>) -> Result<Vec<Field>, IngestError> {
    let mut columns = Vec::new();
    for name in names {
        let name = name.trim().trim_start_matches('\u{feff}');
        let field = Field::from_name(name).ok_or_else(|| IngestError::Header(format!("unknown column `{name}`")))?;
        if columns.contains(&field) {
            return Err(IngestError::Header(format!("duplicate column `{name}`")));
        }
        columns.push(field);
    }
    let missing: Vec<&str> = Field::ALL
        .iter()
        .filter(|f| !columns.contains(f))
        .map(|f| f.name())
        .collect();
    if !missing.is_empty() {
        return Err(IngestError::Header(format!("missing columns: {}", missing.join(", "))));
    }
    Ok(columns)
}

fn parse_json_lines<R: Read>(reader: R, rows: &mut RowCollector<'_>) -> Result<(), IngestError> {
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx as u64 + 1;
        let text = match line {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::InvalidData => {
                rows.reject(line_no, None, vec!["row is not valid UTF-8".into()]);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        if text.trim().is_empty() {
            continue;
        }
        let object = match serde_json::from_str::<serde_json::Value>(&text) {
            Ok(serde_json::Value::Object(map)) => map,
            Ok(_) => {
                rows.reject(line_no, None, vec!["line is not a JSON object".into()]);
                continue;
            }
            Err(e) => {
                rows.reject(line_no, None, vec![format!("invalid JSON: {e}")]);
                continue;
            }
        };

        let mut causes = Vec::new();
        let mut cells: HashMap<Field, String> = Field::ALL.iter().map(|&f| (f, String::new())).collect();
        for (key, value) in &object {
            match Field::from_name(key) {
                Some(field) => {
                    cells.insert(field, json_cell(value));
                }
                None => causes.push(format!("unknown field `{key}`")),
            }
        }
        rows.accept(line_no, &cells, causes);
    }
    Ok(())
}

fn json_cell(value: &serde_json::Value) -> String {
    use serde_json::Value;
    match value {
        Value::Null => String::new(),
        Value::Bool(b) => if *b { "1" } else { "0" }.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(json_cell).collect::<Vec<_>>().join(";"),
        Value::Object(_) => "{object}".to_string(),
    }
}

fn blank_record() -> CrashRecord {
    CrashRecord {
        record_id: String::new(),
        report_date: NaiveDate::MIN,
        location_type: 0,
        weather: 0,
        crash_type: 0,
        roadway_surface: 0,
        roadway_conditions: 0,
        traffic_control_type: None,
        lighting: 0,
        type_of_intersection: None,
        if_peak_time: 0,
        movement_preceding_v1: 0,
        movement_preceding_v2: 0,
        v1_intention: 0,
        v1_yield_for: None,
        cycle_lane: 0,
        lane_markings: 0,
        road_types: 0,
        roadside_parking: false,
        number_of_lanes_one_direction: 0,
        v1_mode: 0,
        v1_state: 0,
        involved_vehicles: 0,
        type_of_object_collided: 0,
        direction_v1: 0,
        direction_v2: 0,
        speed_change_v1: 0,
        speed_change_v2: 0,
        if_vehicle_failure: false,
        movement_turn_v1: 0,
        movement_turn_v2: 0,
        movement_other_v1: 0,
        movement_other_v2: 0,
        relative_position: 0,
        front_vehicle: 0,
        damage_severity: 0,
        damage_locations: Default::default(),
    }
}

fn build_record(cells: &HashMap<Field, String>, schema: &Schema) -> Result<CrashRecord, Vec<String>> {
    let mut record = blank_record();
    let mut causes = Vec::new();

    for &field in Field::ALL {
        let text = cells.get(&field).map(|s| s.trim()).unwrap_or("");
        match field.kind() {
            FieldKind::Id => {
                if text.is_empty() {
                    causes.push(format!("{field}: missing value"));
                }
                record.record_id = text.to_string();
            }
            FieldKind::Date => match NaiveDate::parse_from_str(text, "%Y-%m-%d") {
                Ok(d) => record.report_date = d,
                Err(_) if text.is_empty() => causes.push(format!("{field}: missing value")),
                Err(_) => causes.push(format!("{field}: not a date (expected YYYY-MM-DD)")),
            },
            FieldKind::Zones => {
                for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                    match part.parse::<u8>().ok().and_then(DamageZone::from_code) {
                        Some(zone) => {
                            record.damage_locations.insert(zone);
                        }
                        None => causes.push(format!("{field}: unknown zone `{part}`")),
                    }
                }
            }
            FieldKind::Code | FieldKind::OptionalCode | FieldKind::Flag | FieldKind::Count => {
                let code = if text.is_empty() {
                    None
                } else {
                    match text.parse::<u8>() {
                        Ok(c) => Some(c),
                        Err(_) => {
                            causes.push(format!("{field}: not a code"));
                            continue;
                        }
                    }
                };
                if !field.set_code(&mut record, code) {
                    match (code, field.kind()) {
                        (None, _) => causes.push(format!("{field}: missing value")),
                        (Some(c), FieldKind::Flag) => causes.push(format!("{field}: flag must be 0 or 1, got {c}")),
                        (Some(c), _) => causes.push(format!("{field}: cannot hold {c}")),
                    }
                }
            }
        }
    }

    if !causes.is_empty() {
        return Err(causes);
    }
    if let Err(violations) = validate_with(&record, schema) {
        return Err(violations.iter().map(|v| v.to_string()).collect());
    }
    for &field in Field::ALL {
        if let Some(code) = field.code(&record) {
            let canonical = schema.canonical(field, code);
            if canonical != code {
                field.set_code(&mut record, Some(canonical));
            }
        }
    }
    Ok(record)
}

/// Text of one field as written to a delimited file.
pub fn cell_text(record: &CrashRecord, field: Field) -> String {
    match field.kind() {
        FieldKind::Id => record.record_id.clone(),
        FieldKind::Date => record.report_date.format("%Y-%m-%d").to_string(),
        FieldKind::Zones => record
            .damage_locations
            .iter()
            .map(|z| z.code().to_string())
            .collect::<Vec<_>>()
            .join(";"),
        _ => field.code(record).map(|c| c.to_string()).unwrap_or_default(),
    }
}

pub fn write_records<W: Write>(writer: W, records: &[CrashRecord], format: RecordFormat) -> Result<(), IngestError> {
    match format {
        RecordFormat::Delimited => {
            let mut csv = csv::Writer::from_writer(writer);
            csv.write_record(Field::ALL.iter().map(|f| f.name()))?;
            for record in records {
                csv.write_record(Field::ALL.iter().map(|&f| cell_text(record, f)))?;
            }
            csv.flush()?;
        }
        RecordFormat::JsonLines => {
            let mut writer = writer;
            for record in records {
                serde_json::to_writer(&mut writer, &record_json(record))?;
                writer.write_all(b"\n")?;
            }
            writer.flush()?;
        }
    }
    Ok(())
}

pub fn write_records_to_path(path: &Path, records: &[CrashRecord]) -> Result<(), IngestError> {
    let file = File::create(path)?;
    write_records(io::BufWriter::new(file), records, RecordFormat::from_path(path))
}

fn record_json(record: &CrashRecord) -> serde_json::Value {
    use serde_json::Value;
    let mut map = serde_json::Map::new();
    for &field in Field::ALL {
        let value = match field.kind() {
            FieldKind::Id => Value::from(record.record_id.clone()),
            FieldKind::Date => Value::from(record.report_date.format("%Y-%m-%d").to_string()),
            FieldKind::Zones => Value::from(record.damage_locations.iter().map(|z| z.code()).collect::<Vec<_>>()),
            FieldKind::Flag => Value::from(field.code(record) == Some(1)),
            _ => field.code(record).map_or(Value::Null, Value::from),
        };
        map.insert(field.name().to_string(), value);
    }
    Value::Object(map)
}

/// Removal counts of [`filter_for_analysis`]. A record failing both
/// criteria is counted under `mode` only.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FilterReport {
    pub input: usize,
    pub retained: usize,
    pub removed_mode: usize,
    pub removed_vehicle_count: usize,
}

/// Keeps autonomous-engaged two-vehicle crashes.
pub fn filter_for_analysis(records: &[CrashRecord]) -> (Vec<CrashRecord>, FilterReport) {
    let mut report = FilterReport {
        input: records.len(),
        ..FilterReport::default()
    };
    let mut kept = Vec::new();
    for r in records {
        if r.v1_mode != codes::v1_mode::AUTONOMOUS_ENGAGED {
            report.removed_mode += 1;
        } else if r.involved_vehicles != 2 {
            report.removed_vehicle_count += 1;
        } else {
            kept.push(r.clone());
        }
    }
    report.retained = kept.len();
    (kept, report)
}

/// Per-year counts of the other party type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnnualPartyDistribution {
    pub years: BTreeMap<i32, BTreeMap<PartyType, usize>>,
}

impl AnnualPartyDistribution {
    pub fn is_empty(&self) -> bool {
        self.years.is_empty()
    }

    pub fn year_total(&self, year: i32) -> usize {
        self.years.get(&year).map_or(0, |m| m.values().sum())
    }

    pub fn count(&self, year: i32, party: PartyType) -> usize {
        self.years.get(&year).and_then(|m| m.get(&party)).copied().unwrap_or(0)
    }

    /// Fraction of the year's crashes whose party is one of `parties`.
    pub fn share(&self, year: i32, parties: &[PartyType]) -> Option<f64> {
        let total = self.year_total(year);
        (total > 0).then(|| {
            let hits: usize = parties.iter().map(|&p| self.count(year, p)).sum();
            hits as f64 / total as f64
        })
    }
}

/// Records with an unknown collided-object code are skipped.
pub fn annual_party_distribution(records: &[CrashRecord]) -> AnnualPartyDistribution {
    let mut dist = AnnualPartyDistribution::default();
    for r in records {
        if let Some(party) = r.party() {
            *dist.years.entry(r.report_date.year()).or_default().entry(party).or_default() += 1;
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data_model::tests::sample_record;

    fn to_csv(records: &[CrashRecord]) -> String {
        let mut buf = Vec::new();
        write_records(&mut buf, records, RecordFormat::Delimited).unwrap();
        String::from_utf8(buf).unwrap()
    }

    fn parse_csv(text: &str) -> ParseOutcome {
        parse_reader(text.as_bytes(), RecordFormat::Delimited, Schema::bundled()).unwrap()
    }

    fn three() -> Vec<CrashRecord> {
        (1..=3)
            .map(|i| {
                let mut r = sample_record();
                r.record_id = format!("R{i}");
                r
            })
            .collect()
    }

    #[test]
    fn three_valid_rows() {
        let out = parse_csv(&to_csv(&three()));
        assert_eq!(out.records, three());
        assert!(out.diagnostics.is_empty());
    }

    #[test]
    fn non_numeric_lighting() {
        let text = to_csv(&three());
        let col = Field::ALL.iter().position(|&f| f == Field::Lighting).unwrap();
        let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
        let mut cells: Vec<String> = lines[2].split(',').map(str::to_string).collect();
        cells[col] = "dusk".into();
        lines[2] = cells.join(",");
        let out = parse_csv(&(lines.join("\n") + "\n"));
        assert_eq!(out.records.len(), 2);
        assert_eq!(out.diagnostics.len(), 1);
        let d = &out.diagnostics[0];
        assert_eq!(d.line, 3);
        assert_eq!(d.record_id.as_deref(), Some("R2"));
        assert_eq!(d.causes, vec!["lighting: not a code".to_string()]);
        assert_eq!(out.records[1].record_id, "R3");
    }

    #[test]
    fn duplicate_ids_are_diagnosed() {
        let mut rs = three();
        rs[2].record_id = "R1".into();
        let out = parse_csv(&to_csv(&rs));
        assert_eq!(out.records.len(), 2);
        assert!(out.diagnostics[0].causes[0].contains("duplicate record_id `R1` (first seen on line 2)"));
    }

    #[test]
    fn invalid_records_are_rejected_with_violations() {
        let mut rs = three();
        rs[0].weather = 9;
        let out = parse_csv(&to_csv(&rs));
        assert_eq!(out.records.len(), 2);
        assert_eq!(out.diagnostics[0].causes, vec!["weather: weather code 9 out of range 1-7"]);
    }

    #[test]
    fn short_row() {
        let text = to_csv(&three());
        let mut lines: Vec<&str> = text.lines().collect();
        lines[1] = "R1,2020-01-01";
        let out = parse_csv(&lines.join("\n"));
        assert_eq!(out.records.len(), 2);
        assert!(out.diagnostics[0].causes[0].starts_with("expected 37 fields, found 2"));
    }

    #[test]
    fn header_errors_abort() {
        let text = to_csv(&three()).replacen("weather", "wether", 1);
        let err = parse_reader(text.as_bytes(), RecordFormat::Delimited, Schema::bundled()).unwrap_err();
        assert!(err.to_string().contains("unknown column `wether`"), "{err}");

        let text = to_csv(&three()).replacen(",weather", "", 1);
        let err = parse_reader(text.as_bytes(), RecordFormat::Delimited, Schema::bundled()).unwrap_err();
        assert!(err.to_string().contains("missing columns: weather"), "{err}");

        let err = parse_records(Path::new("/nonexistent/records.csv")).unwrap_err();
        assert!(matches!(err, IngestError::Unreadable { .. }));
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(parse_csv(""), ParseOutcome::default());
        let header_only = to_csv(&[]);
        assert_eq!(parse_csv(&header_only), ParseOutcome::default());
    }

    #[test]
    fn lighting_alias_is_normalised() {
        let mut rs = three();
        rs[0].lighting = codes::lighting::DARK_STREET_LIGHTS_ALIAS;
        let out = parse_csv(&to_csv(&rs));
        assert_eq!(out.records[0].lighting, codes::lighting::DARK_STREET_LIGHTS);
    }

    #[test]
    fn json_lines_round_trip_and_diagnostics() {
        let mut buf = Vec::new();
        write_records(&mut buf, &three(), RecordFormat::JsonLines).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let parsed = parse_reader(text.as_bytes(), RecordFormat::JsonLines, Schema::bundled()).unwrap();
        assert_eq!(parsed.records, three());

        let broken = text.replacen("\"lighting\":1", "\"lighting\":\"x\"", 1) + "{\"bogus\":1}\nnot json\n";
        let parsed = parse_reader(broken.as_bytes(), RecordFormat::JsonLines, Schema::bundled()).unwrap();
        assert_eq!(parsed.records.len(), 2);
        assert_eq!(parsed.diagnostics.len(), 3);
        assert_eq!(parsed.diagnostics[0].causes, vec!["lighting: not a code"]);
        assert!(parsed.diagnostics[1].causes[0].contains("unknown field `bogus`"));
        assert!(parsed.diagnostics[2].causes[0].starts_with("invalid JSON"));
    }

    #[test]
    fn filter_counts_each_criterion() {
        let mut rs = three();
        rs[0].v1_mode = codes::v1_mode::CONVENTIONAL;
        rs[1].involved_vehicles = 1;
        let (kept, report) = filter_for_analysis(&rs);
        assert_eq!(kept.len(), 1);
        assert_eq!(
            report,
            FilterReport {
                input: 3,
                retained: 1,
                removed_mode: 1,
                removed_vehicle_count: 1
            }
        );
    }

    #[test]
    fn annual_distribution() {
        assert!(annual_party_distribution(&[]).is_empty());
        let mut rs = three();
        rs.push({
            let mut r = sample_record();
            r.record_id = "R4".into();
            r
        });
        let d = annual_party_distribution(&rs);
        assert_eq!(d.years.len(), 1);
        assert_eq!(d.count(2022, PartyType::Vehicle), 4);
        assert_eq!(d.year_total(2022), 4);
        assert_eq!(d.share(2022, &[PartyType::Object]), Some(0.0));
        assert_eq!(d.share(2019, &[PartyType::Object]), None);
    }

    #[test]
    fn files_merge_in_order() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.jsonl");
        let mut rs = three();
        write_records_to_path(&a, &rs[..2]).unwrap();
        rs[2].record_id = "R1".into();
        let mut extra = sample_record();
        extra.record_id = "R9".into();
        write_records_to_path(&b, &[rs[2].clone(), extra]).unwrap();
        let out = parse_files(&[a, b], Schema::bundled()).unwrap();
        let ids: Vec<&str> = out.records.iter().map(|r| r.record_id.as_str()).collect();
        assert_eq!(ids, ["R1", "R2", "R9"]);
        assert_eq!(out.diagnostics.len(), 1);
    }
}
