//! Coded crash records, their field enumerations and validation.

pub mod codes;
mod record;
mod scenario;
mod schema;
mod zones;

use std::fmt;

pub use record::{CrashRecord, Field, FieldKind, UnknownField};
pub use scenario::ScenarioId;
pub use schema::{CodeEntry, CodeSet, Domain, Schema, SchemaError};
pub use zones::DamageZone;

/// Kind of the other party in a crash, derived from the collided-object code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartyType {
    Vehicle,
    NonMotorized,
    Pedestrian,
    Animal,
    Object,
    None,
}

impl PartyType {
    pub fn from_object_code(code: u8) -> Option<PartyType> {
        use codes::object::*;
        Some(match code {
            VEHICLE => PartyType::Vehicle,
            NON_MOTORIZED => PartyType::NonMotorized,
            PEDESTRIAN => PartyType::Pedestrian,
            ANIMAL => PartyType::Animal,
            OBJECT => PartyType::Object,
            NONE => PartyType::None,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            PartyType::Vehicle => "vehicle",
            PartyType::NonMotorized => "non-motorized",
            PartyType::Pedestrian => "pedestrian",
            PartyType::Animal => "animal",
            PartyType::Object => "object",
            PartyType::None => "none",
        }
    }
}

impl CrashRecord {
    pub fn is_intersection(&self) -> bool {
        codes::location::is_intersection(self.location_type)
    }

    pub fn party(&self) -> Option<PartyType> {
        PartyType::from_object_code(self.type_of_object_collided)
    }

    pub fn is_dark(&self) -> bool {
        codes::lighting::is_dark(self.lighting)
    }
}

/// One broken record invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: Field,
    /// Offending value as written, if there was one.
    pub value: Option<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Checks a record against the bundled schema.
pub fn validate(record: &CrashRecord) -> Result<(), Vec<Violation>> {
    validate_with(record, Schema::bundled())
}

/// Checks every record invariant and lists all violations.
pub fn validate_with(record: &CrashRecord, schema: &Schema) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();

    if record.record_id.trim().is_empty() {
        out.push(Violation {
            field: Field::RecordId,
            value: None,
            message: "record id is empty".into(),
        });
    }

    for &field in Field::ALL {
        let Some(domain) = schema.domain(field) else { continue };
        let Some(code) = field.code(record) else { continue };
        if !domain.contains(code) {
            out.push(Violation {
                field,
                value: Some(code.to_string()),
                message: format!("{} code {} out of range {}", field, code, domain.describe()),
            });
        }
    }

    let location_known = schema
        .domain(Field::LocationType)
        .is_some_and(|d| d.contains(record.location_type));
    if location_known {
        let at_intersection = record.is_intersection();
        for (field, what) in [
            (Field::TrafficControlType, "control type"),
            (Field::TypeOfIntersection, "intersection type"),
        ] {
            match (field.code(record), at_intersection) {
                (Some(code), false) => out.push(Violation {
                    field,
                    value: Some(code.to_string()),
                    message: format!("{what} present outside intersection"),
                }),
                (None, true) => out.push(Violation {
                    field,
                    value: None,
                    message: format!("{what} missing at intersection"),
                }),
                _ => {}
            }
        }
    }

    if let Some(target) = record.v1_yield_for {
        if !schema.is_yielding_intention(record.v1_intention) {
            out.push(Violation {
                field: Field::V1YieldFor,
                value: Some(target.to_string()),
                message: format!("yield target given but intention {} is not a yielding intention", record.v1_intention),
            });
        }
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use chrono::NaiveDate;
    use proptest::prelude::*;

    /// A valid LVS-shaped record at a signalised intersection.
    pub(crate) fn sample_record() -> CrashRecord {
        use codes::*;
        CrashRecord {
            record_id: "R1".into(),
            report_date: NaiveDate::from_ymd_opt(2022, 5, 3).unwrap(),
            location_type: location::INTERSECTION_IMPACT_AREA,
            weather: weather::CLEAR,
            crash_type: crash_type::REAR_END,
            roadway_surface: surface::DRY,
            roadway_conditions: road_conditions::NO_UNUSUAL,
            traffic_control_type: Some(control::SIGNAL),
            lighting: lighting::DAYLIGHT,
            type_of_intersection: Some(intersection::CROSS),
            if_peak_time: peak::NON_PEAK,
            movement_preceding_v1: movement_preceding::STOPPED,
            movement_preceding_v2: movement_preceding::PROCEEDING_STRAIGHT,
            v1_intention: intention::SIGNAL_STOPPED,
            v1_yield_for: None,
            cycle_lane: cycle_lane::NONE,
            lane_markings: lane_markings::PRESENT,
            road_types: road_types::TWO_WAY_MARKED_MEDIAN,
            roadside_parking: false,
            number_of_lanes_one_direction: 2,
            v1_mode: v1_mode::AUTONOMOUS_ENGAGED,
            v1_state: v1_state::STOPPED_IN_TRAFFIC,
            involved_vehicles: 2,
            type_of_object_collided: object::VEHICLE,
            direction_v1: direction::STOPPED,
            direction_v2: direction::FORWARD,
            speed_change_v1: speed_change::CONSTANT,
            speed_change_v2: speed_change::DECELERATING,
            if_vehicle_failure: false,
            movement_turn_v1: turn::NONE,
            movement_turn_v2: turn::NONE,
            movement_other_v1: movement_other::NONE,
            movement_other_v2: movement_other::PROCEEDING_STRAIGHT,
            relative_position: relative_position::SAME_LANE_SAME_DIRECTION,
            front_vehicle: front_vehicle::AV,
            damage_severity: severity::SLIGHT,
            damage_locations: [DamageZone::RearBumper].into_iter().collect(),
        }
    }

    #[test]
    fn consistent_record_is_ok() {
        assert_eq!(validate(&sample_record()), Ok(()));
    }

    #[test]
    fn control_type_outside_intersection() {
        let mut r = sample_record();
        r.location_type = codes::location::PARKING_LOT;
        r.type_of_intersection = None;
        let v = validate(&r).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].field, Field::TrafficControlType);
        assert!(v[0].message.contains("control type present outside intersection"));
    }

    #[test]
    fn missing_intersection_fields() {
        let mut r = sample_record();
        r.traffic_control_type = None;
        r.type_of_intersection = None;
        let v = validate(&r).unwrap_err();
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn weather_out_of_range() {
        let mut r = sample_record();
        r.weather = 9;
        let v = validate(&r).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "weather: weather code 9 out of range 1-7");
        assert_eq!(v[0].value.as_deref(), Some("9"));
    }

    #[test]
    fn yield_target_requires_yielding_intention() {
        let mut r = sample_record();
        r.v1_yield_for = Some(codes::yield_for::ONCOMING_TRAFFIC);
        assert!(validate(&r).is_err());
        r.v1_intention = codes::intention::LEFT_TURN_YIELD;
        assert!(validate(&r).is_ok());
    }

    #[test]
    fn zero_counts_rejected() {
        let mut r = sample_record();
        r.involved_vehicles = 0;
        r.number_of_lanes_one_direction = 0;
        assert_eq!(validate(&r).unwrap_err().len(), 2);
    }

    #[test]
    fn unknown_location_skips_intersection_check() {
        let mut r = sample_record();
        r.location_type = 0;
        let v = validate(&r).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].field, Field::LocationType);
    }

    proptest! {
        // validate never panics, whatever codes the record holds
        #[test]
        fn validate_is_total(codes in proptest::collection::vec(any::<u8>(), 34), absent in any::<u8>()) {
            let mut r = sample_record();
            let coded: Vec<Field> = Field::ALL.iter().copied().filter(|f| f.is_coded()).collect();
            for (f, c) in coded.iter().zip(codes) {
                let value = if f.kind() == FieldKind::OptionalCode && absent % 2 == 0 { None } else { Some(c) };
                // flags only hold 0/1; anything else is unrepresentable and skipped
                let _ = f.set_code(&mut r, value);
            }
            let _ = validate(&r);
        }
    }
}
