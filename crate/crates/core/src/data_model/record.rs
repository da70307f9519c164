use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;

use super::zones::DamageZone;

/// How a field is stored and what its cells may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Id,
    Date,
    /// Required enumerated code.
    Code,
    /// Enumerated code that may be absent ("NA").
    OptionalCode,
    /// 0 = no, 1 = yes.
    Flag,
    /// Positive integer count.
    Count,
    /// Set of damage zones.
    Zones,
}

/// Conversion between a struct field and its integer code.
trait CodeSlot: Sized {
    fn to_code(&self) -> Option<u8>;
    fn from_code(code: Option<u8>) -> Option<Self>;
}

impl CodeSlot for u8 {
    fn to_code(&self) -> Option<u8> {
        Some(*self)
    }
    fn from_code(code: Option<u8>) -> Option<Self> {
        code
    }
}

impl CodeSlot for Option<u8> {
    fn to_code(&self) -> Option<u8> {
        *self
    }
    fn from_code(code: Option<u8>) -> Option<Self> {
        Some(code)
    }
}

impl CodeSlot for bool {
    fn to_code(&self) -> Option<u8> {
        Some(u8::from(*self))
    }
    fn from_code(code: Option<u8>) -> Option<Self> {
        match code {
            Some(0) => Some(false),
            Some(1) => Some(true),
            _ => None,
        }
    }
}

macro_rules! record_schema {
    (
        special { $($sv:ident => $sname:literal, $skind:ident, $stoken:literal;)* }
        coded { $($cv:ident => $cfield:ident : $cty:ty, $ckind:ident, $ctoken:literal;)* }
    ) => {
        /// Every column of a [`CrashRecord`], in canonical file order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Field {
            $($sv,)*
            $($cv,)*
        }

        impl Field {
            pub const ALL: &'static [Field] = &[$(Field::$sv,)* $(Field::$cv,)*];

            /// Column name used in record files and rule files.
            pub fn name(self) -> &'static str {
                match self {
                    $(Field::$sv => $sname,)*
                    $(Field::$cv => stringify!($cfield),)*
                }
            }

            pub fn kind(self) -> FieldKind {
                match self {
                    $(Field::$sv => FieldKind::$skind,)*
                    $(Field::$cv => FieldKind::$ckind,)*
                }
            }

            /// Item prefix used when rendering mined item tokens.
            pub fn token_name(self) -> &'static str {
                match self {
                    $(Field::$sv => $stoken,)*
                    $(Field::$cv => $ctoken,)*
                }
            }

            /// Integer code held by `record` for this field. `None` for absent
            /// optional values and for the non-coded columns.
            pub fn code(self, record: &CrashRecord) -> Option<u8> {
                match self {
                    $(Field::$sv => None,)*
                    $(Field::$cv => record.$cfield.to_code(),)*
                }
            }

            /// Stores `code` into `record`. Returns false if the field cannot
            /// hold the value (absent on a required field, non-flag value on a
            /// flag, or a non-coded column).
            pub fn set_code(self, record: &mut CrashRecord, code: Option<u8>) -> bool {
                match self {
                    $(Field::$sv => false,)*
                    $(Field::$cv => match <$cty as CodeSlot>::from_code(code) {
                        Some(v) => {
                            record.$cfield = v;
                            true
                        }
                        None => false,
                    },)*
                }
            }
        }

        /// One coded two-party crash.
        ///
        /// Enumerated fields hold raw integer codes so that out-of-range
        /// values can be represented and reported by
        /// [`super::validate`] instead of failing construction.
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct CrashRecord {
            pub record_id: String,
            pub report_date: NaiveDate,
            $(pub $cfield: $cty,)*
            pub damage_locations: BTreeSet<DamageZone>,
        }
    };
}

record_schema! {
    special {
        RecordId => "record_id", Id, "Record.id";
        ReportDate => "report_date", Date, "Report.date";
        DamageLocations => "damage_locations", Zones, "Damage.locations";
    }
    coded {
        LocationType => location_type: u8, Code, "Location_Type";
        Weather => weather: u8, Code, "Weather";
        CrashType => crash_type: u8, Code, "Crash.type";
        RoadwaySurface => roadway_surface: u8, Code, "Roadway.surface";
        RoadwayConditions => roadway_conditions: u8, Code, "Roadway.conditions";
        TrafficControlType => traffic_control_type: Option<u8>, OptionalCode, "Traffic.Control.Type";
        Lighting => lighting: u8, Code, "Lighting";
        TypeOfIntersection => type_of_intersection: Option<u8>, OptionalCode, "Type.of.intersection";
        IfPeakTime => if_peak_time: u8, Code, "If_peak_time";
        MovementPrecedingV1 => movement_preceding_v1: u8, Code, "Movement.preceding.V1";
        MovementPrecedingV2 => movement_preceding_v2: u8, Code, "Movement.preceding.V2";
        V1Intention => v1_intention: u8, Code, "V1.intention";
        V1YieldFor => v1_yield_for: Option<u8>, OptionalCode, "V1.yield.for";
        CycleLane => cycle_lane: u8, Code, "Cycle.lane";
        LaneMarkings => lane_markings: u8, Code, "Lane.markings";
        RoadTypes => road_types: u8, Code, "Road.types";
        RoadsideParking => roadside_parking: bool, Flag, "Roadside.parking";
        NumberOfLanesOneDirection => number_of_lanes_one_direction: u8, Count, "Number.of.lanes.one.direction";
        V1Mode => v1_mode: u8, Code, "V1.mode";
        V1State => v1_state: u8, Code, "V1.state";
        InvolvedVehicles => involved_vehicles: u8, Count, "Involved.vehicles";
        TypeOfObjectCollided => type_of_object_collided: u8, Code, "Type.of.object.collided";
        DirectionV1 => direction_v1: u8, Code, "Direction.V1";
        DirectionV2 => direction_v2: u8, Code, "Direction.V2";
        SpeedChangeV1 => speed_change_v1: u8, Code, "Speed.change.V1";
        SpeedChangeV2 => speed_change_v2: u8, Code, "Speed.change.V2";
        IfVehicleFailure => if_vehicle_failure: bool, Flag, "If.vehicle.failure";
        MovementTurnV1 => movement_turn_v1: u8, Code, "Movement.turn.V1";
        MovementTurnV2 => movement_turn_v2: u8, Code, "Movement.turn.V2";
        MovementOtherV1 => movement_other_v1: u8, Code, "Movement.other.V1";
        MovementOtherV2 => movement_other_v2: u8, Code, "Movement.other.V2";
        RelativePosition => relative_position: u8, Code, "Relative.position";
        FrontVehicle => front_vehicle: u8, Code, "Front.vehicle";
        DamageSeverity => damage_severity: u8, Code, "Damage.severity";
    }
}

impl Field {
    /// True for fields that carry an integer code (enumerations, flags and
    /// counts). Only these can appear in mapping-rule predicates or mined
    /// item sets.
    pub fn is_coded(self) -> bool {
        matches!(
            self.kind(),
            FieldKind::Code | FieldKind::OptionalCode | FieldKind::Flag | FieldKind::Count
        )
    }

    pub fn from_name(name: &str) -> Option<Field> {
        Field::ALL.iter().copied().find(|f| f.name() == name)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown field name `{0}`")]
pub struct UnknownField(pub String);

impl FromStr for Field {
    type Err = UnknownField;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Field::from_name(s).ok_or_else(|| UnknownField(s.to_string()))
    }
}
