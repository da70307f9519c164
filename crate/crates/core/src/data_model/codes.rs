//! Integer code constants for the enumerated crash-record fields.
//!
//! The numeric values are the interchange format; labels and mining tokens
//! for each code live in [`super::schema`].

pub mod location {
    pub const INTERSECTION_IMPACT_AREA: u8 = 1;
    pub const INTERSECTION_CENTER: u8 = 2;
    pub const PARKING_LOT: u8 = 3;
    pub const RAMP: u8 = 4;
    pub const ROADWAY_SEGMENT: u8 = 5;

    pub fn is_intersection(code: u8) -> bool {
        code == INTERSECTION_IMPACT_AREA || code == INTERSECTION_CENTER
    }
}

pub mod weather {
    pub const CLEAR: u8 = 1;
    pub const CLOUDY: u8 = 2;
    pub const RAINING: u8 = 3;
    pub const SNOWING: u8 = 4;
    pub const FOG: u8 = 5;
    pub const WIND: u8 = 6;
    pub const OTHER: u8 = 7;
}

pub mod crash_type {
    pub const HEAD_ON: u8 = 1;
    pub const SIDESWIPE: u8 = 2;
    pub const REAR_END: u8 = 3;
    pub const BROADSIDE: u8 = 4;
    pub const HIT_OBJECT: u8 = 5;
    pub const OVERTURNED: u8 = 6;
    pub const VEHICLE_PEDESTRIAN: u8 = 7;
    pub const OTHER: u8 = 8;
}

pub mod surface {
    pub const DRY: u8 = 1;
    pub const WET: u8 = 2;
    pub const SNOWY_ICY: u8 = 3;
    pub const SLIPPERY: u8 = 4;
}

pub mod road_conditions {
    pub const HOLES: u8 = 1;
    pub const CONSTRUCTION: u8 = 4;
    pub const NO_UNUSUAL: u8 = 8;
}

pub mod control {
    pub const METERING_LIGHT: u8 = 1;
    pub const NO_CONTROL: u8 = 2;
    pub const SIGNAL: u8 = 3;
    pub const STOP_SIGN: u8 = 4;
    pub const YIELD_SIGN: u8 = 5;
}

pub mod lighting {
    pub const DAYLIGHT: u8 = 1;
    pub const DUSK_DAWN: u8 = 2;
    pub const DARK_STREET_LIGHTS: u8 = 3;
    pub const DARK_NO_STREET_LIGHTS: u8 = 4;
    /// Duplicate "dark - street lights" entry of the printed coding scheme.
    /// Accepted on input and normalised to [`DARK_STREET_LIGHTS`].
    pub const DARK_STREET_LIGHTS_ALIAS: u8 = 5;

    pub fn is_dark(code: u8) -> bool {
        matches!(code, DARK_STREET_LIGHTS | DARK_NO_STREET_LIGHTS | DARK_STREET_LIGHTS_ALIAS)
    }
}

pub mod intersection {
    pub const CROSS: u8 = 1;
    pub const T_SHAPED: u8 = 2;
    pub const X_SHAPED: u8 = 3;
    pub const Y_SHAPED: u8 = 4;
    pub const MULTI_ROAD: u8 = 5;
    pub const ROUNDABOUT: u8 = 6;
}

pub mod peak {
    pub const NON_PEAK: u8 = 1;
    pub const MORNING: u8 = 2;
    pub const EVENING: u8 = 3;
}

pub mod movement_preceding {
    pub const STOPPED: u8 = 1;
    pub const PROCEEDING_STRAIGHT: u8 = 2;
    pub const RAN_OFF_ROAD: u8 = 3;
    pub const RIGHT_TURN: u8 = 4;
    pub const LEFT_TURN: u8 = 5;
    pub const U_TURN: u8 = 6;
    pub const BACKING: u8 = 7;
    pub const SLOWING_STOPPING: u8 = 8;
    pub const PASSING: u8 = 9;
    pub const CHANGING_LANES: u8 = 10;
    pub const PARKING_MANEUVER: u8 = 11;
    pub const ENTERING_TRAFFIC: u8 = 12;
    pub const OTHER_UNSAFE_TURNING: u8 = 13;
    pub const INTO_OPPOSING_LANE: u8 = 14;
    pub const PARKED: u8 = 15;
    pub const MERGING: u8 = 16;
    pub const WRONG_WAY: u8 = 17;
    pub const OTHER: u8 = 18;
}

/// Bundled V1 intention codes. The list is open: further codes can be
/// registered on a [`super::Schema`].
pub mod intention {
    pub const SIGNAL_STOPPED: u8 = 1;
    pub const PROCEED_STRAIGHT_YIELD: u8 = 2;
    pub const RIGHT_TURN_YIELD: u8 = 3;
    pub const LEFT_TURN_YIELD: u8 = 4;
    pub const STOPPED_IN_TRAFFIC: u8 = 5;
    pub const STOPPED_STOP_SIGN: u8 = 6;
    pub const MERGING_YIELD: u8 = 7;
    pub const PROCEED_STRAIGHT: u8 = 8;
}

pub mod yield_for {
    pub const ONCOMING_TRAFFIC: u8 = 1;
    pub const CROSS_TRAFFIC: u8 = 2;
    pub const FRONT_VEHICLE: u8 = 3;
}

pub mod cycle_lane {
    pub const NONE: u8 = 1;
    pub const NO_SEPARATION: u8 = 2;
    pub const MARK_SEPARATION: u8 = 3;
    pub const MARK_AND_COLUMNS: u8 = 4;
    pub const MARK_AND_BARRIER: u8 = 5;
}

pub mod lane_markings {
    pub const PRESENT: u8 = 1;
    pub const ABSENT: u8 = 2;
}

pub mod road_types {
    pub const TWO_WAY_MARKED_MEDIAN: u8 = 1;
    pub const TWO_WAY_HARD_MEDIAN: u8 = 2;
    pub const ONE_WAY: u8 = 3;
    pub const TWO_WAY_NO_MEDIAN: u8 = 4;
}

pub mod v1_mode {
    pub const AUTONOMOUS_ENGAGED: u8 = 1;
    pub const AUTONOMOUS_DISENGAGED: u8 = 2;
    pub const CONVENTIONAL: u8 = 3;
}

pub mod v1_state {
    pub const MOVING: u8 = 1;
    pub const STOPPED_IN_TRAFFIC: u8 = 2;
}

pub mod object {
    pub const ANIMAL: u8 = 1;
    pub const VEHICLE: u8 = 2;
    pub const NON_MOTORIZED: u8 = 3;
    pub const PEDESTRIAN: u8 = 4;
    pub const OBJECT: u8 = 5;
    pub const NONE: u8 = 6;
}

pub mod direction {
    pub const STOPPED: u8 = 0;
    pub const FORWARD: u8 = 1;
    pub const BACKWARD: u8 = 2;
}

pub mod speed_change {
    pub const CONSTANT: u8 = 0;
    pub const ACCELERATING: u8 = 1;
    pub const DECELERATING: u8 = 2;
}

pub mod turn {
    pub const NONE: u8 = 0;
    pub const RIGHT: u8 = 1;
    pub const LEFT: u8 = 2;
}

pub mod movement_other {
    pub const PROCEEDING_STRAIGHT: u8 = 1;
    pub const PASSING: u8 = 2;
    pub const CHANGING_LANES: u8 = 3;
    pub const U_TURN: u8 = 4;
    pub const ENTERING_TRAFFIC: u8 = 5;
    pub const MERGING: u8 = 6;
    pub const RAN_OFF_ROAD: u8 = 7;
    pub const PARKING_MANEUVER: u8 = 8;
    pub const PARKED: u8 = 9;
    pub const WRONG_WAY: u8 = 10;
    pub const LANE_SPLITTING: u8 = 11;
    pub const OTHER: u8 = 12;
    pub const NONE: u8 = 13;
}

pub mod relative_position {
    pub const SAME_LANE_SAME_DIRECTION: u8 = 1;
    pub const SAME_LANE_REVERSE: u8 = 2;
    pub const LATERAL_RIGHT: u8 = 3;
    pub const LATERAL_LEFT: u8 = 4;
}

pub mod front_vehicle {
    pub const AV: u8 = 1;
    pub const OTHER_VEHICLE: u8 = 2;
}

pub mod severity {
    pub const NONE: u8 = 0;
    pub const SLIGHT: u8 = 1;
    pub const MODERATE: u8 = 2;
    pub const SEVERE: u8 = 3;
}
