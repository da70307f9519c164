//! Record templates shared by the fixture builders.

use chrono::NaiveDate;
use prescen::data_model::codes::*;
use prescen::{CrashRecord, DamageZone, ScenarioId};

/// Spreads `counts` over one sequence so each value appears at evenly
/// spaced positions (smooth weighted round-robin). Exact counts, no RNG.
pub fn interleave<T: Clone>(counts: &[(T, usize)]) -> Vec<T> {
    let total: i64 = counts.iter().map(|(_, n)| *n as i64).sum();
    let mut current = vec![0i64; counts.len()];
    let mut out = Vec::with_capacity(total as usize);
    for _ in 0..total {
        for (c, (_, n)) in current.iter_mut().zip(counts) {
            *c += *n as i64;
        }
        let best = (0..counts.len())
            .filter(|&i| counts[i].1 > 0)
            .max_by(|&a, &b| current[a].cmp(&current[b]).then(b.cmp(&a)))
            .expect("non-empty");
        current[best] -= total;
        out.push(counts[best].0.clone());
    }
    out
}

/// Kinematic pattern of a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Matches the reference rule for the scenario.
    Plain(ScenarioId),
    /// LVS with the AV as the following vehicle.
    LvsAvFollowing,
    /// Cyclist manoeuvre while the AV goes straight; rules read 12.
    CyclistAvStraight,
    /// Both vehicles changing lanes, truly "other"; rules read 16.
    BothChangingLanes,
    /// Lane change coded without the lane-change movement; rules read 17.
    LaneChangeCodedAsDrift,
}

pub fn date(year: i32, i: usize) -> NaiveDate {
    NaiveDate::from_ymd_opt(year, (i % 12) as u32 + 1, (i % 28) as u32 + 1).expect("valid date")
}

/// A valid straight-driving two-vehicle record on a roadway segment.
pub fn base(id: String) -> CrashRecord {
    CrashRecord {
        record_id: id,
        report_date: date(2022, 0),
        location_type: location::ROADWAY_SEGMENT,
        weather: weather::CLEAR,
        crash_type: crash_type::REAR_END,
        roadway_surface: surface::DRY,
        roadway_conditions: road_conditions::NO_UNUSUAL,
        traffic_control_type: None,
        lighting: lighting::DAYLIGHT,
        type_of_intersection: None,
        if_peak_time: peak::NON_PEAK,
        movement_preceding_v1: movement_preceding::PROCEEDING_STRAIGHT,
        movement_preceding_v2: movement_preceding::PROCEEDING_STRAIGHT,
        v1_intention: intention::PROCEED_STRAIGHT,
        v1_yield_for: None,
        cycle_lane: cycle_lane::NONE,
        lane_markings: lane_markings::PRESENT,
        road_types: road_types::TWO_WAY_MARKED_MEDIAN,
        roadside_parking: false,
        number_of_lanes_one_direction: 2,
        v1_mode: v1_mode::AUTONOMOUS_ENGAGED,
        v1_state: v1_state::MOVING,
        involved_vehicles: 2,
        type_of_object_collided: object::VEHICLE,
        direction_v1: direction::FORWARD,
        direction_v2: direction::FORWARD,
        speed_change_v1: speed_change::CONSTANT,
        speed_change_v2: speed_change::CONSTANT,
        if_vehicle_failure: false,
        movement_turn_v1: turn::NONE,
        movement_turn_v2: turn::NONE,
        movement_other_v1: movement_other::PROCEEDING_STRAIGHT,
        movement_other_v2: movement_other::PROCEEDING_STRAIGHT,
        relative_position: relative_position::SAME_LANE_SAME_DIRECTION,
        front_vehicle: front_vehicle::AV,
        damage_severity: severity::SLIGHT,
        damage_locations: Default::default(),
    }
}

fn stop_av(r: &mut CrashRecord) {
    r.direction_v1 = direction::STOPPED;
    r.v1_state = v1_state::STOPPED_IN_TRAFFIC;
    r.movement_preceding_v1 = movement_preceding::STOPPED;
    r.movement_other_v1 = movement_other::NONE;
}

fn lateral(r: &mut CrashRecord, i: usize) {
    r.crash_type = crash_type::SIDESWIPE;
    r.relative_position = if i % 2 == 0 {
        relative_position::LATERAL_RIGHT
    } else {
        relative_position::LATERAL_LEFT
    };
}

/// Applies the kinematics of `shape` and the matching primary damage zone.
/// `i` varies secondary choices.
pub fn apply_shape(r: &mut CrashRecord, shape: Shape, i: usize) {
    use DamageZone::*;
    let s = match shape {
        Shape::Plain(s) => s,
        Shape::LvsAvFollowing => {
            r.front_vehicle = front_vehicle::OTHER_VEHICLE;
            r.direction_v2 = direction::STOPPED;
            r.speed_change_v1 = speed_change::DECELERATING;
            r.damage_locations = [FrontBumper].into();
            return;
        }
        Shape::CyclistAvStraight => {
            r.type_of_object_collided = object::NON_MOTORIZED;
            r.crash_type = crash_type::BROADSIDE;
            r.relative_position = relative_position::LATERAL_RIGHT;
            r.damage_locations = [RightSide].into();
            return;
        }
        Shape::BothChangingLanes => {
            lateral(r, i);
            r.movement_other_v1 = movement_other::CHANGING_LANES;
            r.movement_other_v2 = movement_other::CHANGING_LANES;
            r.movement_preceding_v1 = movement_preceding::CHANGING_LANES;
            r.movement_preceding_v2 = movement_preceding::CHANGING_LANES;
            r.damage_locations = [side(r)].into();
            return;
        }
        Shape::LaneChangeCodedAsDrift => {
            lateral(r, i);
            r.movement_preceding_v2 = movement_preceding::CHANGING_LANES;
            r.damage_locations = [side(r)].into();
            return;
        }
    };

    match s.id() {
        1 => {
            r.if_vehicle_failure = true;
            r.front_vehicle = front_vehicle::OTHER_VEHICLE;
            r.speed_change_v1 = speed_change::DECELERATING;
            r.damage_locations = [Undercarriage, FrontBumper].into();
        }
        8 | 10 | 12 | 35 | 9 | 11 | 37 | 34 => {
            r.type_of_object_collided = match s.id() {
                8 | 9 => object::ANIMAL,
                10 | 11 => object::PEDESTRIAN,
                12 | 37 => object::NON_MOTORIZED,
                _ => object::OBJECT,
            };
            r.crash_type = match s.id() {
                10 | 11 => crash_type::VEHICLE_PEDESTRIAN,
                12 | 37 => crash_type::BROADSIDE,
                _ => crash_type::HIT_OBJECT,
            };
            r.relative_position = relative_position::SAME_LANE_SAME_DIRECTION;
            r.front_vehicle = front_vehicle::OTHER_VEHICLE;
            r.direction_v2 = direction::STOPPED;
            r.movement_other_v2 = movement_other::NONE;
            match s.id() {
                9 | 11 | 37 => {
                    r.movement_turn_v1 = if i % 2 == 0 { turn::RIGHT } else { turn::LEFT };
                    r.movement_preceding_v1 = if i % 2 == 0 {
                        movement_preceding::RIGHT_TURN
                    } else {
                        movement_preceding::LEFT_TURN
                    };
                    r.damage_locations = [FrontRightCorner].into();
                }
                34 => {
                    r.movement_other_v1 = movement_other::PARKING_MANEUVER;
                    r.movement_preceding_v1 = movement_preceding::PARKING_MANEUVER;
                    r.damage_locations = [RearCenter].into();
                }
                _ => r.damage_locations = [FrontBumper].into(),
            }
        }
        33 => {
            r.type_of_object_collided = object::NONE;
            r.crash_type = crash_type::OTHER;
            r.damage_locations.clear();
        }
        13 => {
            r.front_vehicle = front_vehicle::OTHER_VEHICLE;
            r.direction_v2 = direction::BACKWARD;
            r.movement_preceding_v2 = movement_preceding::BACKING;
            r.movement_other_v2 = movement_other::OTHER;
            stop_av(r);
            r.damage_locations = [FrontBumper].into();
        }
        15 => {
            lateral(r, i);
            r.movement_other_v2 = movement_other::PARKING_MANEUVER;
            r.movement_preceding_v2 = movement_preceding::PARKING_MANEUVER;
            r.damage_locations = [side(r)].into();
        }
        20 => {
            r.movement_other_v2 = movement_other::CHANGING_LANES;
            r.movement_preceding_v2 = movement_preceding::CHANGING_LANES;
            r.speed_change_v2 = speed_change::ACCELERATING;
            r.damage_locations = rear(i);
        }
        24 => {
            stop_av(r);
            r.speed_change_v2 = speed_change::DECELERATING;
            r.damage_locations = rear(i);
        }
        21 | 22 | 23 => {
            r.speed_change_v1 = match s.id() {
                21 => speed_change::ACCELERATING,
                22 => speed_change::CONSTANT,
                _ => speed_change::DECELERATING,
            };
            if s.id() == 23 {
                r.movement_preceding_v1 = movement_preceding::SLOWING_STOPPING;
            }
            r.damage_locations = rear(i);
        }
        29 => {
            r.crash_type = crash_type::SIDESWIPE;
            r.relative_position = relative_position::LATERAL_LEFT;
            r.movement_turn_v2 = turn::LEFT;
            r.movement_preceding_v2 = movement_preceding::LEFT_TURN;
            r.damage_locations = [LeftSide].into();
        }
        27 => {
            r.crash_type = crash_type::BROADSIDE;
            r.relative_position = relative_position::LATERAL_RIGHT;
            r.damage_locations = [RightSide, FrontRightCorner].into();
        }
        28 => {
            r.crash_type = crash_type::BROADSIDE;
            r.relative_position = relative_position::LATERAL_LEFT;
            r.movement_turn_v2 = turn::LEFT;
            r.movement_preceding_v2 = movement_preceding::LEFT_TURN;
            r.damage_locations = [LeftSide, FrontLeftCorner].into();
        }
        30 => {
            r.crash_type = crash_type::BROADSIDE;
            r.relative_position = relative_position::SAME_LANE_REVERSE;
            r.movement_turn_v2 = turn::LEFT;
            r.movement_preceding_v2 = movement_preceding::LEFT_TURN;
            r.damage_locations = [FrontLeftCorner].into();
        }
        14 => {
            lateral(r, i);
            r.movement_turn_v2 = turn::RIGHT;
            r.movement_preceding_v2 = movement_preceding::RIGHT_TURN;
            r.damage_locations = [side(r)].into();
        }
        16 => {
            lateral(r, i);
            r.movement_other_v2 = movement_other::CHANGING_LANES;
            r.movement_preceding_v2 = movement_preceding::CHANGING_LANES;
            r.damage_locations = [side(r)].into();
        }
        17 => {
            lateral(r, i);
            r.damage_locations = [side(r)].into();
        }
        19 => {
            r.crash_type = crash_type::HEAD_ON;
            r.relative_position = relative_position::SAME_LANE_REVERSE;
            r.front_vehicle = front_vehicle::OTHER_VEHICLE;
            r.damage_locations = [FrontLeftCorner].into();
        }
        36 => {
            r.crash_type = crash_type::HEAD_ON;
            r.relative_position = relative_position::SAME_LANE_REVERSE;
            r.front_vehicle = front_vehicle::OTHER_VEHICLE;
            r.movement_other_v2 = movement_other::OTHER;
            r.movement_preceding_v2 = movement_preceding::OTHER;
            r.damage_locations = [FrontBumper].into();
        }
        other => panic!("no template for scenario {other}"),
    }
}

fn side(r: &CrashRecord) -> DamageZone {
    if r.relative_position == relative_position::LATERAL_RIGHT {
        DamageZone::RightSide
    } else {
        DamageZone::LeftSide
    }
}

fn rear(i: usize) -> std::collections::BTreeSet<DamageZone> {
    match i % 9 {
        3 => [DamageZone::RearBumper, DamageZone::RearLeftCorner].into(),
        6 => [DamageZone::RearBumper, DamageZone::RearRightCorner].into(),
        _ => [DamageZone::RearBumper].into(),
    }
}

/// V1 intention for a record's kinematics and control type.
pub fn set_intention(r: &mut CrashRecord) {
    r.v1_yield_for = None;
    r.v1_intention = if r.direction_v1 == direction::STOPPED {
        match r.traffic_control_type {
            Some(control::SIGNAL) => intention::SIGNAL_STOPPED,
            Some(control::STOP_SIGN) => intention::STOPPED_STOP_SIGN,
            _ => intention::STOPPED_IN_TRAFFIC,
        }
    } else if r.movement_turn_v1 == turn::LEFT {
        r.v1_yield_for = Some(yield_for::ONCOMING_TRAFFIC);
        intention::LEFT_TURN_YIELD
    } else if r.movement_turn_v1 == turn::RIGHT {
        r.v1_yield_for = Some(yield_for::CROSS_TRAFFIC);
        intention::RIGHT_TURN_YIELD
    } else if r.location_type == location::RAMP {
        r.v1_yield_for = Some(yield_for::CROSS_TRAFFIC);
        intention::MERGING_YIELD
    } else if r.speed_change_v1 == speed_change::DECELERATING {
        r.v1_yield_for = Some(yield_for::FRONT_VEHICLE);
        intention::PROCEED_STRAIGHT_YIELD
    } else {
        intention::PROCEED_STRAIGHT
    };
}

/// Sets location and the intersection-only fields.
pub fn set_location(r: &mut CrashRecord, loc: u8, control: u8, kind: u8) {
    r.location_type = loc;
    if location::is_intersection(loc) {
        r.traffic_control_type = Some(control);
        r.type_of_intersection = Some(kind);
    } else {
        r.traffic_control_type = None;
        r.type_of_intersection = None;
    }
}

/// Varies weather, surface, peak time and road layout by position.
pub fn vary_environment(r: &mut CrashRecord, i: usize) {
    const WEATHER: [u8; 13] = [1, 1, 1, 2, 1, 1, 3, 1, 2, 1, 1, 1, 5];
    const PEAK: [u8; 7] = [1, 1, 2, 1, 3, 1, 1];
    const ROADS: [u8; 7] = [1, 4, 1, 3, 2, 1, 4];
    const LANES: [u8; 8] = [2, 2, 3, 1, 2, 4, 2, 3];
    r.weather = WEATHER[i % WEATHER.len()];
    r.roadway_surface = if r.weather == weather::RAINING { surface::WET } else { surface::DRY };
    r.roadway_conditions = match (i % 17, i % 23) {
        (5, _) => road_conditions::CONSTRUCTION,
        (_, 7) => road_conditions::HOLES,
        _ => road_conditions::NO_UNUSUAL,
    };
    r.if_peak_time = PEAK[i % PEAK.len()];
    r.cycle_lane = if i % 5 == 0 { cycle_lane::MARK_SEPARATION } else { cycle_lane::NONE };
    r.lane_markings = if i % 9 == 4 { lane_markings::ABSENT } else { lane_markings::PRESENT };
    r.road_types = ROADS[i % ROADS.len()];
    r.roadside_parking = i % 4 == 1;
    r.number_of_lanes_one_direction = LANES[i % LANES.len()];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interleave_keeps_counts_and_spreads() {
        let seq = interleave(&[('a', 3), ('b', 1)]);
        assert_eq!(seq, ['a', 'a', 'b', 'a']);
        let seq = interleave(&[(1, 10), (2, 5), (3, 0)]);
        assert_eq!(seq.iter().filter(|&&v| v == 1).count(), 10);
        assert!(!seq.contains(&3));
        assert!(interleave::<u8>(&[]).is_empty());
    }
}
