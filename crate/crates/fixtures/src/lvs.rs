//! Rear-end mining fixture: 184 records, 103 of them LVS.
//!
//! Only location, control type and V1 intention vary. The strongest LVS rule
//! is impact area + signal + stopped at signal, holding for 31 of 32
//! records.

use crate::build::{apply_shape, base, date, interleave, set_location, Shape};
use prescen::data_model::codes::*;
use prescen::{CrashRecord, ScenarioId};

pub const RECORDS: usize = 184;

/// (location, control, intention, LVS records, other rear-end records)
const GROUPS: [(u8, u8, u8, usize, usize); 12] = [
    (location::INTERSECTION_IMPACT_AREA, control::SIGNAL, intention::SIGNAL_STOPPED, 31, 1),
    (location::INTERSECTION_IMPACT_AREA, control::STOP_SIGN, intention::STOPPED_STOP_SIGN, 20, 5),
    (location::ROADWAY_SEGMENT, 0, intention::STOPPED_IN_TRAFFIC, 25, 0),
    (location::INTERSECTION_CENTER, control::SIGNAL, intention::PROCEED_STRAIGHT, 15, 0),
    (location::INTERSECTION_IMPACT_AREA, control::SIGNAL, intention::LEFT_TURN_YIELD, 12, 0),
    (location::INTERSECTION_CENTER, control::SIGNAL, intention::SIGNAL_STOPPED, 0, 2),
    (location::INTERSECTION_IMPACT_AREA, control::NO_CONTROL, intention::SIGNAL_STOPPED, 0, 2),
    (location::INTERSECTION_IMPACT_AREA, control::SIGNAL, intention::PROCEED_STRAIGHT, 0, 10),
    (location::INTERSECTION_CENTER, control::SIGNAL, intention::LEFT_TURN_YIELD, 0, 4),
    (location::ROADWAY_SEGMENT, 0, intention::PROCEED_STRAIGHT, 0, 40),
    (location::RAMP, 0, intention::PROCEED_STRAIGHT, 0, 10),
    (location::PARKING_LOT, 0, intention::STOPPED_IN_TRAFFIC, 0, 7),
];

pub fn records() -> Vec<CrashRecord> {
    let others = interleave(&[
        (ScenarioId::FVM, 35),
        (ScenarioId::LVD, 32),
        (ScenarioId::LVM, 7),
        (ScenarioId::LVA, 7),
    ]);
    let mut others = others.into_iter();
    let mut out = Vec::with_capacity(RECORDS);
    for (loc, ctl, intent, lvs, rest) in GROUPS {
        let scenarios = std::iter::repeat_n(ScenarioId::LVS, lvs)
            .chain(others.by_ref().take(rest))
            .collect::<Vec<_>>();
        for s in scenarios {
            let i = out.len();
            let mut r = base(format!("LVS-{:03}", i + 1));
            r.report_date = date(2021 + (i % 3) as i32, i);
            set_location(&mut r, loc, ctl, intersection::CROSS);
            apply_shape(&mut r, Shape::Plain(s), i);
            r.v1_intention = intent;
            r.v1_yield_for = (intent == intention::LEFT_TURN_YIELD).then_some(yield_for::ONCOMING_TRAFFIC);
            out.push(r);
        }
    }
    assert_eq!(out.len(), RECORDS);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let recs = records();
        let stopped_at_signal_impact = recs
            .iter()
            .filter(|r| {
                r.location_type == location::INTERSECTION_IMPACT_AREA
                    && r.traffic_control_type == Some(control::SIGNAL)
                    && r.v1_intention == intention::SIGNAL_STOPPED
            })
            .count();
        assert_eq!(stopped_at_signal_impact, 32);
        assert!(recs.iter().all(|r| prescen::validate(r).is_ok()));
    }
}
