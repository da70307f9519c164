//! Record sets with fixed severity and control-type marginals.

use crate::build::{base, date, interleave, set_location, vary_environment};
use prescen::data_model::codes::*;
use prescen::CrashRecord;

pub const SEVERITY_COUNTS: [(u8, usize); 4] = [
    (severity::SLIGHT, 755),
    (severity::MODERATE, 140),
    (severity::SEVERE, 28),
    (severity::NONE, 77),
];

pub const CONTROL_COUNTS: [(u8, usize); 5] = [
    (control::SIGNAL, 104),
    (control::STOP_SIGN, 38),
    (control::NO_CONTROL, 6),
    (control::YIELD_SIGN, 3),
    (control::METERING_LIGHT, 2),
];

pub fn severity_records() -> Vec<CrashRecord> {
    interleave(&SEVERITY_COUNTS)
        .into_iter()
        .enumerate()
        .map(|(i, sev)| {
            let mut r = base(format!("SEV-{:04}", i + 1));
            vary_environment(&mut r, i);
            r.report_date = date(2019 + (i % 5) as i32, i);
            r.damage_severity = sev;
            if sev != severity::NONE {
                r.damage_locations = [prescen::DamageZone::RearBumper].into();
            }
            r
        })
        .collect()
}

pub fn control_records() -> Vec<CrashRecord> {
    interleave(&CONTROL_COUNTS)
        .into_iter()
        .enumerate()
        .map(|(i, ctl)| {
            let mut r = base(format!("CTL-{:03}", i + 1));
            vary_environment(&mut r, i);
            r.report_date = date(2019 + (i % 5) as i32, i);
            let loc = if i % 4 == 0 {
                location::INTERSECTION_CENTER
            } else {
                location::INTERSECTION_IMPACT_AREA
            };
            set_location(&mut r, loc, ctl, intersection::CROSS);
            r.damage_locations = [prescen::DamageZone::RearBumper].into();
            r
        })
        .collect()
}
