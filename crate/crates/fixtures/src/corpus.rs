//! The labelled 322-record corpus and its 615-record raw export.
//!
//! Every record is built from the kinematic template of the scenario the
//! reference rules assign to it, so the predicted frequency table is fixed
//! by construction. Six records are deliberately mislabelled by those
//! rules (see [`Shape`]).

use crate::build::{apply_shape, base, date, interleave, set_intention, set_location, vary_environment, Shape};
use prescen::data_model::codes::*;
use prescen::{CrashRecord, ScenarioId};

/// Predicted scenario and its record count per location type, in the order
/// impact area, center, parking lot, ramp, segment.
pub const LOCATION_COUNTS: [(u8, [usize; 5]); 24] = [
    (24, [80, 5, 2, 6, 12]),
    (20, [12, 2, 0, 2, 22]),
    (23, [22, 3, 0, 0, 10]),
    (22, [3, 0, 0, 0, 4]),
    (21, [3, 0, 0, 1, 2]),
    (13, [7, 0, 8, 0, 4]),
    (15, [0, 0, 4, 0, 7]),
    (12, [10, 3, 0, 0, 4]),
    (37, [2, 1, 0, 0, 0]),
    (17, [6, 0, 0, 0, 7]),
    (19, [4, 3, 0, 0, 6]),
    (14, [4, 3, 0, 0, 0]),
    (16, [2, 0, 0, 0, 5]),
    (28, [0, 6, 0, 0, 1]),
    (27, [0, 6, 0, 0, 1]),
    (30, [0, 2, 0, 0, 0]),
    (29, [1, 0, 0, 0, 0]),
    (35, [3, 0, 1, 0, 3]),
    (34, [1, 0, 3, 0, 1]),
    (36, [2, 1, 1, 0, 3]),
    (1, [1, 0, 0, 0, 1]),
    (8, [0, 0, 0, 0, 1]),
    (33, [0, 0, 1, 0, 0]),
    (10, [1, 0, 0, 0, 0]),
];

pub const RETAINED: usize = 322;
pub const REMOVED_MODE: usize = 170;
pub const REMOVED_VEHICLES: usize = 123;

const YEARS: [(i32, usize); 7] = [(2018, 30), (2019, 50), (2020, 30), (2021, 55), (2022, 70), (2023, 80), (2024, 7)];

const LOCATIONS: [u8; 5] = [
    location::INTERSECTION_IMPACT_AREA,
    location::INTERSECTION_CENTER,
    location::PARKING_LOT,
    location::RAMP,
    location::ROADWAY_SEGMENT,
];

#[derive(Debug, Clone)]
pub struct Corpus {
    /// Retained and filtered-out records, interleaved.
    pub raw: Vec<CrashRecord>,
    /// Analyst labels for the retained records, in raw order.
    pub truth: Vec<(String, ScenarioId)>,
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    predicted: ScenarioId,
    truth: ScenarioId,
    shape: Shape,
    location: u8,
}

fn sid(id: u8) -> ScenarioId {
    ScenarioId::new(id).expect("known scenario")
}

fn slots() -> Vec<Slot> {
    let mut grouped = Vec::with_capacity(RETAINED);
    for (id, counts) in LOCATION_COUNTS {
        let s = sid(id);
        let mut k = 0;
        for (loc, n) in LOCATIONS.iter().zip(counts) {
            for _ in 0..n {
                let (shape, truth) = match (id, k) {
                    (12, 0 | 1) => (Shape::CyclistAvStraight, sid(37)),
                    (16, 0 | 1) => (Shape::BothChangingLanes, ScenarioId::OTHER),
                    (17, 0 | 1) => (Shape::LaneChangeCodedAsDrift, sid(16)),
                    (24, k) if k % 20 == 7 => (Shape::LvsAvFollowing, s),
                    _ => (Shape::Plain(s), s),
                };
                grouped.push(Slot { predicted: s, truth, shape, location: *loc });
                k += 1;
            }
        }
    }
    assert_eq!(grouped.len(), RETAINED);
    let mut out = vec![grouped[0]; RETAINED];
    for (j, slot) in grouped.into_iter().enumerate() {
        out[j * 97 % RETAINED] = slot;
    }
    out
}

fn in_intersection_group(slot: &Slot) -> bool {
    matches!(slot.predicted.id(), 27..=30 | 33) && location::is_intersection(slot.location)
}

/// Distributes `plan` over the positions selected by `pick`, in order.
fn assign<T: Clone>(slots: &[Slot], pick: impl Fn(&Slot) -> bool, plan: &[(T, usize)], out: &mut [Option<T>]) {
    let idx: Vec<usize> = (0..slots.len()).filter(|&i| pick(&slots[i])).collect();
    let seq = interleave(plan);
    assert_eq!(idx.len(), seq.len(), "plan size mismatch");
    for (i, v) in idx.into_iter().zip(seq) {
        out[i] = Some(v);
    }
}

fn retained_records() -> (Vec<CrashRecord>, Vec<ScenarioId>) {
    let slots = slots();
    let n = slots.len();

    let mut controls = vec![None; n];
    assign(
        &slots,
        |s| location::is_intersection(s.location),
        &[
            (control::SIGNAL, 130),
            (control::STOP_SIGN, 52),
            (control::NO_CONTROL, 10),
            (control::YIELD_SIGN, 4),
            (control::METERING_LIGHT, 3),
        ],
        &mut controls,
    );

    let rear_end = |s: &Slot| ScenarioId::REAR_END.contains(&s.predicted);
    let mut night = vec![None; n];
    assign(&slots, in_intersection_group, &[(true, 10), (false, 5)], &mut night);
    assign(&slots, rear_end, &[(true, 50), (false, 141)], &mut night);
    assign(&slots, |s| !in_intersection_group(s) && !rear_end(s), &[(true, 44), (false, 72)], &mut night);

    let mut sev = vec![None; n];
    assign(
        &slots,
        in_intersection_group,
        &[(severity::SEVERE, 3), (severity::MODERATE, 3), (severity::SLIGHT, 9)],
        &mut sev,
    );
    assign(
        &slots,
        |s| !in_intersection_group(s) && s.predicted != ScenarioId::NON_COLLISION,
        &[
            (severity::SLIGHT, 234),
            (severity::MODERATE, 42),
            (severity::SEVERE, 6),
            (severity::NONE, 24),
        ],
        &mut sev,
    );
    for (i, s) in slots.iter().enumerate() {
        if s.predicted == ScenarioId::NON_COLLISION && !location::is_intersection(s.location) {
            sev[i] = Some(severity::NONE);
        }
    }

    let years = plan_years(&slots);

    let mut records = Vec::with_capacity(n);
    let mut truth = Vec::with_capacity(n);
    let mut night_k = 0;
    for (i, slot) in slots.iter().enumerate() {
        let mut r = base(String::new());
        vary_environment(&mut r, i);
        const KINDS: [u8; 6] = [
            intersection::CROSS,
            intersection::CROSS,
            intersection::T_SHAPED,
            intersection::CROSS,
            intersection::X_SHAPED,
            intersection::Y_SHAPED,
        ];
        set_location(&mut r, slot.location, controls[i].unwrap_or(control::NO_CONTROL), KINDS[i % KINDS.len()]);
        apply_shape(&mut r, slot.shape, i);
        set_intention(&mut r);
        if night[i].expect("night planned") {
            r.lighting = match night_k {
                11 | 61 => lighting::DARK_STREET_LIGHTS_ALIAS,
                k if k % 2 == 0 => lighting::DARK_STREET_LIGHTS,
                _ => lighting::DARK_NO_STREET_LIGHTS,
            };
            night_k += 1;
        }
        r.damage_severity = sev[i].expect("severity planned");
        if r.damage_severity == severity::NONE {
            r.damage_locations.clear();
        }
        r.report_date = date(years[i], i);
        records.push(r);
        truth.push(slot.truth);
    }
    (records, truth)
}

/// Years with 18 of the 80 records in 2023 involving a cyclist or object.
fn plan_years(slots: &[Slot]) -> Vec<i32> {
    let n = slots.len();
    let mut years = vec![None; n];
    let vru_or_object = |s: &Slot| {
        matches!(s.shape, Shape::CyclistAvStraight) || matches!(s.predicted.id(), 12 | 37 | 34 | 35)
    };
    let cyclist = |s: &Slot| matches!(s.shape, Shape::CyclistAvStraight) || matches!(s.predicted.id(), 12 | 37);
    let mut reserved_cyclist = 0;
    let mut reserved_object = 0;
    let mut spill = Vec::new();
    for (i, s) in slots.iter().enumerate() {
        if !vru_or_object(s) {
            continue;
        }
        if cyclist(s) && reserved_cyclist < 10 {
            reserved_cyclist += 1;
            years[i] = Some(2023);
        } else if !cyclist(s) && reserved_object < 8 {
            reserved_object += 1;
            years[i] = Some(2023);
        } else {
            spill.push(i);
        }
    }
    let spill_plan = [(2018, 2), (2019, 3), (2020, 2), (2021, 3), (2022, 4)];
    for (i, y) in spill.iter().zip(interleave(&spill_plan)) {
        years[*i] = Some(y);
    }
    let rest: Vec<(i32, usize)> = YEARS
        .iter()
        .map(|&(y, total)| {
            let used = years.iter().filter(|v| **v == Some(y)).count();
            (y, total - used)
        })
        .collect();
    let free: Vec<usize> = (0..n).filter(|&i| years[i].is_none()).collect();
    for (i, y) in free.into_iter().zip(interleave(&rest)) {
        years[i] = Some(y);
    }
    years.into_iter().map(|y| y.expect("year planned")).collect()
}

pub fn corpus() -> Corpus {
    let (retained, labels) = retained_records();
    let order = interleave(&[(0u8, RETAINED), (1, REMOVED_MODE), (2, REMOVED_VEHICLES)]);
    let mut raw = Vec::with_capacity(order.len());
    let mut truth = Vec::with_capacity(RETAINED);
    let (mut r, mut m, mut v) = (0, 0, 0);
    for (pos, kind) in order.into_iter().enumerate() {
        let id = format!("CA-{:04}", pos + 1);
        let mut rec = match kind {
            0 => {
                truth.push((id.clone(), labels[r]));
                r += 1;
                retained[r - 1].clone()
            }
            1 => {
                let mut rec = retained[(m * 7) % RETAINED].clone();
                rec.v1_mode = if m % 2 == 0 { v1_mode::AUTONOMOUS_DISENGAGED } else { v1_mode::CONVENTIONAL };
                m += 1;
                rec
            }
            _ => {
                let mut rec = retained[(v * 11 + 3) % RETAINED].clone();
                rec.involved_vehicles = if v % 2 == 0 { 1 } else { 3 };
                v += 1;
                rec
            }
        };
        rec.record_id = id;
        raw.push(rec);
    }
    Corpus { raw, truth }
}

pub fn ground_truth_csv(corpus: &Corpus) -> String {
    let mut out = String::from("record_id,scenario_id\n");
    for (id, s) in &corpus.truth {
        out.push_str(&format!("{id},{}\n", s.id()));
    }
    out
}
