use std::fmt;

/// A pre-crash scenario of the NHTSA light-vehicle typology.
///
/// Identifiers 1-36 follow the typology numbering. The published frequency
/// table prints number 12 for both "Pedalcyclist/No Maneuver" and
/// "Pedalcyclist/Maneuver"; the maneuver variant is kept apart under the
/// internal identifier 37 and still reports table number 12.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScenarioId(u8);

struct ScenarioInfo {
    name: &'static str,
    abbreviation: Option<&'static str>,
}

const fn info(name: &'static str, abbreviation: Option<&'static str>) -> ScenarioInfo {
    ScenarioInfo { name, abbreviation }
}

// Rows observed in the published frequency table carry its exact wording.
// The remaining rows are never produced by the bundled rules.
static CATALOGUE: [ScenarioInfo; 37] = [
    info("Vehicle Failure", None),
    info("Control Loss/Vehicle Action", None),
    info("Control Loss/No Vehicle Action", None),
    info("Running Red Light", None),
    info("Running Stop Sign", None),
    info("Road Edge Departure/Maneuver", None),
    info("Road Edge Departure/No Maneuver", None),
    info("Animal/No Maneuver", None),
    info("Animal/Maneuver", None),
    info("Pedestrian/No Maneuver", None),
    info("Pedestrian/Maneuver", None),
    info("Pedalcyclist/No Maneuver", None),
    info("Backing into Vehicle", None),
    info("Turning/Same Direction", None),
    info("Parking/Same Direction", None),
    info("Changing Lanes/Same Direction", None),
    info("Drifting/Same Direction", None),
    info("Opposite Direction/Maneuver", None),
    info("Opposite Direction/No Maneuver", None),
    info(
        "Rear-end/Following Vehicle Making a Maneuver and Approaching Lead Vehicle (FVM)",
        Some("FVM"),
    ),
    info("Rear-end/Lead Vehicle Accelerating (LVA)", Some("LVA")),
    info("Rear-end/Lead Vehicle Moving at Lower Constant Speed (LVM)", Some("LVM")),
    info("Rear-end/Lead Vehicle Decelerating (LVD)", Some("LVD")),
    info("Rear-end/Lead Vehicle Stopped (LVS)", Some("LVS")),
    info("Unlisted Scenario 25", None),
    info("Unlisted Scenario 26", None),
    info("Straight Crossing Paths (SCP)", Some("SCP")),
    info("Left Turn Across Path, Lateral Direction (LTAP/LD)", Some("LTAP/LD")),
    info("Left Turn Into Path (LTIP)", Some("LTIP")),
    info("Left Turn Across Path/Opposite Direction (LTAP/OD)", Some("LTAP/OD")),
    info("Unlisted Scenario 31", None),
    info("Unlisted Scenario 32", None),
    info("Non-collision/No Impact", None),
    info("Object/Maneuver", None),
    info("Object/No Maneuver", None),
    info("Other", None),
    info("Pedalcyclist/Maneuver", None),
];

impl ScenarioId {
    pub const VEHICLE_FAILURE: ScenarioId = ScenarioId(1);
    pub const ANIMAL_NO_MANEUVER: ScenarioId = ScenarioId(8);
    pub const ANIMAL_MANEUVER: ScenarioId = ScenarioId(9);
    pub const PEDESTRIAN_NO_MANEUVER: ScenarioId = ScenarioId(10);
    pub const PEDESTRIAN_MANEUVER: ScenarioId = ScenarioId(11);
    pub const PEDALCYCLIST_NO_MANEUVER: ScenarioId = ScenarioId(12);
    pub const BACKING: ScenarioId = ScenarioId(13);
    pub const TURNING_SAME_DIRECTION: ScenarioId = ScenarioId(14);
    pub const PARKING_SAME_DIRECTION: ScenarioId = ScenarioId(15);
    pub const CHANGING_LANES: ScenarioId = ScenarioId(16);
    pub const DRIFTING: ScenarioId = ScenarioId(17);
    pub const OPPOSITE_MANEUVER: ScenarioId = ScenarioId(18);
    pub const OPPOSITE_NO_MANEUVER: ScenarioId = ScenarioId(19);
    pub const FVM: ScenarioId = ScenarioId(20);
    pub const LVA: ScenarioId = ScenarioId(21);
    pub const LVM: ScenarioId = ScenarioId(22);
    pub const LVD: ScenarioId = ScenarioId(23);
    pub const LVS: ScenarioId = ScenarioId(24);
    pub const SCP: ScenarioId = ScenarioId(27);
    pub const LTAP_LD: ScenarioId = ScenarioId(28);
    pub const LTIP: ScenarioId = ScenarioId(29);
    pub const LTAP_OD: ScenarioId = ScenarioId(30);
    pub const NON_COLLISION: ScenarioId = ScenarioId(33);
    pub const OBJECT_MANEUVER: ScenarioId = ScenarioId(34);
    pub const OBJECT_NO_MANEUVER: ScenarioId = ScenarioId(35);
    pub const OTHER: ScenarioId = ScenarioId(36);
    pub const PEDALCYCLIST_MANEUVER: ScenarioId = ScenarioId(37);

    /// Rear-end family (FVM, LVA, LVM, LVD, LVS).
    pub const REAR_END: [ScenarioId; 5] = [Self::FVM, Self::LVA, Self::LVM, Self::LVD, Self::LVS];
    /// Intersection crossing-path family.
    pub const INTERSECTION: [ScenarioId; 4] = [Self::SCP, Self::LTAP_LD, Self::LTIP, Self::LTAP_OD];

    pub fn new(id: u8) -> Option<ScenarioId> {
        (1..=37).contains(&id).then_some(ScenarioId(id))
    }

    pub fn all() -> impl Iterator<Item = ScenarioId> {
        (1..=37).map(ScenarioId)
    }

    /// Internal identifier (1-37).
    pub fn id(self) -> u8 {
        self.0
    }

    /// Number printed in the typology table.
    pub fn table_number(self) -> u8 {
        if self == Self::PEDALCYCLIST_MANEUVER {
            12
        } else {
            self.0
        }
    }

    pub fn name(self) -> &'static str {
        CATALOGUE[usize::from(self.0) - 1].name
    }

    pub fn abbreviation(self) -> Option<&'static str> {
        CATALOGUE[usize::from(self.0) - 1].abbreviation
    }

    /// Vulnerable-road-user and animal scenarios. Crash reports do not code
    /// the VRU's own motion, so rule-based assignments into these scenarios
    /// are flagged for manual review.
    pub fn needs_manual_check(self) -> bool {
        matches!(self.0, 8..=12 | 37)
    }

    /// Item token used when mining, e.g. `Scenario=Rear-end/Lead Vehicle Stopped (LVS)`.
    pub fn token(self) -> String {
        format!("Scenario={}", self.name())
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.table_number(), self.name())
    }
}
