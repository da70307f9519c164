use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use super::record::{Field, FieldKind};

/// One code of an enumerated field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeEntry {
    pub code: u8,
    /// Human-readable label from the coding scheme.
    pub label: Cow<'static, str>,
    /// Spelling used inside mined item tokens (`Field.Name=token`).
    pub token: Cow<'static, str>,
}

/// The closed set of codes an enumerated field may hold, plus input-only
/// aliases that normalise onto a canonical code.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CodeSet {
    entries: Vec<CodeEntry>,
    aliases: BTreeMap<u8, u8>,
}

impl CodeSet {
    fn from_static(entries: &[(u8, &'static str, &'static str)]) -> Self {
        CodeSet {
            entries: entries
                .iter()
                .map(|&(code, label, token)| CodeEntry {
                    code,
                    label: Cow::Borrowed(label),
                    token: Cow::Borrowed(token),
                })
                .collect(),
            aliases: BTreeMap::new(),
        }
    }

    fn with_alias(mut self, alias: u8, canonical: u8) -> Self {
        self.aliases.insert(alias, canonical);
        self
    }

    fn entry(&self, code: u8) -> Option<&CodeEntry> {
        let code = self.canonical(code)?;
        self.entries.iter().find(|e| e.code == code)
    }

    /// Canonical code for `code`, resolving aliases. `None` if unknown.
    pub fn canonical(&self, code: u8) -> Option<u8> {
        if self.entries.iter().any(|e| e.code == code) {
            Some(code)
        } else {
            self.aliases.get(&code).copied()
        }
    }

    pub fn contains(&self, code: u8) -> bool {
        self.canonical(code).is_some()
    }

    pub fn label(&self, code: u8) -> Option<&str> {
        self.entry(code).map(|e| e.label.as_ref())
    }

    pub fn token(&self, code: u8) -> Option<&str> {
        self.entry(code).map(|e| e.token.as_ref())
    }

    /// Inverse of [`CodeSet::label`] over canonical codes.
    pub fn code_of_label(&self, label: &str) -> Option<u8> {
        self.entries.iter().find(|e| e.label == label).map(|e| e.code)
    }

    /// Canonical codes in ascending order.
    pub fn codes(&self) -> impl Iterator<Item = u8> + '_ {
        let mut codes: Vec<u8> = self.entries.iter().map(|e| e.code).collect();
        codes.sort_unstable();
        codes.into_iter()
    }

    pub fn aliases(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        self.aliases.iter().map(|(&a, &c)| (a, c))
    }

    /// Short description of the accepted codes, e.g. `1-7` or `{0,1,3}`.
    pub fn describe(&self) -> String {
        let mut all: Vec<u8> = self.codes().chain(self.aliases.keys().copied()).collect();
        all.sort_unstable();
        all.dedup();
        match (all.first(), all.last()) {
            (Some(&lo), Some(&hi)) if usize::from(hi - lo) + 1 == all.len() => format!("{lo}-{hi}"),
            _ => {
                let parts: Vec<String> = all.iter().map(|c| c.to_string()).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }

    fn insert(&mut self, entry: CodeEntry) -> Result<(), SchemaError> {
        if self.contains(entry.code) {
            return Err(SchemaError::DuplicateCode(entry.code));
        }
        if self.entries.iter().any(|e| e.label == entry.label) {
            return Err(SchemaError::DuplicateLabel(entry.label.into_owned()));
        }
        self.entries.push(entry);
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("code {0} is already registered")]
    DuplicateCode(u8),
    #[error("label `{0}` is already registered")]
    DuplicateLabel(String),
}

/// What values a coded field accepts.
#[derive(Debug, Clone, Copy)]
pub enum Domain<'a> {
    Codes(&'a CodeSet),
    Flag,
    Count,
}

impl Domain<'_> {
    pub fn contains(&self, code: u8) -> bool {
        match self {
            Domain::Codes(set) => set.contains(code),
            Domain::Flag => code <= 1,
            Domain::Count => code >= 1,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Domain::Codes(set) => set.describe(),
            Domain::Flag => "0-1".to_string(),
            Domain::Count => ">= 1".to_string(),
        }
    }
}

/// Code sets for every enumerated record field.
///
/// The bundled schema covers the coding scheme as published. The V1
/// intention and V1 yield-for lists are partial in the source material, so
/// additional codes can be registered on an owned copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    sets: BTreeMap<Field, CodeSet>,
    yielding_intentions: BTreeSet<u8>,
}

impl Schema {
    /// Shared instance of the bundled schema.
    pub fn bundled() -> &'static Schema {
        static BUNDLED: OnceLock<Schema> = OnceLock::new();
        BUNDLED.get_or_init(Schema::new)
    }

    pub fn new() -> Self {
        let mut sets = BTreeMap::new();
        let mut put = |field: Field, entries: &[(u8, &'static str, &'static str)]| {
            sets.insert(field, CodeSet::from_static(entries));
        };

        put(
            Field::LocationType,
            &[
                (1, "Intersection impact area", "Intersection impact area"),
                (2, "Intersection center", "Intersection center"),
                (3, "Parking lot", "Parking lot"),
                (4, "Ramp", "Ramp"),
                (5, "Roadway segment", "Roadway segment"),
            ],
        );
        put(
            Field::Weather,
            &[
                (1, "Clear", "clear"),
                (2, "Cloudy", "cloudy"),
                (3, "Raining", "raining"),
                (4, "Snowing", "snowing"),
                (5, "Fog/Visibility", "fog/visibility"),
                (6, "Wind", "wind"),
                (7, "Other", "other"),
            ],
        );
        put(
            Field::CrashType,
            &[
                (1, "Head-on", "head-on"),
                (2, "Side Swipe", "side swipe"),
                (3, "Rear End", "rear end"),
                (4, "Broadside", "broadside"),
                (5, "Hit Object", "hit object"),
                (6, "Overturned", "overturned"),
                (7, "Vehicle/Pedestrian", "vehicle/pedestrian"),
                (8, "Other", "other"),
            ],
        );
        put(
            Field::RoadwaySurface,
            &[
                (1, "Dry", "dry"),
                (2, "Wet", "wet"),
                (3, "Snowy-Icy", "snowy-icy"),
                (4, "Slippery", "slippery"),
            ],
        );
        put(
            Field::RoadwayConditions,
            &[
                (1, "Holes", "holes"),
                (2, "Loose Material", "loose material"),
                (3, "Obstruction", "obstruction"),
                (4, "Construction", "construction"),
                (5, "Reduced Width", "reduced width"),
                (6, "Flooded", "flooded"),
                (7, "Other", "other"),
                (8, "No Unusual Conditions", "no unusual conditions"),
            ],
        );
        put(
            Field::TrafficControlType,
            &[
                (1, "Metering light", "metering light"),
                (2, "No control", "no control"),
                (3, "Signal", "signal"),
                (4, "Stop sign", "stop sign"),
                (5, "Yield sign", "yield sign"),
            ],
        );
        sets.insert(
            Field::Lighting,
            CodeSet::from_static(&[
                (1, "Daylight", "daylight"),
                (2, "Dusk-Dawn", "dusk-dawn"),
                (3, "Dark-Street Lights", "dark-street lights"),
                (4, "Dark-No Street Lights", "dark-no street lights"),
            ])
            .with_alias(5, 3),
        );
        let mut put = |field: Field, entries: &[(u8, &'static str, &'static str)]| {
            sets.insert(field, CodeSet::from_static(entries));
        };
        put(
            Field::TypeOfIntersection,
            &[
                (1, "Cross-shaped", "cross-shaped"),
                (2, "T-shaped", "T-shaped"),
                (3, "X-shaped", "X-shaped"),
                (4, "Y-shaped", "Y-shaped"),
                (5, "Multi-roads", "multi-roads"),
                (6, "Roundabout", "roundabout"),
            ],
        );
        put(
            Field::IfPeakTime,
            &[
                (1, "Non-peak time", "non-peak"),
                (2, "Morning peak", "morning peak"),
                (3, "Evening peak", "evening peak"),
            ],
        );
        let preceding: &[(u8, &'static str, &'static str)] = &[
            (1, "Stopped", "stopped"),
            (2, "Proceeding Straight", "proceeding straight"),
            (3, "Ran Off Road", "ran off road"),
            (4, "Making Right Turn", "making right turn"),
            (5, "Making Left Turn", "making left turn"),
            (6, "Making U Turn", "making u turn"),
            (7, "Backing", "backing"),
            (8, "Slowing/Stopping", "slowing/stopping"),
            (9, "Passing Other Vehicle", "passing other vehicle"),
            (10, "Changing Lanes", "changing lanes"),
            (11, "Parking Maneuver", "parking maneuver"),
            (12, "Entering Traffic", "entering traffic"),
            (13, "Other Unsafe Turning", "other unsafe turning"),
            (14, "Xing into Opposite Lane", "xing into opposite lane"),
            (15, "Parked", "parked"),
            (16, "Merging", "merging"),
            (17, "Traveling Wrong Way", "traveling wrong way"),
            (18, "Other", "other"),
        ];
        put(Field::MovementPrecedingV1, preceding);
        put(Field::MovementPrecedingV2, preceding);
        put(
            Field::V1Intention,
            &[
                (1, "Signal stopped", "signal stopped"),
                (2, "Proceed straight & yield", "proceed straight&yield"),
                (3, "Right turn & yield", "right turn&yield"),
                (4, "Left turn & yield", "left turn&yield"),
                (5, "Stopped in road traffic", "stopped in road traffic"),
                (6, "Stopped at stop sign", "stopped stop sign"),
                (7, "Merging & yield", "merging&yield"),
                (8, "Proceed straight", "proceed straight"),
            ],
        );
        put(
            Field::V1YieldFor,
            &[
                (1, "Oncoming traffic", "oncoming traffic"),
                (2, "Cross traffic", "cross traffic"),
                (3, "Front vehicle", "front vehicle"),
            ],
        );
        put(
            Field::CycleLane,
            &[
                (1, "No - no cycle lane", "no-no cycle lane"),
                (2, "Yes - no separation", "yes-no separation"),
                (3, "Yes - mark separation", "yes-mark separation"),
                (4, "Yes - mark separation&columns", "yes-mark separation&columns"),
                (5, "Yes - mark separation&barrier", "yes-mark separation&barrier"),
            ],
        );
        put(
            Field::LaneMarkings,
            &[(1, "Lane markings", "lane markings"), (2, "No lane markings", "no lane markings")],
        );
        put(
            Field::RoadTypes,
            &[
                (1, "Two-way with marked median", "two-way with marked median"),
                (2, "Two-way with hard median", "two-way with hard median"),
                (3, "One way", "one-way"),
                (4, "Two-way without median", "two-way without median"),
            ],
        );
        put(
            Field::V1Mode,
            &[
                (1, "Autonomous Engaged", "autonomous engaged"),
                (2, "Autonomous Disengaged", "autonomous disengaged"),
                (3, "Conventional", "conventional"),
            ],
        );
        put(
            Field::V1State,
            &[(1, "Moving", "moving"), (2, "Stopped in Traffic", "stopped in traffic")],
        );
        put(
            Field::TypeOfObjectCollided,
            &[
                (1, "Animal", "animal"),
                (2, "Vehicle", "vehicle"),
                (3, "Non-motorized vehicle", "non-motorized vehicle"),
                (4, "Pedestrian", "pedestrian"),
                (5, "Object", "object"),
                (6, "None", "none"),
            ],
        );
        let direction: &[(u8, &'static str, &'static str)] =
            &[(0, "Stopped", "stopped"), (1, "Forward", "forward"), (2, "Backward", "backward")];
        put(Field::DirectionV1, direction);
        put(Field::DirectionV2, direction);
        let speed: &[(u8, &'static str, &'static str)] = &[
            (0, "Constant", "constant"),
            (1, "Accelerating", "accelerating"),
            (2, "Decelerating", "decelerating"),
        ];
        put(Field::SpeedChangeV1, speed);
        put(Field::SpeedChangeV2, speed);
        let turn: &[(u8, &'static str, &'static str)] =
            &[(0, "None", "none"), (1, "Right turn", "right turn"), (2, "Left turn", "left turn")];
        put(Field::MovementTurnV1, turn);
        put(Field::MovementTurnV2, turn);
        let other: &[(u8, &'static str, &'static str)] = &[
            (1, "Proceeding straight", "proceeding straight"),
            (2, "Passing other vehicle", "passing other vehicle"),
            (3, "Changing lanes", "changing lanes"),
            (4, "Making U turn", "making u turn"),
            (5, "Entering traffic", "entering traffic"),
            (6, "Merging", "merging"),
            (7, "Ran off road", "ran off road"),
            (8, "Parking maneuver", "parking maneuver"),
            (9, "Parked", "parked"),
            (10, "Travelling wrong way", "travelling wrong way"),
            (11, "Lane splitting", "lane splitting"),
            (12, "Other", "other"),
            (13, "None", "none"),
        ];
        put(Field::MovementOtherV1, other);
        put(Field::MovementOtherV2, other);
        put(
            Field::RelativePosition,
            &[
                (1, "Same lane & direction", "same lane&direction"),
                (2, "Same lane reverse direction", "same lane reverse direction"),
                (3, "Lateral lane - right", "lateral lane-right"),
                (4, "Lateral lane - left", "lateral lane-left"),
            ],
        );
        put(
            Field::FrontVehicle,
            &[(1, "Autonomous Vehicle", "autonomous vehicle"), (2, "Other Vehicle", "other vehicle")],
        );
        put(
            Field::DamageSeverity,
            &[(0, "None", "none"), (1, "Slight", "slight"), (2, "Moderate", "moderate"), (3, "Severe", "severe")],
        );

        use super::codes::intention::*;
        Schema {
            sets,
            yielding_intentions: [PROCEED_STRAIGHT_YIELD, RIGHT_TURN_YIELD, LEFT_TURN_YIELD, MERGING_YIELD]
                .into_iter()
                .collect(),
        }
    }

    /// Code set of an enumerated field; `None` for flags, counts and the
    /// non-coded columns.
    pub fn code_set(&self, field: Field) -> Option<&CodeSet> {
        self.sets.get(&field)
    }

    /// Accepted values of a coded field; `None` for id, date and zone columns.
    pub fn domain(&self, field: Field) -> Option<Domain<'_>> {
        match field.kind() {
            FieldKind::Code | FieldKind::OptionalCode => self.sets.get(&field).map(Domain::Codes),
            FieldKind::Flag => Some(Domain::Flag),
            FieldKind::Count => Some(Domain::Count),
            FieldKind::Id | FieldKind::Date | FieldKind::Zones => None,
        }
    }

    /// Canonical form of `code` for `field` (resolves aliases).
    pub fn canonical(&self, field: Field, code: u8) -> u8 {
        self.sets.get(&field).and_then(|s| s.canonical(code)).unwrap_or(code)
    }

    pub fn label(&self, field: Field, code: u8) -> Option<Cow<'_, str>> {
        match field.kind() {
            FieldKind::Flag => match code {
                0 => Some(Cow::Borrowed("No")),
                1 => Some(Cow::Borrowed("Yes")),
                _ => None,
            },
            FieldKind::Count => (code >= 1).then(|| Cow::Owned(code.to_string())),
            _ => self.sets.get(&field)?.label(code).map(Cow::Borrowed),
        }
    }

    /// Rendering of `code` inside a mined item token.
    pub fn token_label(&self, field: Field, code: u8) -> Option<Cow<'_, str>> {
        match field.kind() {
            FieldKind::Flag => match code {
                0 => Some(Cow::Borrowed("no")),
                1 => Some(Cow::Borrowed("yes")),
                _ => None,
            },
            FieldKind::Count => (code >= 1).then(|| Cow::Owned(code.to_string())),
            _ => self.sets.get(&field)?.token(code).map(Cow::Borrowed),
        }
    }

    pub fn is_yielding_intention(&self, code: u8) -> bool {
        self.yielding_intentions.contains(&code)
    }

    /// Adds a V1 intention code beyond the bundled list.
    pub fn register_intention(
        &mut self,
        code: u8,
        label: impl Into<String>,
        token: impl Into<String>,
        yielding: bool,
    ) -> Result<(), SchemaError> {
        self.register(Field::V1Intention, code, label.into(), token.into())?;
        if yielding {
            self.yielding_intentions.insert(code);
        }
        Ok(())
    }

    /// Adds a V1 yield-for code beyond the bundled list.
    pub fn register_yield_target(
        &mut self,
        code: u8,
        label: impl Into<String>,
        token: impl Into<String>,
    ) -> Result<(), SchemaError> {
        self.register(Field::V1YieldFor, code, label.into(), token.into())
    }

    fn register(&mut self, field: Field, code: u8, label: String, token: String) -> Result<(), SchemaError> {
        self.sets.entry(field).or_default().insert(CodeEntry {
            code,
            label: Cow::Owned(label),
            token: Cow::Owned(token),
        })
    }
}

impl Default for Schema {
    fn default() -> Self {
        Schema::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_code_field_has_a_set() {
        let schema = Schema::bundled();
        for &f in Field::ALL {
            match f.kind() {
                FieldKind::Code | FieldKind::OptionalCode => assert!(schema.code_set(f).is_some(), "{f}"),
                _ => assert!(schema.code_set(f).is_none(), "{f}"),
            }
        }
    }

    #[test]
    fn label_decoding_is_inverse_of_encoding() {
        let schema = Schema::bundled();
        for &f in Field::ALL {
            let Some(set) = schema.code_set(f) else { continue };
            for code in set.codes() {
                let label = set.label(code).unwrap();
                assert_eq!(set.code_of_label(label), Some(code), "{f} {code}");
            }
        }
    }

    #[test]
    fn lighting_alias_resolves_to_street_lights() {
        let schema = Schema::bundled();
        let set = schema.code_set(Field::Lighting).unwrap();
        assert!(set.contains(5));
        assert_eq!(set.canonical(5), Some(3));
        assert_eq!(set.codes().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(set.describe(), "1-5");
        assert_eq!(schema.token_label(Field::Lighting, 5).unwrap(), "dark-street lights");
    }

    #[test]
    fn ranges_are_described_compactly() {
        let schema = Schema::bundled();
        assert_eq!(schema.code_set(Field::Weather).unwrap().describe(), "1-7");
        assert_eq!(schema.code_set(Field::DirectionV1).unwrap().describe(), "0-2");
    }

    #[test]
    fn registering_intentions_extends_the_set() {
        let mut schema = Schema::new();
        schema.register_intention(9, "Reversing & yield", "reversing&yield", true).unwrap();
        assert!(schema.domain(Field::V1Intention).unwrap().contains(9));
        assert!(schema.is_yielding_intention(9));
        assert_eq!(
            schema.register_intention(9, "dup", "dup", false),
            Err(SchemaError::DuplicateCode(9))
        );
        assert_eq!(
            schema.register_intention(10, "Signal stopped", "x", false),
            Err(SchemaError::DuplicateLabel("Signal stopped".into()))
        );
        assert!(!Schema::bundled().domain(Field::V1Intention).unwrap().contains(9));
    }

    #[test]
    fn flag_and_count_tokens() {
        let schema = Schema::bundled();
        assert_eq!(schema.token_label(Field::RoadsideParking, 1).unwrap(), "yes");
        assert_eq!(schema.token_label(Field::NumberOfLanesOneDirection, 3).unwrap(), "3");
        assert!(schema.token_label(Field::NumberOfLanesOneDirection, 0).is_none());
    }
}
