use std::fmt;

/// One cell of the fixed 12-zone vehicle body grid used for damage
/// locations.
///
/// Grid positions (row, column), viewed from above with the front at row 0:
///
/// ```text
///            col 0               col 1           col 2
/// row 0   front-left-corner   front-bumper    front-right-corner
/// row 1   left-side           front-center    right-side
/// row 2   undercarriage       roof            .
/// row 3   .                   rear-center     .
/// row 4   rear-left-corner    rear-bumper     rear-right-corner
/// ```
///
/// The undercarriage is not visible from above; it is placed in the spare
/// cell at (2, 0) so that every zone has a coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DamageZone {
    FrontLeftCorner = 1,
    FrontBumper = 2,
    FrontRightCorner = 3,
    LeftSide = 4,
    FrontCenter = 5,
    RightSide = 6,
    Roof = 7,
    RearCenter = 8,
    RearLeftCorner = 9,
    RearBumper = 10,
    RearRightCorner = 11,
    Undercarriage = 12,
}

impl DamageZone {
    pub const ALL: [DamageZone; 12] = [
        DamageZone::FrontLeftCorner,
        DamageZone::FrontBumper,
        DamageZone::FrontRightCorner,
        DamageZone::LeftSide,
        DamageZone::FrontCenter,
        DamageZone::RightSide,
        DamageZone::Roof,
        DamageZone::RearCenter,
        DamageZone::RearLeftCorner,
        DamageZone::RearBumper,
        DamageZone::RearRightCorner,
        DamageZone::Undercarriage,
    ];

    pub const GRID_ROWS: usize = 5;
    pub const GRID_COLS: usize = 3;

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<DamageZone> {
        DamageZone::ALL.get(usize::from(code).checked_sub(1)?).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            DamageZone::FrontLeftCorner => "front-left-corner",
            DamageZone::FrontBumper => "front-bumper",
            DamageZone::FrontRightCorner => "front-right-corner",
            DamageZone::LeftSide => "left-side",
            DamageZone::FrontCenter => "front-center",
            DamageZone::RightSide => "right-side",
            DamageZone::Roof => "roof",
            DamageZone::RearCenter => "rear-center",
            DamageZone::RearLeftCorner => "rear-left-corner",
            DamageZone::RearBumper => "rear-bumper",
            DamageZone::RearRightCorner => "rear-right-corner",
            DamageZone::Undercarriage => "undercarriage",
        }
    }

    pub fn grid_position(self) -> (usize, usize) {
        match self {
            DamageZone::FrontLeftCorner => (0, 0),
            DamageZone::FrontBumper => (0, 1),
            DamageZone::FrontRightCorner => (0, 2),
            DamageZone::LeftSide => (1, 0),
            DamageZone::FrontCenter => (1, 1),
            DamageZone::RightSide => (1, 2),
            DamageZone::Undercarriage => (2, 0),
            DamageZone::Roof => (2, 1),
            DamageZone::RearCenter => (3, 1),
            DamageZone::RearLeftCorner => (4, 0),
            DamageZone::RearBumper => (4, 1),
            DamageZone::RearRightCorner => (4, 2),
        }
    }
}

impl fmt::Display for DamageZone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn codes_round_trip_and_positions_are_distinct() {
        let mut cells = BTreeSet::new();
        for z in DamageZone::ALL {
            assert_eq!(DamageZone::from_code(z.code()), Some(z));
            let (r, c) = z.grid_position();
            assert!(r < DamageZone::GRID_ROWS && c < DamageZone::GRID_COLS);
            assert!(cells.insert((r, c)));
        }
        assert_eq!(DamageZone::from_code(0), None);
        assert_eq!(DamageZone::from_code(13), None);
    }
}
