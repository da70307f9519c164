//! Exact percentage rounding from integer counts.

/// `count / total * 100` rounded half-up to two decimals, returned in
/// hundredths of a percent. Computed in integers so the result does not
/// depend on binary floating-point representation.
pub fn hundredths(count: u64, total: u64) -> Option<u64> {
    if total == 0 {
        return None;
    }
    let scaled = u128::from(count) * 20_000 + u128::from(total);
    Some((scaled / (2 * u128::from(total))) as u64)
}

/// Rounded percentage as a float with two decimals.
pub fn rounded(count: u64, total: u64) -> Option<f64> {
    hundredths(count, total).map(|h| h as f64 / 100.0)
}

/// Rounded percentage rendered with exactly two decimals, e.g. `32.61`.
pub fn format(count: u64, total: u64) -> String {
    match hundredths(count, total) {
        Some(h) => format!("{}.{:02}", h / 100, h % 100),
        None => String::new(),
    }
}

/// Unrounded percentage.
pub fn exact(count: u64, total: u64) -> Option<f64> {
    (total > 0).then(|| count as f64 * 100.0 / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_values() {
        assert_eq!(format(105, 322), "32.61");
        assert_eq!(format(38, 322), "11.80");
        assert_eq!(format(35, 322), "10.87");
        assert_eq!(format(104, 153), "67.97");
        assert_eq!(format(38, 153), "24.84");
    }

    #[test]
    fn half_up() {
        // 1/8 = 12.5% exactly; 1/16 = 6.25%; 1/32 = 3.125% -> 3.13
        assert_eq!(format(1, 32), "3.13");
        assert_eq!(format(1, 16), "6.25");
        assert_eq!(format(1, 200_000), "0.00");
        assert_eq!(format(1, 20_000), "0.01");
    }

    #[test]
    fn empty_total() {
        assert_eq!(hundredths(0, 0), None);
        assert_eq!(format(3, 0), "");
        assert_eq!(format(7, 7), "100.00");
    }
}
