//! The committed data files must match what the generators produce.

use std::path::Path;

#[test]
fn committed_files_match_generators() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    for (name, expected) in prescen_fixtures::files() {
        let path = data.join(name);
        let actual = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(actual == expected, "{name} is stale; run `cargo run -p prescen-fixtures --bin gen-fixtures`");
    }
}
