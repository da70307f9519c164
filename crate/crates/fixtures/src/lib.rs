//! Deterministic synthetic data sets for the test suites and the CLI demo.
//!
//! Nothing here uses randomness: every count is planned, and
//! [`build::interleave`] spreads categories evenly through a file.

pub mod build;
pub mod corpus;
pub mod descriptive;
pub mod dream;
pub mod lvs;
pub mod oracle;

use prescen::ingestion::{write_records, RecordFormat};
use prescen::CrashRecord;

/// Rule file classifying the corpus.
pub const REFERENCE_RULES: &str = include_str!("../../../data/reference.rules");

pub fn records_csv(records: &[CrashRecord]) -> String {
    let mut buf = Vec::new();
    write_records(&mut buf, records, RecordFormat::Delimited).expect("in-memory write");
    String::from_utf8(buf).expect("utf-8 output")
}

/// Every generated file, as (name under `data/`, contents).
pub fn files() -> Vec<(&'static str, String)> {
    let corpus = corpus::corpus();
    vec![
        ("corpus_raw.csv", records_csv(&corpus.raw)),
        ("ground_truth.csv", corpus::ground_truth_csv(&corpus)),
        ("lvs_mining.csv", records_csv(&lvs::records())),
        ("intersection_chains.dream", dream::chain_text()),
        ("severity.csv", records_csv(&descriptive::severity_records())),
        ("control.csv", records_csv(&descriptive::control_records())),
    ]
}
