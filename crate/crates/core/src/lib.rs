//! Pre-crash scenario analytics for coded autonomous-vehicle crash records.
//!
//! The crate is organised by pipeline stage:
//!
//! - [`data_model`]: the coded [`CrashRecord`], field enumerations and validation
//! - [`ingestion`]: record file parsing, writing and the analysis filter
//! - [`scenario_engine`]: declarative mapping rules, classification and FAR/MAR/accuracy
//! - [`rule_miner`]: Apriori frequent item sets and support/confidence/lift rules
//! - [`dream_causation`]: DREAM causal-chain graphs and factor shares
//! - [`reporting`]: distribution tables and the damage heatmap

pub mod data_model;
pub mod dream_causation;
pub mod ingestion;
pub mod percent;
pub mod reporting;
pub mod rule_miner;
pub mod scenario_engine;

pub use data_model::{validate, CrashRecord, DamageZone, Field, ScenarioId, Schema};
