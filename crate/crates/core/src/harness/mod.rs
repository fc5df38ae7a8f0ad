//! Seeded multi-method campaigns: configuration, execution, statistics and
//! report files.

mod campaign;
mod config;
mod report;
mod stats;

pub use campaign::{
    run_campaign, BenchmarkReport, CampaignOutcome, CampaignReport, MethodReport, RankingTable,
    RunSummary,
};
pub use config::{CampaignConfig, FlowSpec};
pub use report::{emit_report, ranking_csv, summary_json, trace_csv, trace_path};
pub use stats::{compute_rankings, mean, Rankings, Stats};
