//! Verification campaigns: corpus generation, per-pair checks, reports.

mod campaign;
mod config;
mod corpus;

pub use campaign::{
    replay, run_campaign, run_check, run_pairs, Certificate, ClassCounts,
    InstanceRecord, Status, Summary, VerificationReport,
};
pub use config::{parse_checks, CampaignConfig, Check, Format, GraphSource, Oracle};
pub use corpus::{generate_corpus, random_graph, CorpusPair};
