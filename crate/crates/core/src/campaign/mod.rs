//! Seeded instance generation, per-theorem verification and batch reports.

mod generate;
mod report;
mod verify;

pub use generate::{generate, ClusterSpec, GeneratorKind, GeneratorSpec, COORD_BOUND, REJECTION_BUDGET};
pub use report::{
    instance_seed, run_campaign, status_name, CampaignOptions, CampaignReport, CounterexampleDump, InstanceRecord,
    Plan, PlanEntry, SummaryRow,
};
pub use verify::{
    split_extra, verify, verify_corollary, verify_main1, verify_main2, verify_main3, verify_regularity_bound,
    verify_section5, Conclusion, Hypothesis, TheoremId, TheoremVerdict, VerdictStatus, VerifyOptions,
};
