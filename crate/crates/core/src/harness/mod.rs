//! Instance generation, built-in fixtures, the classical differential
//! oracle, and the claim-checking suite.

pub mod fixtures;
pub mod generate;
pub mod oracle;
pub mod theorems;

pub use fixtures::{all_fixtures, fixture, FIXTURE_NAMES};
pub use generate::{
    generate_instances, generate_with, Family, GenParams, GenStats, EXHAUSTIVE_MAX_POINTS,
};
pub use oracle::{classical_oracle, reports_equivalent};
pub use theorems::{
    evaluate_product, catalog_claims, run_theorem_suite, verify_counterexamples, FindingStatus,
    FindingWitness, ReplayOutcome, StratumFlags, SuiteRunner, TheoremFinding, TheoremId,
    ALL_THEOREMS, PRODUCT_POINT_CAP,
};
