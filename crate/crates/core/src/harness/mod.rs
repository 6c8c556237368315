//! Everything around the rules: a baseline, random instances, file formats,
//! a uniform way to run a rule and the report written by the CLI.

mod dictator;
pub mod format;
mod generate;
pub mod report;
mod run;

pub use dictator::random_dictator;
pub use generate::generate_instance;
pub use run::{guaranteed_axioms, run_rule, Rule, RuleOutcome};
