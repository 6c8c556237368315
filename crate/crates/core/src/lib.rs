//! Best-of-both-worlds fairness for approval-based committee voting.
//!
//! The crate computes lotteries over size-`k` committees whose marginals give
//! every group of voters a fair expected share (GFS / Strong UFS) while each
//! committee in the support is itself proportional (EJR+ or FJR). Everything
//! is exact: probabilities, budgets and payments are arbitrary-precision
//! rationals.
//!
//! * [`mes`] and [`bw_mes`]: equal-shares phase, fractional completion and
//!   the resulting lottery.
//! * [`gcr`] and [`bw_gcr`]: greedy cohesive selection followed by a
//!   budgeted equal-shares sub-call.
//! * [`rounding`]: decomposition of a fractional committee into a lottery.
//! * [`axioms`]: exact checkers with witnesses.
//! * [`harness`]: baseline rule, instance generation, file formats, reports.
//!
//! Indices are 0-based in the API and 1-based in files and messages.

pub mod axioms;
pub mod bw_gcr;
pub mod bw_mes;
pub mod committee;
pub mod error;
pub mod gcr;
pub mod harness;
pub mod instance;
pub mod ledger;
pub mod limits;
pub mod mes;
pub mod rational;
pub mod rounding;

pub use committee::{marginals, Committee, FractionalCommittee, RandomizedCommittee};
pub use error::{Error, Result};
pub use instance::Instance;
pub use rational::Rational;
