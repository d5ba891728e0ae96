//! Exact solver and axiom checker for participatory funding coordination:
//! agents with budgets and approval sets jointly fund indivisible, priced
//! projects.
//!
//! * [`model`]: instances, outcomes, utilities and the JSON wire format.
//! * [`feasibility`]: flow and closed-form tests for fundable project sets.
//! * [`search`]: exhaustive enumeration of feasible sets.
//! * [`axioms`]: verdict-with-witness checkers for every outcome axiom.
//! * [`rules`]: UTIL / EGAL / NASH, optionally constrained to MR or IMP.
//! * [`gen`] and [`experiments`]: seeded instance generators and the
//!   welfare-ratio study.

pub mod axioms;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod feasibility;
pub mod fixtures;
pub mod flow;
pub mod gen;
pub mod model;
pub mod rules;
pub mod search;

pub use error::{PfcError, Result};
pub use model::{Instance, Money, Outcome, PaymentMatrix, ProjectSet};
