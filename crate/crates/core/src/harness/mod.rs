//! Random term generation, shrinking and property suites.

mod gen;
mod shrink;

pub use gen::{gen_term, Calculus, GenConfig, TermGen};
pub use shrink::shrink;
mod suite;

pub use suite::{
    case_seed, find_property, properties, run_case, run_suite, Budgets, Failure, Property, PropertyReport, SuiteName,
    SuiteReport,
};
