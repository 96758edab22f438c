//! The bang calculus: a λ-calculus with boxes (`!T`) and derelictions
//! (`der T`) into which both call-by-name and call-by-value λ-calculi embed.
//!
//! * [`syntax`]: terms, parsing, printing, substitution.
//! * [`rewrite`]: the v/d/b reductions, their ground restrictions, parallel
//!   reduction and developments, strategies, traces and joins.
//! * [`translate`]: the CbN and CbV translations, their image grammars and
//!   inverses, and checkers for simulation and preservation.
//! * [`relsem`]: the relational model as bounded type systems.
//! * [`harness`]: random terms, shrinking and the property suites.

pub mod error;
pub mod harness;
pub mod relsem;
pub mod rewrite;
pub mod syntax;
pub mod translate;

pub use error::{Error, Result};
