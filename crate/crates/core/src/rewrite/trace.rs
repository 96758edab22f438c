use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::Redex;

/// Why a reduction stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Normal,
    BudgetExhausted,
    Cycle { period: usize },
}

/// One contraction and the term it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step<T> {
    pub redex: Redex,
    pub result: T,
}

/// A recorded reduction sequence together with the reason it stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace<T> {
    pub initial: T,
    pub steps: Vec<Step<T>>,
    pub outcome: Outcome,
}

/// A reduction sequence with no stopping reason, e.g. one side of a join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation<T> {
    pub initial: T,
    pub steps: Vec<Step<T>>,
}

impl<T> Trace<T> {
    pub fn last(&self) -> &T {
        self.steps.last().map_or(&self.initial, |s| &s.result)
    }
}

impl<T> Derivation<T> {
    pub fn last(&self) -> &T {
        self.steps.last().map_or(&self.initial, |s| &s.result)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl<T: fmt::Display> Serialize for Step<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Step", 3)?;
        st.serialize_field("path", &self.redex.position)?;
        st.serialize_field("kind", &self.redex.kind)?;
        st.serialize_field("result", &self.result.to_string())?;
        st.end()
    }
}

impl<T: fmt::Display> Serialize for Trace<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Trace", 3)?;
        st.serialize_field("initial", &self.initial.to_string())?;
        st.serialize_field("steps", &self.steps)?;
        st.serialize_field("outcome", &self.outcome)?;
        st.end()
    }
}

impl<T: fmt::Display> Serialize for Derivation<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Derivation", 2)?;
        st.serialize_field("initial", &self.initial.to_string())?;
        st.serialize_field("steps", &self.steps)?;
        st.end()
    }
}

fn write_steps<T: fmt::Display>(f: &mut fmt::Formatter<'_>, initial: &T, steps: &[Step<T>]) -> fmt::Result {
    writeln!(f, "{initial}")?;
    for st in steps {
        writeln!(f, "  -{}-> {}   [at {}]", st.redex.kind, st.result, st.redex.position)?;
    }
    Ok(())
}

impl<T: fmt::Display> fmt::Display for Trace<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(f, &self.initial, &self.steps)?;
        match self.outcome {
            Outcome::Normal => write!(f, "normal after {} step(s)", self.steps.len()),
            Outcome::BudgetExhausted => write!(f, "budget exhausted after {} step(s)", self.steps.len()),
            Outcome::Cycle { period } => write!(f, "cycle of period {period} after {} step(s)", self.steps.len()),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Derivation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(f, &self.initial, &self.steps)
    }
}
