//! Reduction in the bang calculus and in the λ-calculus.
//!
//! Redexes are addressed by [`Path`]s. Enumeration is always in
//! leftmost-outermost order (pre-order, function before argument), so the
//! first redex of a list is the one the deterministic strategy contracts.

mod confluence;
mod lambda;
mod parallel;
mod trace;

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{BangTerm, LambdaTerm, Path, Selector};

pub use confluence::{closes_quasi_strongly, commutes_strongly, join, reach, Join};
pub use lambda::{lambda_redexes, step_lambda};
pub use parallel::{contract_selected, development, parallel_reducts, parallel_related};
pub use trace::{Derivation, Outcome, Step, Trace};

/// Which root-step a redex fires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RedexKind {
    /// `(\x. T) !R` to `T[R/x]`.
    V,
    /// `der !T` to `T`.
    D,
    /// `(\x. t) u` to `t[u/x]`.
    Beta,
    /// `(\x. t) v` to `t[v/x]` with `v` a variable or an abstraction.
    Betav,
}

impl fmt::Display for RedexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RedexKind::V => "v",
            RedexKind::D => "d",
            RedexKind::Beta => "beta",
            RedexKind::Betav => "betav",
        })
    }
}

/// A contractible subterm.
///
/// For bang terms `ground` means no `!` lies above the position. For λ-terms
/// it means the position lies in a ground context of the redex's calculus:
/// CbN ground contexts for `beta`, CbV ground contexts for `betav`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Redex {
    pub position: Path,
    pub kind: RedexKind,
    pub ground: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BangRule {
    V,
    D,
    /// The union of `v` and `d`.
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambdaRule {
    Beta,
    BetaV,
}

/// One of `->v`, `->d`, `->b` or, with `ground`, their restriction to
/// ground contexts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BangRelation {
    pub rule: BangRule,
    pub ground: bool,
}

/// `->beta` or `->betav`, optionally restricted to ground contexts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LambdaRelation {
    pub rule: LambdaRule,
    pub ground: bool,
}

impl BangRelation {
    pub const fn new(rule: BangRule, ground: bool) -> Self {
        BangRelation { rule, ground }
    }

    fn admits(&self, kind: RedexKind) -> bool {
        matches!(
            (self.rule, kind),
            (BangRule::V | BangRule::B, RedexKind::V) | (BangRule::D | BangRule::B, RedexKind::D)
        )
    }
}

impl LambdaRelation {
    pub const fn new(rule: LambdaRule, ground: bool) -> Self {
        LambdaRelation { rule, ground }
    }
}

/// A reduction relation of either calculus. The kind is always valid for
/// the calculus because each variant carries its own rule type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationSpec {
    Bang(BangRelation),
    Lambda(LambdaRelation),
}

impl RelationSpec {
    /// Builds a spec from a calculus name (`bang` or `lambda`) and a kind
    /// name (`v`, `d`, `b`, `beta`, `betav`).
    pub fn from_names(calculus: &str, kind: &str, ground: bool) -> Result<Self> {
        let spec = match (calculus, kind) {
            ("bang", "v") => RelationSpec::Bang(BangRelation::new(BangRule::V, ground)),
            ("bang", "d") => RelationSpec::Bang(BangRelation::new(BangRule::D, ground)),
            ("bang", "b") => RelationSpec::Bang(BangRelation::new(BangRule::B, ground)),
            ("lambda", "beta") => RelationSpec::Lambda(LambdaRelation::new(LambdaRule::Beta, ground)),
            ("lambda", "betav") => RelationSpec::Lambda(LambdaRelation::new(LambdaRule::BetaV, ground)),
            ("bang" | "lambda", _) => {
                return Err(Error::Mismatch(format!("relation {kind:?} is not defined for the {calculus} calculus")))
            }
            _ => return Err(Error::Mismatch(format!("unknown calculus {calculus:?}"))),
        };
        Ok(spec)
    }
}

/// A reduction relation over some term type, as needed by strategies,
/// traces and joins.
pub trait Rewriting: Copy + Send + Sync {
    type Term: Clone + Eq + Hash + fmt::Display + Send + Sync;

    /// Redexes of the relation in leftmost-outermost order.
    fn redexes(&self, t: &Self::Term) -> Vec<Redex>;

    /// Contracts one redex.
    fn step(&self, t: &Self::Term, r: &Redex) -> Result<Self::Term>;

    /// Every one-step reduct together with the redex producing it.
    fn reducts(&self, t: &Self::Term) -> Vec<(Redex, Self::Term)> {
        self.redexes(t)
            .into_iter()
            .map(|r| {
                let s = self.step(t, &r).expect("enumerated redexes contract");
                (r, s)
            })
            .collect()
    }

    fn is_normal(&self, t: &Self::Term) -> bool {
        self.redexes(t).is_empty()
    }
}

impl Rewriting for BangRelation {
    type Term = BangTerm;

    fn redexes(&self, t: &BangTerm) -> Vec<Redex> {
        redexes(t, *self)
    }

    fn step(&self, t: &BangTerm, r: &Redex) -> Result<BangTerm> {
        step(t, r)
    }
}

impl Rewriting for LambdaRelation {
    type Term = LambdaTerm;

    fn redexes(&self, t: &LambdaTerm) -> Vec<Redex> {
        lambda_redexes(t, *self)
    }

    fn step(&self, t: &LambdaTerm, r: &Redex) -> Result<LambdaTerm> {
        step_lambda(t, r)
    }
}

/// The kind of root-step applicable at `t`, if any.
pub(crate) fn root_kind(t: &BangTerm) -> Option<RedexKind> {
    match t {
        BangTerm::App(f, a) if matches!(**f, BangTerm::Lam(..)) && matches!(**a, BangTerm::Bang(_)) => {
            Some(RedexKind::V)
        }
        BangTerm::Der(b) if matches!(**b, BangTerm::Bang(_)) => Some(RedexKind::D),
        _ => None,
    }
}

/// Redexes of `rel` in `t`, leftmost-outermost first.
pub fn redexes(t: &BangTerm, rel: BangRelation) -> Vec<Redex> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    collect(t, rel, false, &mut path, &mut out);
    out
}

fn collect(t: &BangTerm, rel: BangRelation, under_box: bool, path: &mut Vec<Selector>, out: &mut Vec<Redex>) {
    if let Some(kind) = root_kind(t) {
        if rel.admits(kind) {
            out.push(Redex { position: Path::new(path.clone()), kind, ground: !under_box });
        }
    }
    match t {
        BangTerm::Var(_) => {}
        BangTerm::Lam(_, b) | BangTerm::Der(b) => {
            path.push(Selector::Body);
            collect(b, rel, under_box, path, out);
            path.pop();
        }
        BangTerm::Bang(b) => {
            if !rel.ground {
                path.push(Selector::Body);
                collect(b, rel, true, path, out);
                path.pop();
            }
        }
        BangTerm::App(f, a) => {
            path.push(Selector::Fun);
            collect(f, rel, under_box, path, out);
            path.pop();
            path.push(Selector::Arg);
            collect(a, rel, under_box, path, out);
            path.pop();
        }
    }
}

/// Contracts the v- or d-redex `r`.
pub fn step(t: &BangTerm, r: &Redex) -> Result<BangTerm> {
    let invalid = |reason: &str| Error::InvalidRedex { path: r.position.clone(), reason: reason.to_string() };
    let sub = t.subterm(&r.position).ok_or_else(|| invalid("no subterm at this path"))?;
    let contractum = match (r.kind, sub) {
        (RedexKind::V, BangTerm::App(f, a)) => match (&**f, &**a) {
            (BangTerm::Lam(_, body), BangTerm::Bang(arg)) => body.instantiate(arg),
            _ => return Err(invalid("expected (\\x. T) !R")),
        },
        (RedexKind::V, _) => return Err(invalid("expected (\\x. T) !R")),
        (RedexKind::D, BangTerm::Der(b)) => match &**b {
            BangTerm::Bang(inner) => (**inner).clone(),
            _ => return Err(invalid("expected der !T")),
        },
        (RedexKind::D, _) => return Err(invalid("expected der !T")),
        (RedexKind::Beta | RedexKind::Betav, _) => return Err(invalid("λ-calculus redex on a bang term")),
    };
    Ok(t.replace_at(&r.position, contractum).expect("path checked above"))
}

/// Whether `t` has no redex of `rel`.
pub fn is_normal<R: Rewriting>(rel: &R, t: &R::Term) -> bool {
    rel.is_normal(t)
}

/// Deterministic strategies. Only one is provided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    LeftmostOutermost,
}

/// Follows `strategy` from `t` for at most `max_steps` steps.
///
/// With `detect_cycles`, stops as soon as a term repeats (up to alpha) and
/// reports the distance between the two visits as the period.
pub fn reduce<R: Rewriting>(
    rel: &R,
    t: &R::Term,
    strategy: Strategy,
    max_steps: usize,
    detect_cycles: bool,
) -> Trace<R::Term> {
    let Strategy::LeftmostOutermost = strategy;
    let mut seen = std::collections::HashMap::new();
    if detect_cycles {
        seen.insert(t.clone(), 0usize);
    }
    let mut steps: Vec<Step<R::Term>> = Vec::new();
    let mut cur = t.clone();
    let outcome = loop {
        let Some(redex) = rel.redexes(&cur).into_iter().next() else {
            break Outcome::Normal;
        };
        if steps.len() >= max_steps {
            break Outcome::BudgetExhausted;
        }
        let next = rel.step(&cur, &redex).expect("enumerated redexes contract");
        steps.push(Step { redex, result: next.clone() });
        if detect_cycles {
            if let Some(&i) = seen.get(&next) {
                break Outcome::Cycle { period: steps.len() - i };
            }
            seen.insert(next.clone(), steps.len());
        }
        cur = next;
    };
    Trace { initial: t.clone(), steps, outcome }
}

/// Leftmost-outermost reduction of a λ-term with cycle detection.
pub fn reduce_lambda(t: &LambdaTerm, rel: LambdaRelation, max_steps: usize) -> Trace<LambdaTerm> {
    reduce(&rel, t, Strategy::LeftmostOutermost, max_steps, true)
}

pub const V: BangRelation = BangRelation::new(BangRule::V, false);
pub const D: BangRelation = BangRelation::new(BangRule::D, false);
pub const B: BangRelation = BangRelation::new(BangRule::B, false);
pub const V_GROUND: BangRelation = BangRelation::new(BangRule::V, true);
pub const D_GROUND: BangRelation = BangRelation::new(BangRule::D, true);
pub const B_GROUND: BangRelation = BangRelation::new(BangRule::B, true);
pub const BETA: LambdaRelation = LambdaRelation::new(LambdaRule::Beta, false);
pub const BETAV: LambdaRelation = LambdaRelation::new(LambdaRule::BetaV, false);
pub const BETA_GROUND: LambdaRelation = LambdaRelation::new(LambdaRule::Beta, true);
pub const BETAV_GROUND: LambdaRelation = LambdaRelation::new(LambdaRule::BetaV, true);
