use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::engine::Rules;
use super::{names, Bound, Judgement, RawSet, RelType, Universe};
use crate::error::{Error, Result};
use crate::rewrite::{Rewriting, B};
use crate::syntax::{BangTerm, LambdaTerm};
use crate::translate::{cbn, cbv};

/// Outcome of comparing the bang interpretation of `cbn(t)` with the CbN
/// interpretation of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Factorization {
    Equal {
        judgements: usize,
    },
    /// The least judgement in one set and not in the other.
    Counterexample {
        judgement: Judgement,
        in_psem: bool,
    },
}

/// Outcome of comparing the CbV interpretation of `t` with the bang
/// interpretation of `cbv(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub inclusion_holds: bool,
    pub intv_size: usize,
    pub psem_size: usize,
    /// In the CbV interpretation but not in the bang one.
    pub missing: Vec<Judgement>,
    /// In the bang interpretation but not in the CbV one.
    pub strict_witnesses: Vec<Judgement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvarianceVerdict {
    /// Same judgements within the window.
    Equal,
    /// A judgement of the term that its reduct lacks. Reduction never needs
    /// larger types, so this refutes invariance.
    Counterexample { judgement: Judgement },
    /// A judgement of the reduct that the term lacks within the bound. The
    /// term may need larger types for it.
    BoundLimited { judgement: Judgement },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductPair {
    pub reduct: BangTerm,
    pub steps: usize,
    pub verdict: InvarianceVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub term: BangTerm,
    /// Judgements compared.
    pub window: Bound,
    /// Types allowed in derivations.
    pub bound: Bound,
    pub reducts: Vec<ReductPair>,
}

impl InvarianceReport {
    pub fn all_equal(&self) -> bool {
        self.reducts.iter().all(|r| r.verdict == InvarianceVerdict::Equal)
    }

    pub fn has_counterexample(&self) -> bool {
        self.reducts.iter().any(|r| matches!(r.verdict, InvarianceVerdict::Counterexample { .. }))
    }
}

impl Judgement {
    /// Whether the type and every environment multiset lie within `b`.
    pub fn within(&self, b: &Bound) -> bool {
        self.ty.within(b) && self.env.iter().all(|m| RelType::Mset(m.clone()).within(b))
    }
}

/// The default window for a derivation bound: a redex can need types about
/// twice as large as its contractum.
pub fn invariance_window(bound: Bound) -> Bound {
    Bound::new(bound.max_depth, bound.max_width, bound.budget.saturating_sub(3) / 2)
}

/// Most reducts examined per term by [`Universe::check_invariance`].
pub const MAX_REDUCTS: usize = 16;

impl Universe {
    fn least_difference(&self, x: &RawSet, y: &RawSet, nvars: usize) -> Option<Judgement> {
        x.difference(y).map(|j| self.judgement(j, nvars)).min()
    }

    pub fn check_factorization_cbn<S: AsRef<str>>(&self, t: &LambdaTerm, vars: &[S]) -> Result<Factorization> {
        let vars = names(vars)?;
        let ps = self.raw(Rules::Bang, &cbn(t), &vars)?;
        let on = self.raw(Rules::Cbn, t.as_bang(), &vars)?;
        let a = self.least_difference(&ps, &on, vars.len());
        let b = self.least_difference(&on, &ps, vars.len());
        Ok(match (a, b) {
            (None, None) => Factorization::Equal { judgements: ps.len() },
            (Some(j), None) => Factorization::Counterexample { judgement: j, in_psem: true },
            (None, Some(j)) => Factorization::Counterexample { judgement: j, in_psem: false },
            (Some(j), Some(k)) if j <= k => Factorization::Counterexample { judgement: j, in_psem: true },
            (_, Some(k)) => Factorization::Counterexample { judgement: k, in_psem: false },
        })
    }

    pub fn check_cbv_inclusion<S: AsRef<str>>(&self, t: &LambdaTerm, vars: &[S]) -> Result<InclusionReport> {
        let vars = names(vars)?;
        let iv = self.raw(Rules::Cbv, t.as_bang(), &vars)?;
        let ps = self.raw(Rules::Bang, &cbv(t), &vars)?;
        let sorted = |it: &mut dyn Iterator<Item = &(super::Env, super::TyId)>| {
            let mut v: Vec<Judgement> = it.map(|j| self.judgement(j, vars.len())).collect();
            v.sort();
            v
        };
        let missing = sorted(&mut iv.difference(&ps));
        let strict_witnesses = sorted(&mut ps.difference(&iv));
        Ok(InclusionReport {
            inclusion_holds: missing.is_empty(),
            intv_size: iv.len(),
            psem_size: ps.len(),
            missing,
            strict_witnesses,
        })
    }

    /// Compares the interpretation of `t` with those of its b-reducts
    /// within `steps` steps (at most [`MAX_REDUCTS`] of them, breadth-first).
    ///
    /// Derivations range over this universe; only judgements within
    /// `window` are compared.
    pub fn check_invariance<S: AsRef<str>>(
        &self,
        t: &BangTerm,
        steps: usize,
        vars: &[S],
        window: Bound,
    ) -> Result<InvarianceReport> {
        if !window.le(&self.bound()) {
            return Err(Error::Mismatch(format!("window {window} exceeds the bound {}", self.bound())));
        }
        let vars = names(vars)?;
        let here = self.raw(Rules::Bang, t, &vars)?;
        let least = |x: &RawSet, y: &RawSet| -> Option<Judgement> {
            x.difference(y).map(|j| self.judgement(j, vars.len())).filter(|j| j.within(&window)).min()
        };
        let mut out = Vec::new();
        for (s, k) in reducts_within(t, steps) {
            let there = self.raw(Rules::Bang, &s, &vars)?;
            let verdict = if let Some(j) = least(&here, &there) {
                InvarianceVerdict::Counterexample { judgement: j }
            } else if let Some(j) = least(&there, &here) {
                InvarianceVerdict::BoundLimited { judgement: j }
            } else {
                InvarianceVerdict::Equal
            };
            out.push(ReductPair { reduct: s, steps: k, verdict });
        }
        Ok(InvarianceReport { term: t.clone(), window, bound: self.bound(), reducts: out })
    }
}

/// Distinct b-reducts of `t` in at most `steps` steps, `t` excluded, with
/// their distance, breadth-first.
pub(crate) fn reducts_within(t: &BangTerm, steps: usize) -> Vec<(BangTerm, usize)> {
    let mut seen: HashSet<BangTerm> = HashSet::from([t.clone()]);
    let mut queue = VecDeque::from([(t.clone(), 0usize)]);
    let mut out = Vec::new();
    while let Some((cur, d)) = queue.pop_front() {
        if d == steps {
            continue;
        }
        for (_, s) in B.reducts(&cur) {
            if out.len() >= MAX_REDUCTS {
                return out;
            }
            if seen.insert(s.clone()) {
                out.push((s.clone(), d + 1));
                queue.push_back((s, d + 1));
            }
        }
    }
    out
}

/// See [`Universe::check_factorization_cbn`].
pub fn check_factorization_cbn<S: AsRef<str>>(t: &LambdaTerm, vars: &[S], bound: Bound) -> Result<Factorization> {
    Universe::new(bound)?.check_factorization_cbn(t, vars)
}

/// See [`Universe::check_cbv_inclusion`].
pub fn check_cbv_inclusion<S: AsRef<str>>(t: &LambdaTerm, vars: &[S], bound: Bound) -> Result<InclusionReport> {
    Universe::new(bound)?.check_cbv_inclusion(t, vars)
}

/// See [`Universe::check_invariance`]; the window is
/// [`invariance_window`] of `bound`.
pub fn check_invariance<S: AsRef<str>>(
    t: &BangTerm,
    steps: usize,
    vars: &[S],
    bound: Bound,
) -> Result<InvarianceReport> {
    Universe::new(bound)?.check_invariance(t, steps, vars, invariance_window(bound))
}
