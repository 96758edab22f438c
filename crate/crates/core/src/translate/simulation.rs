use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{cbn, cbn_inverse, cbv, cbv_inverse};
use crate::rewrite::{
    lambda_redexes, step, step_lambda, BangRelation, BangRule, LambdaRelation, Redex, RedexKind, Rewriting, Step, BETA,
    BETAV, BETAV_GROUND, BETA_GROUND,
};
use crate::syntax::{BangTerm, LambdaTerm, Path, Selector};

/// Which simulation statement is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    Cbn,
    CbnGround,
    Cbv,
    CbvGround,
}

impl SimMode {
    pub const ALL: [SimMode; 4] = [SimMode::Cbn, SimMode::CbnGround, SimMode::Cbv, SimMode::CbvGround];

    fn ground(self) -> bool {
        matches!(self, SimMode::CbnGround | SimMode::CbvGround)
    }

    fn is_cbn(self) -> bool {
        matches!(self, SimMode::Cbn | SimMode::CbnGround)
    }

    /// The λ-side relation.
    pub fn source_relation(self) -> LambdaRelation {
        match self {
            SimMode::Cbn => BETA,
            SimMode::CbnGround => BETA_GROUND,
            SimMode::Cbv => BETAV,
            SimMode::CbvGround => BETAV_GROUND,
        }
    }

    fn translate(self, t: &LambdaTerm) -> BangTerm {
        if self.is_cbn() {
            cbn(t)
        } else {
            cbv(t)
        }
    }

    fn bang(self, rule: BangRule) -> BangRelation {
        BangRelation::new(rule, self.ground())
    }

    /// Where the translation puts the subterm found at `p` in the source.
    fn map_path(self, p: &Path) -> Vec<Selector> {
        let mut out = Vec::new();
        for s in p.selectors() {
            match (self.is_cbn(), s) {
                (true, Selector::Arg) => out.extend([Selector::Arg, Selector::Body]),
                (true, s) => out.push(*s),
                (false, Selector::Fun) => out.extend([Selector::Fun, Selector::Body]),
                (false, Selector::Arg) => out.push(Selector::Arg),
                (false, Selector::Body) => out.extend([Selector::Body, Selector::Body]),
            }
        }
        out
    }
}

/// Soundness: a λ-step is matched on the bang side. Completeness: a bang
/// side step is matched by a λ-step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Soundness,
    Completeness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Matched,
    Mismatch(String),
}

/// One checked correspondence between a λ-step and bang-side steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub mode: SimMode,
    pub direction: Direction,
    pub source: LambdaTerm,
    /// The λ-step; for completeness, the one found to match (if any).
    pub source_step: Option<Step<LambdaTerm>>,
    /// Bang-side steps, starting from the translation of `source`.
    pub matched_steps: Vec<Step<BangTerm>>,
    pub verdict: Verdict,
}

impl SimulationReport {
    pub fn is_match(&self) -> bool {
        self.verdict == Verdict::Matched
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimOptions {
    /// Length of the strategy path followed in non-exhaustive mode.
    pub max_steps: usize,
    /// Check every reduct of every visited term instead of following the
    /// leftmost-outermost strategy.
    pub exhaustive: bool,
    /// Number of λ-terms visited in exhaustive mode.
    pub node_budget: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { max_steps: 10, exhaustive: false, node_budget: 50 }
    }
}

/// Checks that `t`, and the terms it reduces to, are simulated step by step.
///
/// Along the strategy only the contracted redex is checked for soundness;
/// in exhaustive mode every redex is. Completeness always covers every
/// bang-side step of every visited term.
pub fn check_simulation(t: &LambdaTerm, mode: SimMode, opts: SimOptions) -> Vec<SimulationReport> {
    let rel = mode.source_relation();
    let mut reports = Vec::new();
    if opts.exhaustive {
        let mut seen = HashSet::from([t.clone()]);
        let mut queue = VecDeque::from([t.clone()]);
        let mut visited = 0;
        while let Some(cur) = queue.pop_front() {
            if visited >= opts.node_budget {
                break;
            }
            visited += 1;
            for r in rel.redexes(&cur) {
                let rep = soundness(mode, &cur, &r);
                if let Some(st) = &rep.source_step {
                    if seen.insert(st.result.clone()) {
                        queue.push_back(st.result.clone());
                    }
                }
                reports.push(rep);
            }
            reports.extend(completeness(mode, &cur));
        }
    } else {
        let mut seen = HashSet::from([t.clone()]);
        let mut cur = t.clone();
        for i in 0..=opts.max_steps {
            reports.extend(completeness(mode, &cur));
            let Some(r) = rel.redexes(&cur).into_iter().next() else { break };
            if i == opts.max_steps {
                break;
            }
            let rep = soundness(mode, &cur, &r);
            let next = rep.source_step.as_ref().map(|s| s.result.clone());
            reports.push(rep);
            match next {
                Some(n) if seen.insert(n.clone()) => cur = n,
                _ => break,
            }
        }
    }
    reports
}

fn find(rel: BangRelation, t: &BangTerm, pos: &[Selector], kind: RedexKind) -> Option<Redex> {
    rel.redexes(t).into_iter().find(|r| r.kind == kind && r.position.selectors() == pos)
}

fn soundness(mode: SimMode, t: &LambdaTerm, r: &Redex) -> SimulationReport {
    let target = step_lambda(t, r).expect("enumerated redexes contract");
    let mut rep = SimulationReport {
        mode,
        direction: Direction::Soundness,
        source: t.clone(),
        source_step: Some(Step { redex: r.clone(), result: target.clone() }),
        matched_steps: Vec::new(),
        verdict: Verdict::Matched,
    };
    let expected = mode.translate(&target);
    let mut cur = mode.translate(t);
    let at = mode.map_path(&r.position);
    let mut plan = Vec::new();
    if !mode.is_cbn() {
        let mut fun = at.clone();
        fun.push(Selector::Fun);
        plan.push((BangRule::D, fun, RedexKind::D));
    }
    plan.push((BangRule::V, at, RedexKind::V));
    for (rule, pos, kind) in plan {
        let Some(redex) = find(mode.bang(rule), &cur, &pos, kind) else {
            rep.verdict = Verdict::Mismatch(format!("no {kind}-redex at {} in {cur}", Path::new(pos)));
            return rep;
        };
        cur = step(&cur, &redex).expect("enumerated redexes contract");
        rep.matched_steps.push(Step { redex, result: cur.clone() });
    }
    if cur != expected {
        rep.verdict = Verdict::Mismatch(format!("reached {cur}, expected {expected}"));
    }
    rep
}

fn completeness(mode: SimMode, t: &LambdaTerm) -> Vec<SimulationReport> {
    let start = mode.translate(t);
    let mut out = Vec::new();
    let mut sequences: Vec<Vec<Step<BangTerm>>> = Vec::new();
    if mode.is_cbn() {
        for (redex, s) in mode.bang(BangRule::B).reducts(&start) {
            sequences.push(vec![Step { redex, result: s }]);
        }
    } else {
        for (r1, m) in mode.bang(BangRule::D).reducts(&start) {
            for (r2, s) in mode.bang(BangRule::V).reducts(&m) {
                sequences.push(vec![Step { redex: r1.clone(), result: m.clone() }, Step { redex: r2, result: s }]);
            }
        }
    }
    for steps in sequences {
        let last = steps.last().expect("non-empty");
        let verdict = project(mode, t, last);
        let (source_step, verdict) = match verdict {
            Ok(st) => (Some(st), Verdict::Matched),
            Err(msg) => (None, Verdict::Mismatch(msg)),
        };
        out.push(SimulationReport {
            mode,
            direction: Direction::Completeness,
            source: t.clone(),
            source_step,
            matched_steps: steps,
            verdict,
        });
    }
    out
}

fn project(mode: SimMode, t: &LambdaTerm, last: &Step<BangTerm>) -> Result<Step<LambdaTerm>, String> {
    if last.redex.kind != RedexKind::V {
        return Err(format!("unexpected {}-step at {}", last.redex.kind, last.redex.position));
    }
    let inverse = if mode.is_cbn() { cbn_inverse(&last.result) } else { cbv_inverse(&last.result) };
    let target = inverse.map_err(|e| format!("{} leaves the image: {e}", last.result))?;
    lambda_redexes(t, mode.source_relation())
        .into_iter()
        .find(|r| {
            mode.map_path(&r.position) == last.redex.position.selectors()
                && step_lambda(t, r).is_ok_and(|s| s == target)
        })
        .map(|redex| Step { redex, result: target.clone() })
        .ok_or_else(|| format!("no λ-step from {t} to {target} at the matching position"))
}
