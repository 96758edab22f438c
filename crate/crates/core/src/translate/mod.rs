//! The call-by-name and call-by-value translations of the λ-calculus into
//! the bang calculus, their images, and their inverses.

mod simulation;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewrite::{join, Join, B, BETA, BETAV, V};
use crate::syntax::{BangTerm, LambdaTerm};

pub use simulation::{check_simulation, Direction, SimMode, SimOptions, SimulationReport, Verdict};

/// CbN: every argument is boxed.
pub fn cbn(t: &LambdaTerm) -> BangTerm {
    fn go(t: &BangTerm) -> BangTerm {
        match t {
            BangTerm::Var(_) => t.clone(),
            BangTerm::Lam(n, b) => BangTerm::Lam(n.clone(), Box::new(go(b))),
            BangTerm::App(f, a) => BangTerm::app(go(f), BangTerm::bang(go(a))),
            BangTerm::Der(_) | BangTerm::Bang(_) => unreachable!("λ-terms have no der or ! nodes"),
        }
    }
    go(t.as_bang())
}

/// CbV: values are boxed, the function of every application is derelicted.
pub fn cbv(t: &LambdaTerm) -> BangTerm {
    fn go(t: &BangTerm) -> BangTerm {
        match t {
            BangTerm::Var(_) => BangTerm::bang(t.clone()),
            BangTerm::Lam(n, b) => BangTerm::bang(BangTerm::Lam(n.clone(), Box::new(go(b)))),
            BangTerm::App(f, a) => BangTerm::app(BangTerm::der(go(f)), go(a)),
            BangTerm::Der(_) | BangTerm::Bang(_) => unreachable!("λ-terms have no der or ! nodes"),
        }
    }
    go(t.as_bang())
}

/// The target grammars of the two translations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageClass {
    /// `T ::= x | \x. T | T !T`
    CbnImage,
    /// `M ::= !U | der M N | U M`
    CbvClosure,
    /// `U ::= x | \x. M`
    CbvValue,
}

pub fn classify(t: &BangTerm, cls: ImageClass) -> bool {
    match cls {
        ImageClass::CbnImage => is_cbn(t),
        ImageClass::CbvClosure => is_cbv_closure(t),
        ImageClass::CbvValue => is_cbv_value(t),
    }
}

fn is_cbn(t: &BangTerm) -> bool {
    match t {
        BangTerm::Var(_) => true,
        BangTerm::Lam(_, b) => is_cbn(b),
        BangTerm::App(f, a) => match &**a {
            BangTerm::Bang(s) => is_cbn(f) && is_cbn(s),
            _ => false,
        },
        BangTerm::Der(_) | BangTerm::Bang(_) => false,
    }
}

fn is_cbv_value(t: &BangTerm) -> bool {
    match t {
        BangTerm::Var(_) => true,
        BangTerm::Lam(_, b) => is_cbv_closure(b),
        _ => false,
    }
}

fn is_cbv_closure(t: &BangTerm) -> bool {
    match t {
        BangTerm::Bang(u) => is_cbv_value(u),
        BangTerm::App(f, a) => match &**f {
            BangTerm::Der(m) => is_cbv_closure(m) && is_cbv_closure(a),
            _ => is_cbv_value(f) && is_cbv_closure(a),
        },
        _ => false,
    }
}

/// The unique `t` with `cbn(t) = T`.
pub fn cbn_inverse(t: &BangTerm) -> Result<LambdaTerm> {
    fn go(t: &BangTerm) -> Option<BangTerm> {
        Some(match t {
            BangTerm::Var(_) => t.clone(),
            BangTerm::Lam(n, b) => BangTerm::Lam(n.clone(), Box::new(go(b)?)),
            BangTerm::App(f, a) => match &**a {
                BangTerm::Bang(s) => BangTerm::app(go(f)?, go(s)?),
                _ => return None,
            },
            BangTerm::Der(_) | BangTerm::Bang(_) => return None,
        })
    }
    go(t).map(LambdaTerm::from_bang_unchecked).ok_or(Error::NotInImage("CbN"))
}

/// The forgetful map, defined on the CbV closure and value grammars: erases
/// boxes and derelictions.
pub fn forgetful(t: &BangTerm) -> Result<LambdaTerm> {
    if !is_cbv_closure(t) && !is_cbv_value(t) {
        return Err(Error::NotInImage("CbV"));
    }
    fn go(t: &BangTerm) -> BangTerm {
        match t {
            BangTerm::Var(_) => t.clone(),
            BangTerm::Lam(n, b) => BangTerm::Lam(n.clone(), Box::new(go(b))),
            BangTerm::Bang(u) => go(u),
            BangTerm::App(f, a) => match &**f {
                BangTerm::Der(m) => BangTerm::app(go(m), go(a)),
                _ => BangTerm::app(go(f), go(a)),
            },
            BangTerm::Der(_) => unreachable!("grammar checked"),
        }
    }
    Ok(LambdaTerm::from_bang_unchecked(go(t)))
}

/// The unique `t` with `cbv(t) = T`. Since the forgetful map is a left
/// inverse of `cbv`, the only candidate is `forgetful(T)`.
pub fn cbv_inverse(t: &BangTerm) -> Result<LambdaTerm> {
    let s = forgetful(t)?;
    if &cbv(&s) == t {
        Ok(s)
    } else {
        Err(Error::NotInImage("CbV"))
    }
}

/// Which translation a check concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Translation {
    Cbn,
    Cbv,
}

impl Translation {
    pub fn apply(self, t: &LambdaTerm) -> BangTerm {
        match self {
            Translation::Cbn => cbn(t),
            Translation::Cbv => cbv(t),
        }
    }
}

/// Given `t` and `u` joinable on the λ-side (β for CbN, βv for CbV), finds
/// a join of their translations (by v for CbN, by b for CbV).
///
/// Both searches are bounded by `budget`; failing either is reported as
/// inconclusive, never as a refutation.
pub fn check_equiv_preservation(
    t: &LambdaTerm,
    u: &LambdaTerm,
    mode: Translation,
    budget: usize,
) -> Result<Join<BangTerm>> {
    let premise = match mode {
        Translation::Cbn => join(&BETA, t, u, budget),
        Translation::Cbv => join(&BETAV, t, u, budget),
    };
    if premise.is_none() {
        return Err(Error::Inconclusive { budget, what: "the λ-terms are not joinable within budget".into() });
    }
    let (tt, tu) = (mode.apply(t), mode.apply(u));
    let found = match mode {
        Translation::Cbn => join(&V, &tt, &tu, budget),
        Translation::Cbv => join(&B, &tt, &tu, budget),
    };
    found.ok_or_else(|| Error::Inconclusive { budget, what: "the translations are not joinable within budget".into() })
}
