//! The relational model, as bounded type systems.
//!
//! A [`Universe`] holds every type within a [`Bound`]. Interpretations are
//! sets of judgements whose derivations only use types of the universe, so
//! they are finite fragments of the (infinite) model.

mod arena;
mod checks;
mod derive;
mod engine;
mod types;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{BangTerm, LambdaTerm, Name};
use arena::{Arena, TyId};
use engine::{Engine, Env, Rules};

pub use arena::{count_types, MAX_UNIVERSE};
pub use checks::{
    check_cbv_inclusion, check_factorization_cbn, check_invariance, invariance_window, Factorization, InclusionReport,
    InvarianceReport, InvarianceVerdict, ReductPair, MAX_REDUCTS,
};
pub use types::{parse_type, Bound, RelType, TypeEnv, TypeMultiset};

/// Which interpretation to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// The bang calculus system, on bang terms.
    Psem,
    /// The CbV system, on λ-terms.
    Intv,
    /// The CbN multiset system, on λ-terms.
    IntnOracle,
}

/// Which type system a derivability query uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum System {
    Bang,
    Cbv,
    CbnOracle,
}

/// One element of an interpretation: the multisets of the listed variables
/// and the type of the term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Judgement {
    pub env: Vec<TypeMultiset>,
    #[serde(rename = "type")]
    pub ty: RelType,
}

/// A finite set of judgements over a fixed variable list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JudgementSet {
    pub vars: Vec<Name>,
    pub judgements: BTreeSet<Judgement>,
}

impl JudgementSet {
    pub fn len(&self) -> usize {
        self.judgements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.judgements.is_empty()
    }

    pub fn contains(&self, j: &Judgement) -> bool {
        self.judgements.contains(j)
    }

    /// Judgements of a closed term, as plain types.
    pub fn types(&self) -> impl Iterator<Item = &RelType> {
        self.judgements.iter().map(|j| &j.ty)
    }
}

/// Every type within a bound, interned, plus the engines that work on it.
pub struct Universe {
    arena: Arena,
}

pub(crate) type RawSet = HashSet<(Env, TyId)>;

fn names<S: AsRef<str>>(vars: &[S]) -> Result<Vec<Name>> {
    let out: Vec<Name> = vars.iter().map(|v| Name::from(v.as_ref())).collect();
    let distinct: HashSet<&Name> = out.iter().collect();
    if distinct.len() != out.len() {
        return Err(Error::Mismatch("the variable list has repetitions".into()));
    }
    Ok(out)
}

fn check_scope(t: &BangTerm, vars: &[Name]) -> Result<()> {
    match t.free_vars().into_iter().find(|x| !vars.contains(x)) {
        Some(x) => Err(Error::Mismatch(format!("free variable {x} is not in the variable list"))),
        None => Ok(()),
    }
}

fn require_lambda(t: &BangTerm) -> Result<()> {
    if t.is_lambda() {
        Ok(())
    } else {
        Err(Error::Mismatch("this system types λ-terms only".into()))
    }
}

impl Universe {
    /// Builds the universe; fails if the bound admits too many types.
    pub fn new(bound: Bound) -> Result<Universe> {
        Ok(Universe { arena: Arena::new(bound)? })
    }

    pub fn bound(&self) -> Bound {
        self.arena.bound
    }

    /// Number of types.
    pub fn len(&self) -> usize {
        self.arena.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arena.len() == 0
    }

    /// All types, in canonical order.
    pub fn types(&self) -> Vec<RelType> {
        let mut v: Vec<RelType> = (0..self.arena.len() as TyId).map(|i| self.arena.to_type(i)).collect();
        v.sort();
        v
    }

    pub(crate) fn raw(&self, rules: Rules, subject: &BangTerm, vars: &[Name]) -> Result<RawSet> {
        check_scope(subject, vars)?;
        if rules != Rules::Bang {
            require_lambda(subject)?;
        }
        if self.arena.len() == 0 {
            return Ok(RawSet::new());
        }
        Ok(Engine::new(&self.arena, rules, vars).run(subject).into_iter().collect())
    }

    pub(crate) fn publish(&self, raw: &RawSet, vars: &[Name]) -> JudgementSet {
        JudgementSet { vars: vars.to_vec(), judgements: raw.iter().map(|j| self.judgement(j, vars.len())).collect() }
    }

    pub(crate) fn judgement(&self, (env, ty): &(Env, TyId), nvars: usize) -> Judgement {
        let mut ms = vec![TypeMultiset::empty(); nvars];
        for &(slot, m) in env.iter() {
            ms[slot as usize] = self.arena.to_multiset(m);
        }
        Judgement { env: ms, ty: self.arena.to_type(*ty) }
    }

    /// The bounded interpretation of `subject` over `vars`, which must
    /// contain its free variables. `Intv` and `IntnOracle` need a λ-term.
    pub fn interpret<S: AsRef<str>>(&self, mode: Mode, subject: &BangTerm, vars: &[S]) -> Result<JudgementSet> {
        let vars = names(vars)?;
        let rules = match mode {
            Mode::Psem => Rules::Bang,
            Mode::Intv => Rules::Cbv,
            Mode::IntnOracle => Rules::Cbn,
        };
        Ok(self.publish(&self.raw(rules, subject, &vars)?, &vars))
    }

    /// The bang interpretation of `cbv(t)`, computed on the structure of
    /// `t` with the three derived CbV rules only.
    pub fn psem_cbv_macro<S: AsRef<str>>(&self, t: &LambdaTerm, vars: &[S]) -> Result<JudgementSet> {
        let vars = names(vars)?;
        Ok(self.publish(&self.raw(Rules::CbvMacro, t.as_bang(), &vars)?, &vars))
    }

    /// Whether `env |- subject : ty` has a derivation within the bound,
    /// decided by goal-directed search.
    pub fn derivable(&self, system: System, env: &TypeEnv, subject: &BangTerm, ty: &RelType) -> Result<bool> {
        let rules = match system {
            System::Bang => Rules::Bang,
            System::Cbv => Rules::Cbv,
            System::CbnOracle => Rules::Cbn,
        };
        if rules != Rules::Bang {
            require_lambda(subject)?;
        }
        let mut vars: BTreeSet<Name> = subject.free_vars();
        vars.extend(env.support().map(|(x, _)| x.clone()));
        let vars: Vec<Name> = vars.into_iter().collect();
        let a = &self.arena;
        let Some(ty) = a.lookup(ty) else { return Ok(false) };
        let mut e = Vec::new();
        for (i, x) in vars.iter().enumerate() {
            let m = env.get(x);
            if m.is_empty() {
                continue;
            }
            let Some(id) = a.lookup_mset(&m) else { return Ok(false) };
            e.push((i as u32, id));
        }
        let e: Env = e.into_boxed_slice();
        Ok(derive::Search::new(a, rules, &vars).derivable(subject, &e, ty))
    }
}

/// Every type within `bound`, each once, in canonical order.
pub fn enumerate_types(bound: Bound) -> Result<Vec<RelType>> {
    Ok(Universe::new(bound)?.types())
}

/// The bounded interpretation of `subject`; see [`Universe::interpret`].
pub fn interpret<S: AsRef<str>>(mode: Mode, subject: &BangTerm, vars: &[S], bound: Bound) -> Result<JudgementSet> {
    Universe::new(bound)?.interpret(mode, subject, vars)
}

/// Bounded derivability; see [`Universe::derivable`].
pub fn derivable(system: System, env: &TypeEnv, subject: &BangTerm, ty: &RelType, bound: Bound) -> Result<bool> {
    Universe::new(bound)?.derivable(system, env, subject, ty)
}
