//! Bottom-up computation of bounded judgement sets.
//!
//! Every subterm gets the full set of its in-bound `(environment, type)`
//! pairs; rules combine the sets of the immediate subterms. Variables are
//! numbered slots: free variables first, then one slot per binder.

use std::collections::{HashMap, HashSet};

use super::arena::{Arena, TyId};
use crate::syntax::{BangTerm, Name, Var, VarRef};

/// Sorted by slot; slots mapped to `[]` are left out.
pub(crate) type Env = Box<[(u32, TyId)]>;
pub(crate) type Judgements = Vec<(Env, TyId)>;

pub(crate) fn env_sum(a: &Arena, x: &Env, y: &Env) -> Option<Env> {
    if x.is_empty() {
        return Some(y.clone());
    }
    if y.is_empty() {
        return Some(x.clone());
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => {
                out.push(x[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(y[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((x[i].0, a.sum(x[i].1, y[j].1)?));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    Some(out.into_boxed_slice())
}

pub(crate) fn env_single(a: &Arena, slot: u32, m: TyId) -> Env {
    if m == a.empty {
        Box::new([])
    } else {
        Box::new([(slot, m)])
    }
}

/// Splits off the multiset of `slot`.
pub(crate) fn env_take(a: &Arena, e: &Env, slot: u32) -> (Env, TyId) {
    match e.iter().position(|(s, _)| *s == slot) {
        Some(i) => {
            let m = e[i].1;
            let rest: Vec<_> = e.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, p)| *p).collect();
            (rest.into_boxed_slice(), m)
        }
        None => (e.clone(), a.empty),
    }
}

/// Which rules are used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rules {
    /// The bang calculus system, on bang terms.
    Bang,
    /// The CbV system on λ-terms: results of applications must be multisets.
    Cbv,
    /// The derived CbV rules: the CbV system without that restriction,
    /// computing the bang interpretation of the CbV translation.
    CbvMacro,
    /// The CbN multiset system on λ-terms.
    Cbn,
}

pub(crate) struct Engine<'a> {
    pub(crate) a: &'a Arena,
    rules: Rules,
    free: HashMap<Name, u32>,
    next: u32,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(a: &'a Arena, rules: Rules, vars: &[Name]) -> Self {
        let free = vars.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        Engine { a, rules, free, next: vars.len() as u32 }
    }

    pub(crate) fn run(&mut self, t: &BangTerm) -> Judgements {
        self.go(t, &mut Vec::new())
    }

    fn slot(&self, v: &Var, scope: &[u32]) -> u32 {
        match &v.0 {
            VarRef::Free(n) => self.free[n],
            VarRef::Bound(i) => scope[scope.len() - 1 - *i as usize],
        }
    }

    fn go(&mut self, t: &BangTerm, scope: &mut Vec<u32>) -> Judgements {
        let a = self.a;
        let mut out: HashSet<(Env, TyId)> = HashSet::new();
        match t {
            BangTerm::Var(v) => {
                let slot = self.slot(v, scope);
                match self.rules {
                    Rules::Bang | Rules::Cbn => {
                        for &(alpha, single) in &a.singletons {
                            out.insert((env_single(a, slot, single), alpha));
                        }
                    }
                    Rules::Cbv | Rules::CbvMacro => {
                        for &m in &a.all_msets {
                            out.insert((env_single(a, slot, m), m));
                        }
                    }
                }
            }
            BangTerm::Lam(_, body) => {
                let slot = self.next;
                self.next += 1;
                scope.push(slot);
                let inner = self.go(body, scope);
                scope.pop();
                let abstracted: Judgements = inner
                    .iter()
                    .filter_map(|(e, ty)| {
                        let (rest, m) = env_take(a, e, slot);
                        a.arrow(m, *ty).map(|arr| (rest, arr))
                    })
                    .collect();
                match self.rules {
                    Rules::Bang | Rules::Cbn => out.extend(abstracted),
                    // a CbV abstraction is a value: it is typed by a multiset of arrows
                    Rules::Cbv | Rules::CbvMacro => out.extend(promote(a, &abstracted)),
                }
            }
            BangTerm::App(f, x) => {
                let jf = self.go(f, scope);
                let jx = self.go(x, scope);
                let mut by_type: HashMap<TyId, Vec<&Env>> = HashMap::new();
                for (e, ty) in &jx {
                    by_type.entry(*ty).or_default().push(e);
                }
                for (e1, ty) in &jf {
                    match self.rules {
                        Rules::Bang => {
                            let Some((src, tgt)) = a.as_arrow(*ty) else { continue };
                            for e2 in by_type.get(&src).into_iter().flatten() {
                                if let Some(e) = env_sum(a, e1, e2) {
                                    out.insert((e, tgt));
                                }
                            }
                        }
                        Rules::Cbv | Rules::CbvMacro => {
                            let Some(&[only]) = a.elems(*ty) else { continue };
                            let Some((src, tgt)) = a.as_arrow(only) else { continue };
                            if self.rules == Rules::Cbv && !a.is_mset(tgt) {
                                continue;
                            }
                            for e2 in by_type.get(&src).into_iter().flatten() {
                                if let Some(e) = env_sum(a, e1, e2) {
                                    out.insert((e, tgt));
                                }
                            }
                        }
                        Rules::Cbn => {
                            let Some((src, tgt)) = a.as_arrow(*ty) else { continue };
                            let wanted = a.elems(src).expect("arrow sources are multisets");
                            let mut acc = Vec::new();
                            product(a, wanted, &by_type, e1.clone(), &mut acc);
                            out.extend(acc.into_iter().map(|e| (e, tgt)));
                        }
                    }
                }
            }
            BangTerm::Der(b) => {
                for (e, ty) in self.go(b, scope) {
                    if let Some(&[alpha]) = a.elems(ty) {
                        out.insert((e, alpha));
                    }
                }
            }
            BangTerm::Bang(b) => {
                let inner = self.go(b, scope);
                out.extend(promote(a, &inner));
            }
        }
        out.into_iter().collect()
    }
}

// One judgement of the argument per wanted type, environments summed.
fn product(a: &Arena, wanted: &[TyId], by_type: &HashMap<TyId, Vec<&Env>>, acc: Env, out: &mut Vec<Env>) {
    let Some((first, rest)) = wanted.split_first() else {
        out.push(acc);
        return;
    };
    for e in by_type.get(first).into_iter().flatten() {
        if let Some(s) = env_sum(a, &acc, e) {
            product(a, rest, by_type, s, out);
        }
    }
}

/// The box rule: any multiset (up to the width bound) of judgements,
/// environments summed and types collected.
pub(crate) fn promote(a: &Arena, j: &[(Env, TyId)]) -> Judgements {
    let mut items: Vec<&(Env, TyId)> = j.iter().collect();
    items.sort_by_key(|(_, ty)| a.size(*ty));
    let mut out = HashSet::new();
    out.insert((Env::default(), a.empty));
    let mut types = Vec::new();
    promote_rec(a, &items, 0, Env::default(), &mut types, 1, &mut out);
    out.into_iter().collect()
}

fn promote_rec(
    a: &Arena,
    items: &[&(Env, TyId)],
    start: usize,
    env: Env,
    types: &mut Vec<TyId>,
    size: usize,
    out: &mut HashSet<(Env, TyId)>,
) {
    if types.len() == a.bound.max_width {
        return;
    }
    for i in start..items.len() {
        let (e, ty) = items[i];
        let s = size + a.size(*ty);
        if s > a.bound.budget {
            break;
        }
        let Some(env2) = env_sum(a, &env, e) else { continue };
        types.push(*ty);
        let mut sorted = types.clone();
        if let Some(m) = a.mset(&mut sorted) {
            out.insert((env2.clone(), m));
            promote_rec(a, items, i, env2, types, s, out);
        }
        types.pop();
    }
}
