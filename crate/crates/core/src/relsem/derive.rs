//! Goal-directed derivability, independent of the bottom-up engine.
//!
//! Environments are split in every possible way and, at applications, the
//! argument multiset is guessed among all multisets of the universe.

use std::collections::HashMap;

use super::arena::{Arena, TyId};
use super::engine::{env_single, env_sum, Env, Rules};
use crate::syntax::{BangTerm, Var, VarRef};

pub(crate) struct Search<'a> {
    a: &'a Arena,
    rules: Rules,
    nfree: u32,
    free: HashMap<&'a str, u32>,
    memo: HashMap<(*const BangTerm, Env, TyId), bool>,
}

impl<'a> Search<'a> {
    pub(crate) fn new(a: &'a Arena, rules: Rules, vars: &'a [crate::syntax::Name]) -> Self {
        let free = vars.iter().enumerate().map(|(i, v)| (&**v, i as u32)).collect();
        Search { a, rules, nfree: vars.len() as u32, free, memo: HashMap::new() }
    }

    pub(crate) fn derivable(&mut self, t: &BangTerm, env: &Env, ty: TyId) -> bool {
        self.go(t, 0, env, ty)
    }

    fn slot(&self, v: &Var, level: u32) -> u32 {
        match &v.0 {
            VarRef::Free(n) => self.free[&**n],
            VarRef::Bound(i) => self.nfree + level - 1 - i,
        }
    }

    fn go(&mut self, t: &BangTerm, level: u32, env: &Env, ty: TyId) -> bool {
        let key = (t as *const BangTerm, env.clone(), ty);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = self.rule(t, level, env, ty);
        self.memo.insert(key, r);
        r
    }

    fn rule(&mut self, t: &BangTerm, level: u32, env: &Env, ty: TyId) -> bool {
        let a = self.a;
        match t {
            BangTerm::Var(v) => {
                let slot = self.slot(v, level);
                let wanted = match self.rules {
                    Rules::Bang | Rules::Cbn => {
                        let Some(single) = a.mset(&mut [ty]) else { return false };
                        single
                    }
                    Rules::Cbv | Rules::CbvMacro => {
                        if !a.is_mset(ty) {
                            return false;
                        }
                        ty
                    }
                };
                **env == *env_single(a, slot, wanted)
            }
            BangTerm::Lam(_, body) => {
                let slot = self.nfree + level;
                match self.rules {
                    Rules::Bang | Rules::Cbn => {
                        let Some((src, tgt)) = a.as_arrow(ty) else { return false };
                        let Some(e) = env_sum(a, env, &env_single(a, slot, src)) else { return false };
                        self.go(body, level + 1, &e, tgt)
                    }
                    Rules::Cbv | Rules::CbvMacro => {
                        let Some(elems) = a.elems(ty) else { return false };
                        let mut goals = Vec::new();
                        for &el in elems {
                            let Some((src, tgt)) = a.as_arrow(el) else { return false };
                            if self.rules == Rules::Cbv && !a.is_mset(tgt) {
                                return false;
                            }
                            goals.push((src, tgt));
                        }
                        self.split_all(env, &goals, &mut |s, part, (src, tgt)| match env_sum(
                            a,
                            part,
                            &env_single(a, slot, src),
                        ) {
                            Some(e) => s.go(body, level + 1, &e, tgt),
                            None => false,
                        })
                    }
                }
            }
            BangTerm::Der(b) => {
                let Some(single) = a.mset(&mut [ty]) else { return false };
                self.go(b, level, env, single)
            }
            BangTerm::Bang(b) => {
                let Some(elems) = a.elems(ty) else { return false };
                let goals: Vec<TyId> = elems.to_vec();
                self.split_all(env, &goals, &mut |s, part, beta| s.go(b, level, part, beta))
            }
            BangTerm::App(f, x) => {
                for &m in &a.all_msets {
                    let fun_ty = match self.rules {
                        Rules::Bang | Rules::Cbn => a.arrow(m, ty),
                        Rules::Cbv | Rules::CbvMacro => {
                            if self.rules == Rules::Cbv && !a.is_mset(ty) {
                                return false;
                            }
                            a.arrow(m, ty).and_then(|arr| a.mset(&mut [arr]))
                        }
                    };
                    let Some(fun_ty) = fun_ty else { continue };
                    for (e1, e2) in splits(a, env) {
                        if !self.go(f, level, &e1, fun_ty) {
                            continue;
                        }
                        let ok = match self.rules {
                            Rules::Cbn => {
                                let goals = a.elems(m).expect("multiset").to_vec();
                                self.split_all(&e2, &goals, &mut |s, part, alpha| s.go(x, level, part, alpha))
                            }
                            _ => self.go(x, level, &e2, m),
                        };
                        if ok {
                            return true;
                        }
                    }
                }
                false
            }
        }
    }

    /// Whether `env` splits into one part per goal with `check` holding on
    /// every part.
    fn split_all<G: Copy>(
        &mut self,
        env: &Env,
        goals: &[G],
        check: &mut dyn FnMut(&mut Self, &Env, G) -> bool,
    ) -> bool {
        let Some((&g, rest)) = goals.split_first() else {
            return env.is_empty();
        };
        if rest.is_empty() {
            return check(self, env, g);
        }
        for (part, remaining) in splits(self.a, env) {
            if check(self, &part, g) && self.split_all(&remaining, rest, check) {
                return true;
            }
        }
        false
    }
}

type Entry = (u32, TyId);

/// Every way of writing `env` as a sum of two environments.
pub(crate) fn splits(a: &Arena, env: &Env) -> Vec<(Env, Env)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for &(slot, m) in env.iter() {
        let parts = mset_splits(a, m);
        let mut next = Vec::with_capacity(out.len() * parts.len());
        for (l, r) in &out {
            for &(x, y) in &parts {
                let (mut l2, mut r2): (Vec<Entry>, Vec<Entry>) = (l.clone(), r.clone());
                if x != a.empty {
                    l2.push((slot, x));
                }
                if y != a.empty {
                    r2.push((slot, y));
                }
                next.push((l2, r2));
            }
        }
        out = next;
    }
    out.into_iter().map(|(l, r)| (l.into_boxed_slice(), r.into_boxed_slice())).collect()
}

// Distinct pairs (x, y) of multisets with x + y = m.
fn mset_splits(a: &Arena, m: TyId) -> Vec<(TyId, TyId)> {
    let elems = a.elems(m).expect("environment entries are multisets");
    let mut distinct: Vec<(TyId, usize)> = Vec::new();
    for &e in elems {
        match distinct.last_mut() {
            Some((x, c)) if *x == e => *c += 1,
            _ => distinct.push((e, 1)),
        }
    }
    let mut out = Vec::new();
    let mut counts = vec![0usize; distinct.len()];
    loop {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (k, &(e, c)) in distinct.iter().enumerate() {
            left.extend(std::iter::repeat_n(e, counts[k]));
            right.extend(std::iter::repeat_n(e, c - counts[k]));
        }
        let x = a.mset(&mut left).expect("sub-multisets stay in bound");
        let y = a.mset(&mut right).expect("sub-multisets stay in bound");
        out.push((x, y));
        // next count vector
        let mut k = 0;
        loop {
            if k == distinct.len() {
                return out;
            }
            if counts[k] < distinct[k].1 {
                counts[k] += 1;
                break;
            }
            counts[k] = 0;
            k += 1;
        }
    }
}
