//! Brute-force relational types and bottom-up derivations on named terms.

use std::collections::{BTreeMap, BTreeSet};

use bangcalc::relsem::{Bound, Judgement, RelType};

use super::N;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ty {
    /// Sorted elements.
    M(Vec<Ty>),
    A(Vec<Ty>, Box<Ty>),
}

impl Ty {
    pub fn size(&self) -> usize {
        match self {
            Ty::M(v) => 1 + v.iter().map(Ty::size).sum::<usize>(),
            Ty::A(v, r) => 2 + v.iter().map(Ty::size).sum::<usize>() + r.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Ty::M(v) => v.iter().map(Ty::depth).max().unwrap_or(0),
            Ty::A(v, r) => 1 + Ty::M(v.clone()).depth().max(r.depth()),
        }
    }

    pub fn width(&self) -> usize {
        match self {
            Ty::M(v) => v.iter().map(Ty::width).max().unwrap_or(0).max(v.len()),
            Ty::A(v, r) => Ty::M(v.clone()).width().max(r.width()),
        }
    }
}

fn sorted(mut v: Vec<Ty>) -> Vec<Ty> {
    v.sort();
    v
}

pub fn from_rel(t: &RelType) -> Ty {
    match t {
        RelType::Mset(m) => Ty::M(sorted(m.elems().iter().map(from_rel).collect())),
        RelType::Arrow(a, r) => Ty::A(sorted(a.elems().iter().map(from_rel).collect()), Box::new(from_rel(r))),
    }
}

/// Multisets (non-decreasing index sequences into `pool`) of at most `card`
/// elements whose sizes sum to exactly `total`.
fn msets(pool: &[Ty], total: usize, card: usize, start: usize, acc: &mut Vec<Ty>, out: &mut Vec<Vec<Ty>>) {
    if total == 0 {
        out.push(acc.clone());
        return;
    }
    if card == 0 {
        return;
    }
    for i in start..pool.len() {
        let s = pool[i].size();
        if s <= total {
            acc.push(pool[i].clone());
            msets(pool, total - s, card - 1, i, acc, out);
            acc.pop();
        }
    }
}

/// Every type within `b`, by increasing size.
pub fn all_types(b: Bound) -> Vec<Ty> {
    let mut pool: Vec<Ty> = Vec::new();
    for n in 1..=b.budget {
        let mut level = Vec::new();
        let mut out = Vec::new();
        msets(&pool, n - 1, b.max_width, 0, &mut Vec::new(), &mut out);
        level.extend(out.into_iter().map(|v| Ty::M(sorted(v))));
        for k in 0..n.saturating_sub(2) {
            let rest = n - 2 - k;
            let mut args = Vec::new();
            msets(&pool, k, b.max_width, 0, &mut Vec::new(), &mut args);
            for a in &args {
                for r in pool.iter().filter(|r| r.size() == rest) {
                    level.push(Ty::A(sorted(a.clone()), Box::new(r.clone())));
                }
            }
        }
        pool.extend(level.into_iter().filter(|t| t.depth() <= b.max_depth));
    }
    pool
}

/// Per-variable non-empty multisets.
pub type Env = BTreeMap<String, Vec<Ty>>;
pub type Jdg = (Env, Ty);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sys {
    Bang,
    Cbv,
    Cbn,
}

pub struct Oracle {
    pub types: Vec<Ty>,
    members: BTreeSet<Ty>,
}

fn sum(a: &Env, b: &Env) -> Env {
    let mut out = a.clone();
    for (x, m) in b {
        let e = out.entry(x.clone()).or_default();
        e.extend(m.iter().cloned());
        e.sort();
    }
    out
}

impl Oracle {
    pub fn new(b: Bound) -> Self {
        let types = all_types(b);
        let members = types.iter().cloned().collect();
        Oracle { types, members }
    }

    fn has(&self, t: &Ty) -> bool {
        self.members.contains(t)
    }

    fn env_ok(&self, e: &Env) -> bool {
        e.values().all(|m| self.has(&Ty::M(m.clone())))
    }

    fn multisets(&self) -> impl Iterator<Item = &Ty> {
        self.types.iter().filter(|t| matches!(t, Ty::M(_)))
    }

    /// All sums of at most `width` judgements drawn with repetition from
    /// `items`, as (summed env, sorted component list).
    fn bags<T: Clone + Ord>(&self, items: &[(Env, T)], width: usize) -> Vec<(Env, Vec<T>)> {
        let mut out = vec![(Env::new(), Vec::new())];
        let mut frontier = vec![(Env::new(), Vec::<T>::new(), 0usize)];
        for _ in 0..width {
            let mut next = Vec::new();
            for (e, v, start) in &frontier {
                for (i, (e2, t)) in items.iter().enumerate().skip(*start) {
                    let e3 = sum(e, e2);
                    if !self.env_ok(&e3) {
                        continue;
                    }
                    let mut v2 = v.clone();
                    v2.push(t.clone());
                    out.push((e3.clone(), v2.clone()));
                    next.push((e3, v2, i));
                }
            }
            frontier = next;
        }
        out
    }

    /// Every derivable judgement of `t`, over any environment.
    pub fn judgements(&self, sys: Sys, t: &N, width: usize) -> BTreeSet<Jdg> {
        let mut out = BTreeSet::new();
        match (sys, t) {
            (Sys::Bang | Sys::Cbn, N::Var(x)) => {
                for a in &self.types {
                    let m = vec![a.clone()];
                    if self.has(&Ty::M(m.clone())) {
                        out.insert((Env::from([(x.clone(), m)]), a.clone()));
                    }
                }
            }
            (Sys::Cbv, N::Var(x)) => {
                for a in self.multisets() {
                    let Ty::M(m) = a else { unreachable!() };
                    let env = if m.is_empty() { Env::new() } else { Env::from([(x.clone(), m.clone())]) };
                    out.insert((env, a.clone()));
                }
            }
            (Sys::Bang | Sys::Cbn, N::Lam(x, body)) => {
                for (mut env, b) in self.judgements(sys, body, width) {
                    let a = env.remove(x).unwrap_or_default();
                    let ty = Ty::A(a, Box::new(b));
                    if self.has(&ty) {
                        out.insert((env, ty));
                    }
                }
            }
            (Sys::Cbv, N::Lam(x, body)) => {
                let arrows: Vec<(Env, Ty)> = self
                    .judgements(sys, body, width)
                    .into_iter()
                    .filter_map(|(mut env, b)| {
                        let a = env.remove(x).unwrap_or_default();
                        let ty = Ty::A(a, Box::new(b));
                        self.has(&ty).then_some((env, ty))
                    })
                    .collect();
                for (env, v) in self.bags(&arrows, width) {
                    let ty = Ty::M(sorted(v));
                    if self.has(&ty) {
                        out.insert((env, ty));
                    }
                }
            }
            (Sys::Bang, N::App(f, a)) => {
                let fs = self.judgements(sys, f, width);
                let as_ = self.judgements(sys, a, width);
                for (g, ft) in &fs {
                    let Ty::A(src, res) = ft else { continue };
                    for (d, at) in &as_ {
                        if at == &Ty::M(src.clone()) {
                            let e = sum(g, d);
                            if self.env_ok(&e) {
                                out.insert((e, (**res).clone()));
                            }
                        }
                    }
                }
            }
            (Sys::Cbv, N::App(f, a)) => {
                let fs = self.judgements(sys, f, width);
                let as_ = self.judgements(sys, a, width);
                for (g, ft) in &fs {
                    let Ty::M(v) = ft else { continue };
                    // the result is a multiset, like every CbV type
                    let [Ty::A(src, res)] = v.as_slice() else { continue };
                    if !matches!(**res, Ty::M(_)) {
                        continue;
                    }
                    for (d, at) in &as_ {
                        if at == &Ty::M(src.clone()) {
                            let e = sum(g, d);
                            if self.env_ok(&e) {
                                out.insert((e, (**res).clone()));
                            }
                        }
                    }
                }
            }
            (Sys::Cbn, N::App(f, a)) => {
                let fs = self.judgements(sys, f, width);
                let as_: Vec<(Env, Ty)> = self.judgements(sys, a, width).into_iter().collect();
                let bags = self.bags(&as_, width);
                for (g, ft) in &fs {
                    let Ty::A(src, res) = ft else { continue };
                    for (d, v) in &bags {
                        if &sorted(v.clone()) == src {
                            let e = sum(g, d);
                            if self.env_ok(&e) {
                                out.insert((e, (**res).clone()));
                            }
                        }
                    }
                }
            }
            (Sys::Bang, N::Bang(body)) => {
                let items: Vec<(Env, Ty)> = self.judgements(sys, body, width).into_iter().collect();
                for (env, v) in self.bags(&items, width) {
                    let ty = Ty::M(sorted(v));
                    if self.has(&ty) {
                        out.insert((env, ty));
                    }
                }
            }
            (Sys::Bang, N::Der(body)) => {
                for (env, ty) in self.judgements(sys, body, width) {
                    if let Ty::M(v) = &ty {
                        if let [a] = v.as_slice() {
                            out.insert((env, a.clone()));
                        }
                    }
                }
            }
            _ => panic!("{sys:?} does not type {t:?}"),
        }
        out
    }
}

/// A library judgement over `vars`, in oracle form.
pub fn from_judgement(j: &Judgement, vars: &[String]) -> Jdg {
    let mut env = Env::new();
    for (x, m) in vars.iter().zip(&j.env) {
        if !m.is_empty() {
            env.insert(x.clone(), sorted(m.elems().iter().map(from_rel).collect()));
        }
    }
    (env, from_rel(&j.ty))
}
