//! Reference implementations on named terms, used as oracles.
//!
//! Nothing here calls into the library except the conversion to and from
//! the named syntax tree.

#![allow(dead_code)]

pub mod types;

use std::collections::{BTreeSet, HashMap};

use bangcalc::syntax::{Ast, BangTerm, LambdaTerm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum N {
    Var(String),
    Lam(String, Box<N>),
    App(Box<N>, Box<N>),
    Der(Box<N>),
    Bang(Box<N>),
}

use N::*;

pub fn var(x: &str) -> N {
    Var(x.to_string())
}

pub fn lam(x: &str, b: N) -> N {
    Lam(x.to_string(), Box::new(b))
}

pub fn app(f: N, a: N) -> N {
    App(Box::new(f), Box::new(a))
}

pub fn der(b: N) -> N {
    Der(Box::new(b))
}

pub fn bang(b: N) -> N {
    Bang(Box::new(b))
}

pub fn from_term(t: &BangTerm) -> N {
    fn go(a: &Ast) -> N {
        match a {
            Ast::Var { name } => var(name),
            Ast::Lam { binder, body } => lam(binder, go(body)),
            Ast::App { fun, arg } => app(go(fun), go(arg)),
            Ast::Der { body } => der(go(body)),
            Ast::Bang { body } => bang(go(body)),
        }
    }
    go(&Ast::from_term(t))
}

pub fn to_term(n: &N) -> BangTerm {
    fn go(n: &N) -> Ast {
        match n {
            Var(x) => Ast::Var { name: x.clone() },
            Lam(x, b) => Ast::Lam { binder: x.clone(), body: Box::new(go(b)) },
            App(f, a) => Ast::App { fun: Box::new(go(f)), arg: Box::new(go(a)) },
            Der(b) => Ast::Der { body: Box::new(go(b)) },
            Bang(b) => Ast::Bang { body: Box::new(go(b)) },
        }
    }
    go(n).to_term()
}

pub fn fv(n: &N) -> BTreeSet<String> {
    match n {
        Var(x) => BTreeSet::from([x.clone()]),
        Lam(x, b) => {
            let mut s = fv(b);
            s.remove(x);
            s
        }
        App(f, a) => {
            let mut s = fv(f);
            s.extend(fv(a));
            s
        }
        Der(b) | Bang(b) => fv(b),
    }
}

fn names(n: &N, out: &mut BTreeSet<String>) {
    match n {
        Var(x) => {
            out.insert(x.clone());
        }
        Lam(x, b) => {
            out.insert(x.clone());
            names(b, out);
        }
        App(f, a) => {
            names(f, out);
            names(a, out);
        }
        Der(b) | Bang(b) => names(b, out),
    }
}

fn fresh(avoid: &BTreeSet<String>, base: &str) -> String {
    (0..).map(|i| format!("{base}_{i}")).find(|c| !avoid.contains(c)).unwrap()
}

/// Capture-avoiding `t{s/x}`.
pub fn subst(t: &N, x: &str, s: &N) -> N {
    match t {
        Var(y) if y == x => s.clone(),
        Var(_) => t.clone(),
        Lam(y, _) if y == x => t.clone(),
        Lam(y, b) => {
            let fs = fv(s);
            if fs.contains(y) && fv(b).contains(x) {
                let mut avoid = fs;
                names(b, &mut avoid);
                avoid.insert(x.to_string());
                let z = fresh(&avoid, y);
                let b2 = subst(b, y, &var(&z));
                lam(&z, subst(&b2, x, s))
            } else {
                lam(y, subst(b, x, s))
            }
        }
        App(f, a) => app(subst(f, x, s), subst(a, x, s)),
        Der(b) => der(subst(b, x, s)),
        Bang(b) => bang(subst(b, x, s)),
    }
}

/// Binders renamed by nesting depth, so that alpha-equivalent terms are
/// structurally equal.
pub fn canon(n: &N) -> N {
    fn go(n: &N, env: &mut Vec<(String, String)>) -> N {
        match n {
            Var(x) => match env.iter().rev().find(|(a, _)| a == x) {
                Some((_, c)) => var(c),
                None => n.clone(),
            },
            Lam(x, b) => {
                let c = format!("%{}", env.len());
                env.push((x.clone(), c.clone()));
                let r = lam(&c, go(b, env));
                env.pop();
                r
            }
            App(f, a) => app(go(f, env), go(a, env)),
            Der(b) => der(go(b, env)),
            Bang(b) => bang(go(b, env)),
        }
    }
    go(n, &mut Vec::new())
}

pub fn alpha(a: &N, b: &N) -> bool {
    canon(a) == canon(b)
}

/// A multiset of terms up to alpha, as sorted canonical forms.
pub fn multiset(v: impl IntoIterator<Item = N>) -> Vec<N> {
    let mut v: Vec<N> = v.into_iter().map(|n| canon(&n)).collect();
    v.sort();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Root {
    V,
    D,
    B,
}

/// One-step reducts for the root-step `r`, in every context or, with
/// `ground`, in contexts with no box above the hole.
pub fn bang_reducts(t: &N, r: Root, ground: bool) -> Vec<N> {
    let mut out = Vec::new();
    match t {
        App(f, a) => {
            if let (Lam(x, body), Bang(arg)) = (&**f, &**a) {
                if r != Root::D {
                    out.push(subst(body, x, arg));
                }
            }
        }
        Der(b) => {
            if let Bang(inner) = &**b {
                if r != Root::V {
                    out.push((**inner).clone());
                }
            }
        }
        _ => {}
    }
    match t {
        Var(_) => {}
        Lam(x, b) => out.extend(bang_reducts(b, r, ground).into_iter().map(|b| lam(x, b))),
        App(f, a) => {
            out.extend(bang_reducts(f, r, ground).into_iter().map(|f| app(f, (**a).clone())));
            out.extend(bang_reducts(a, r, ground).into_iter().map(|a| app((**f).clone(), a)));
        }
        Der(b) => out.extend(bang_reducts(b, r, ground).into_iter().map(der)),
        Bang(b) => {
            if !ground {
                out.extend(bang_reducts(b, r, ground).into_iter().map(bang));
            }
        }
    }
    out
}

fn is_value(n: &N) -> bool {
    matches!(n, Var(_) | Lam(..))
}

/// One-step β-reducts (`cbv = false`) or βv-reducts (`cbv = true`). Ground
/// CbN contexts are `[] | \x.N | N t`; ground CbV contexts are
/// `[] | V t | t V`.
pub fn lambda_reducts(t: &N, cbv: bool, ground: bool) -> Vec<N> {
    let mut out = Vec::new();
    if let App(f, a) = t {
        if let Lam(x, body) = &**f {
            if !cbv || is_value(a) {
                out.push(subst(body, x, a));
            }
        }
    }
    match t {
        Lam(x, b) if !(ground && cbv) => out.extend(lambda_reducts(b, cbv, ground).into_iter().map(|b| lam(x, b))),
        App(f, a) => {
            out.extend(lambda_reducts(f, cbv, ground).into_iter().map(|f| app(f, (**a).clone())));
            if !(ground && !cbv) {
                out.extend(lambda_reducts(a, cbv, ground).into_iter().map(|a| app((**f).clone(), a)));
            }
        }
        _ => {}
    }
    out
}

/// The full development: every v-redex contracted at once.
pub fn develop(t: &N) -> N {
    match t {
        Var(_) => t.clone(),
        Lam(x, b) => lam(x, develop(b)),
        Der(b) => der(develop(b)),
        Bang(b) => bang(develop(b)),
        App(f, a) => match (&**f, &**a) {
            (Lam(x, body), Bang(r)) => subst(&develop(body), x, &develop(r)),
            _ => app(develop(f), develop(a)),
        },
    }
}

/// Every `S` with `t =>v S`, by the rules of parallel v-reduction.
pub fn parallel(t: &N) -> Vec<N> {
    let out: Vec<N> = match t {
        Var(_) => vec![t.clone()],
        Lam(x, b) => parallel(b).into_iter().map(|b| lam(x, b)).collect(),
        Der(b) => parallel(b).into_iter().map(der).collect(),
        Bang(b) => parallel(b).into_iter().map(bang).collect(),
        App(f, a) => {
            let (fs, as_) = (parallel(f), parallel(a));
            let mut v: Vec<N> = Vec::new();
            for g in &fs {
                for b in &as_ {
                    v.push(app(g.clone(), b.clone()));
                }
            }
            if let (Lam(x, body), Bang(r)) = (&**f, &**a) {
                let (bs, rs) = (parallel(body), parallel(r));
                for s in &bs {
                    for q in &rs {
                        v.push(subst(s, x, q));
                    }
                }
            }
            v
        }
    };
    let mut seen = HashMap::new();
    for n in out {
        seen.entry(canon(&n)).or_insert(n);
    }
    seen.into_values().collect()
}

pub fn cbn(t: &N) -> N {
    match t {
        Var(_) => t.clone(),
        Lam(x, b) => lam(x, cbn(b)),
        App(f, a) => app(cbn(f), bang(cbn(a))),
        _ => panic!("not a λ-term"),
    }
}

pub fn cbv(t: &N) -> N {
    match t {
        Var(_) => bang(t.clone()),
        Lam(x, b) => bang(lam(x, cbv(b))),
        App(f, a) => app(der(cbv(f)), cbv(a)),
        _ => panic!("not a λ-term"),
    }
}

/// `M ::= !U | der M N | U M` (with `N` ranging over `M`).
pub fn in_cbv_m(t: &N) -> bool {
    match t {
        Bang(u) => in_cbv_u(u),
        App(f, a) => match &**f {
            Der(m) => in_cbv_m(m) && in_cbv_m(a),
            _ => in_cbv_u(f) && in_cbv_m(a),
        },
        _ => false,
    }
}

/// `U ::= x | \x. M`
pub fn in_cbv_u(t: &N) -> bool {
    match t {
        Var(_) => true,
        Lam(_, b) => in_cbv_m(b),
        _ => false,
    }
}

/// Erases boxes and derelictions on the CbV grammar.
pub fn forget(t: &N) -> N {
    match t {
        Var(_) => t.clone(),
        Lam(x, b) => lam(x, forget(b)),
        Bang(u) => forget(u),
        App(f, a) => match &**f {
            Der(m) => app(forget(m), forget(a)),
            _ => app(forget(f), forget(a)),
        },
        Der(_) => panic!("dereliction outside an application"),
    }
}

pub fn lambda(t: &LambdaTerm) -> N {
    from_term(t.as_bang())
}

pub fn to_lambda(n: &N) -> LambdaTerm {
    LambdaTerm::from_bang(to_term(n)).expect("a λ-term")
}
