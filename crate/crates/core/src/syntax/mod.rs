//! Terms of the bang calculus and of the plain λ-calculus.
//!
//! Bound variables are stored as de Bruijn indices and every binder keeps
//! the name it was written with as a printing hint. Equality and hashing
//! ignore the hints, so `==` on terms is alpha-equivalence.

mod ast;
mod parse;
mod path;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use ast::Ast;
pub use parse::{parse_bang, parse_lambda};
pub use path::{Path, Selector};

/// Variable and binder names.
pub type Name = Arc<str>;

/// An occurrence of a variable: either a free name or a reference to an
/// enclosing binder.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub(crate) VarRef);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum VarRef {
    Free(Name),
    Bound(u32),
}

impl Var {
    /// The name of a free variable, `None` for a bound one.
    pub fn free_name(&self) -> Option<&str> {
        match &self.0 {
            VarRef::Free(n) => Some(n),
            VarRef::Bound(_) => None,
        }
    }

    pub fn is_bound(&self) -> bool {
        matches!(self.0, VarRef::Bound(_))
    }
}

/// A term of !Λ.
#[derive(Clone, Debug)]
pub enum BangTerm {
    Var(Var),
    /// Abstraction; the name is only a printing hint.
    Lam(Name, Box<BangTerm>),
    App(Box<BangTerm>, Box<BangTerm>),
    /// Dereliction `der T`.
    Der(Box<BangTerm>),
    /// Box `!T`.
    Bang(Box<BangTerm>),
}

impl PartialEq for BangTerm {
    fn eq(&self, other: &Self) -> bool {
        use BangTerm::*;
        match (self, other) {
            (Var(a), Var(b)) => a == b,
            (Lam(_, a), Lam(_, b)) | (Der(a), Der(b)) | (Bang(a), Bang(b)) => a == b,
            (App(f, a), App(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}

impl Eq for BangTerm {}

impl Hash for BangTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            BangTerm::Var(v) => v.hash(state),
            BangTerm::Lam(_, b) | BangTerm::Der(b) | BangTerm::Bang(b) => b.hash(state),
            BangTerm::App(f, a) => {
                f.hash(state);
                a.hash(state);
            }
        }
    }
}

impl BangTerm {
    pub fn var(name: &str) -> Self {
        BangTerm::Var(Var(VarRef::Free(name.into())))
    }

    pub(crate) fn bound(index: u32) -> Self {
        BangTerm::Var(Var(VarRef::Bound(index)))
    }

    /// `\name. body`, binding the free occurrences of `name` in `body`.
    pub fn lam(name: &str, body: BangTerm) -> Self {
        let name: Name = name.into();
        let body = body.close(&name, 0);
        BangTerm::Lam(name, Box::new(body))
    }

    pub fn app(fun: BangTerm, arg: BangTerm) -> Self {
        BangTerm::App(Box::new(fun), Box::new(arg))
    }

    pub fn der(body: BangTerm) -> Self {
        BangTerm::Der(Box::new(body))
    }

    pub fn bang(body: BangTerm) -> Self {
        BangTerm::Bang(Box::new(body))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            BangTerm::Var(_) => 1,
            BangTerm::Lam(_, b) | BangTerm::Der(b) | BangTerm::Bang(b) => 1 + b.size(),
            BangTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// The set FV(T) of free variable names.
    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            BangTerm::Var(Var(VarRef::Free(n))) => {
                out.insert(n.clone());
            }
            BangTerm::Var(_) => {}
            BangTerm::Lam(_, b) | BangTerm::Der(b) | BangTerm::Bang(b) => b.collect_free(out),
            BangTerm::App(f, a) => {
                f.collect_free(out);
                a.collect_free(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Whether the term belongs to the λ-fragment (no `der`, no `!`).
    pub fn is_lambda(&self) -> bool {
        match self {
            BangTerm::Var(_) => true,
            BangTerm::Lam(_, b) => b.is_lambda(),
            BangTerm::App(f, a) => f.is_lambda() && a.is_lambda(),
            BangTerm::Der(_) | BangTerm::Bang(_) => false,
        }
    }

    /// Capture-avoiding substitution `self[s/x]` of a free variable.
    pub fn substitute(&self, x: &str, s: &BangTerm) -> BangTerm {
        self.subst_free(x, s, 0)
    }

    fn subst_free(&self, x: &str, s: &BangTerm, depth: u32) -> BangTerm {
        match self {
            BangTerm::Var(Var(VarRef::Free(n))) if &**n == x => s.shift(depth as i64, 0),
            BangTerm::Var(_) => self.clone(),
            BangTerm::Lam(n, b) => BangTerm::Lam(n.clone(), Box::new(b.subst_free(x, s, depth + 1))),
            BangTerm::App(f, a) => BangTerm::app(f.subst_free(x, s, depth), a.subst_free(x, s, depth)),
            BangTerm::Der(b) => BangTerm::der(b.subst_free(x, s, depth)),
            BangTerm::Bang(b) => BangTerm::bang(b.subst_free(x, s, depth)),
        }
    }

    /// Turns free occurrences of `name` into references to a binder sitting
    /// `depth` levels above.
    fn close(&self, name: &str, depth: u32) -> BangTerm {
        match self {
            BangTerm::Var(Var(VarRef::Free(n))) if &**n == name => BangTerm::bound(depth),
            BangTerm::Var(_) => self.clone(),
            BangTerm::Lam(n, b) => BangTerm::Lam(n.clone(), Box::new(b.close(name, depth + 1))),
            BangTerm::App(f, a) => BangTerm::app(f.close(name, depth), a.close(name, depth)),
            BangTerm::Der(b) => BangTerm::der(b.close(name, depth)),
            BangTerm::Bang(b) => BangTerm::bang(b.close(name, depth)),
        }
    }

    /// Adds `delta` to every bound index `>= cutoff`.
    pub(crate) fn shift(&self, delta: i64, cutoff: u32) -> BangTerm {
        if delta == 0 {
            return self.clone();
        }
        match self {
            BangTerm::Var(Var(VarRef::Bound(i))) if *i >= cutoff => BangTerm::bound((*i as i64 + delta) as u32),
            BangTerm::Var(_) => self.clone(),
            BangTerm::Lam(n, b) => BangTerm::Lam(n.clone(), Box::new(b.shift(delta, cutoff + 1))),
            BangTerm::App(f, a) => BangTerm::app(f.shift(delta, cutoff), a.shift(delta, cutoff)),
            BangTerm::Der(b) => BangTerm::der(b.shift(delta, cutoff)),
            BangTerm::Bang(b) => BangTerm::bang(b.shift(delta, cutoff)),
        }
    }

    /// Replaces the outermost dangling index of a binder body by `arg`:
    /// for `self` the body of `\x. self`, returns `self[arg/x]`.
    pub(crate) fn instantiate(&self, arg: &BangTerm) -> BangTerm {
        self.subst_bound(0, arg)
    }

    fn subst_bound(&self, depth: u32, arg: &BangTerm) -> BangTerm {
        match self {
            BangTerm::Var(Var(VarRef::Bound(i))) => {
                if *i == depth {
                    arg.shift(depth as i64, 0)
                } else if *i > depth {
                    BangTerm::bound(i - 1)
                } else {
                    self.clone()
                }
            }
            BangTerm::Var(_) => self.clone(),
            BangTerm::Lam(n, b) => BangTerm::Lam(n.clone(), Box::new(b.subst_bound(depth + 1, arg))),
            BangTerm::App(f, a) => BangTerm::app(f.subst_bound(depth, arg), a.subst_bound(depth, arg)),
            BangTerm::Der(b) => BangTerm::der(b.subst_bound(depth, arg)),
            BangTerm::Bang(b) => BangTerm::bang(b.subst_bound(depth, arg)),
        }
    }
}

/// Alpha-equivalence.
pub fn alpha_eq(t: &BangTerm, s: &BangTerm) -> bool {
    t == s
}

/// The free variables FV(T).
pub fn free_vars(t: &BangTerm) -> BTreeSet<Name> {
    t.free_vars()
}

/// Capture-avoiding substitution `t[s/x]`.
pub fn substitute(t: &BangTerm, x: &str, s: &BangTerm) -> BangTerm {
    t.substitute(x, s)
}

impl fmt::Display for BangTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

/// A λ-term: a bang term with no `der` and no `!` nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaTerm(BangTerm);

impl LambdaTerm {
    pub fn var(name: &str) -> Self {
        LambdaTerm(BangTerm::var(name))
    }

    pub fn lam(name: &str, body: LambdaTerm) -> Self {
        LambdaTerm(BangTerm::lam(name, body.0))
    }

    pub fn app(fun: LambdaTerm, arg: LambdaTerm) -> Self {
        LambdaTerm(BangTerm::app(fun.0, arg.0))
    }

    /// Projects a bang term back into Λ; `None` if it uses `der` or `!`.
    pub fn from_bang(t: BangTerm) -> Option<Self> {
        t.is_lambda().then_some(LambdaTerm(t))
    }

    pub(crate) fn from_bang_unchecked(t: BangTerm) -> Self {
        debug_assert!(t.is_lambda());
        LambdaTerm(t)
    }

    /// The evident inclusion Λ ⊆ !Λ.
    pub fn as_bang(&self) -> &BangTerm {
        &self.0
    }

    pub fn into_bang(self) -> BangTerm {
        self.0
    }

    /// Variables and abstractions.
    pub fn is_value(&self) -> bool {
        matches!(self.0, BangTerm::Var(_) | BangTerm::Lam(..))
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        self.0.free_vars()
    }

    pub fn substitute(&self, x: &str, s: &LambdaTerm) -> LambdaTerm {
        LambdaTerm(self.0.substitute(x, &s.0))
    }
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for BangTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BangTerm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_bang(&text).map_err(serde::de::Error::custom)
    }
}

impl Serialize for LambdaTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LambdaTerm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_lambda(&text).map_err(serde::de::Error::custom)
    }
}

/// Text of a bang or λ-term with minimal parentheses.
pub fn print_term(t: &BangTerm) -> String {
    print::print(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BangTerm {
        parse_bang(s).unwrap()
    }

    fn delta() -> BangTerm {
        p(r"\x. x !x")
    }

    #[test]
    fn substitution_examples() {
        let t = BangTerm::app(BangTerm::var("x"), BangTerm::bang(BangTerm::var("x")));
        let got = t.substitute("x", &delta());
        assert_eq!(got, BangTerm::app(delta(), BangTerm::bang(delta())));

        let s = p("y z");
        assert_eq!(p("!x").substitute("x", &s), BangTerm::bang(s.clone()));

        let captured = BangTerm::lam("y", BangTerm::var("x")).substitute("x", &BangTerm::var("y"));
        assert_eq!(captured, p(r"\z. y"));
        assert_ne!(captured, p(r"\y. y"));
        let printed = print_term(&captured);
        assert!(!printed.starts_with(r"\y."), "binder must be renamed: {printed}");
        assert_eq!(p(&printed), captured);
    }

    #[test]
    fn substitution_of_absent_variable_is_identity() {
        let t = p(r"\y. y !w (der z)");
        assert_eq!(t.substitute("x", &delta()), t);
    }

    #[test]
    fn alpha_examples() {
        assert!(alpha_eq(&p(r"\x. x"), &p(r"\y. y")));
        assert!(alpha_eq(&p(r"\x. \y. x"), &p(r"\y. \x. y")));
        assert!(!alpha_eq(&p(r"\x. x"), &p(r"\x. !x")));
        assert!(!alpha_eq(&p(r"\x. \y. x"), &p(r"\x. \y. y")));
    }

    #[test]
    fn free_var_examples() {
        let names = |t: &BangTerm| t.free_vars().iter().map(|n| n.to_string()).collect::<Vec<_>>();
        assert_eq!(names(&p(r"\x. x !y")), vec!["y"]);
        assert!(names(&delta()).is_empty());
        assert_eq!(names(&p("der !x")), vec!["x"]);
    }

    #[test]
    fn instantiate_under_binders_shifts_argument() {
        // \z. ((\x. \w. x) !z)  -- contracting inside the outer binder
        let body = p(r"\w. x").into_body_of_lam_for_test("x");
        let arg = BangTerm::bound(0); // refers to z from inside
        let got = body.instantiate(&arg);
        let expected_inside = BangTerm::Lam("w".into(), Box::new(BangTerm::bound(1)));
        assert_eq!(got, expected_inside);
    }

    impl BangTerm {
        fn into_body_of_lam_for_test(self, name: &str) -> BangTerm {
            match BangTerm::lam(name, self) {
                BangTerm::Lam(_, b) => *b,
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn lambda_values() {
        assert!(parse_lambda("x").unwrap().is_value());
        assert!(parse_lambda(r"\x. x x").unwrap().is_value());
        assert!(!parse_lambda("x y").unwrap().is_value());
        assert!(LambdaTerm::from_bang(p("!x")).is_none());
    }
}
