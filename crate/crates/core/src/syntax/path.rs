use std::fmt;

use serde::{Deserialize, Serialize};

use super::BangTerm;

/// One step from a node to one of its children.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selector {
    /// Function part of an application.
    Fun,
    /// Argument part of an application.
    Arg,
    /// Body of an abstraction, a dereliction or a box.
    Body,
}

/// Address of a subterm, read from the root.
///
/// The derived ordering is not the redex order; see [`Path::precedes`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<Selector>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn new(selectors: Vec<Selector>) -> Self {
        Path(selectors)
    }

    pub fn selectors(&self) -> &[Selector] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, s: Selector) -> Path {
        let mut v = self.0.clone();
        v.push(s);
        Path(v)
    }

    pub fn join(&self, tail: &[Selector]) -> Path {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        Path(v)
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Leftmost-outermost order: a prefix comes first, otherwise the first
    /// diverging selector decides (`Fun` before `Arg`).
    pub fn precedes(&self, other: &Path) -> bool {
        for (a, b) in self.0.iter().zip(&other.0) {
            if a != b {
                return a < b;
            }
        }
        self.0.len() < other.0.len()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Selector::Fun => "fun",
                Selector::Arg => "arg",
                Selector::Body => "body",
            })
            .collect();
        f.write_str(&parts.join("."))
    }
}

impl BangTerm {
    /// The subterm at `path`, if the path is valid for this term.
    pub fn subterm(&self, path: &Path) -> Option<&BangTerm> {
        let mut cur = self;
        for s in &path.0 {
            cur = match (cur, s) {
                (BangTerm::App(f, _), Selector::Fun) => f,
                (BangTerm::App(_, a), Selector::Arg) => a,
                (BangTerm::Lam(_, b) | BangTerm::Der(b) | BangTerm::Bang(b), Selector::Body) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Plugs `new` at `path` (capture-allowing, as for contexts).
    pub fn replace_at(&self, path: &Path, new: BangTerm) -> Option<BangTerm> {
        self.replace_from(&path.0, new)
    }

    fn replace_from(&self, sel: &[Selector], new: BangTerm) -> Option<BangTerm> {
        let Some((first, rest)) = sel.split_first() else {
            return Some(new);
        };
        Some(match (self, first) {
            (BangTerm::App(f, a), Selector::Fun) => BangTerm::app(f.replace_from(rest, new)?, (**a).clone()),
            (BangTerm::App(f, a), Selector::Arg) => BangTerm::app((**f).clone(), a.replace_from(rest, new)?),
            (BangTerm::Lam(n, b), Selector::Body) => BangTerm::Lam(n.clone(), Box::new(b.replace_from(rest, new)?)),
            (BangTerm::Der(b), Selector::Body) => BangTerm::der(b.replace_from(rest, new)?),
            (BangTerm::Bang(b), Selector::Body) => BangTerm::bang(b.replace_from(rest, new)?),
            _ => return None,
        })
    }

    /// Whether a `!` node lies strictly above `path`.
    pub fn path_under_box(&self, path: &Path) -> bool {
        let mut cur = self;
        for s in &path.0 {
            if matches!(cur, BangTerm::Bang(_)) {
                return true;
            }
            cur = match (cur, s) {
                (BangTerm::App(f, _), Selector::Fun) => f,
                (BangTerm::App(_, a), Selector::Arg) => a,
                (BangTerm::Lam(_, b) | BangTerm::Der(b) | BangTerm::Bang(b), Selector::Body) => b,
                _ => return false,
            };
        }
        false
    }
}
