use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::syntax::Name;

/// A point of the relational universe: a finite multiset of points, or an
/// arrow from a multiset to a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RelType {
    Mset(TypeMultiset),
    Arrow(TypeMultiset, Box<RelType>),
}

/// A finite multiset of types, kept sorted so that equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TypeMultiset(Vec<RelType>);

impl TypeMultiset {
    pub fn empty() -> Self {
        TypeMultiset(Vec::new())
    }

    pub fn new(mut elems: Vec<RelType>) -> Self {
        elems.sort();
        TypeMultiset(elems)
    }

    pub fn singleton(t: RelType) -> Self {
        TypeMultiset(vec![t])
    }

    pub fn elems(&self) -> &[RelType] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union.
    pub fn sum(&self, other: &TypeMultiset) -> TypeMultiset {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        TypeMultiset::new(v)
    }
}

impl RelType {
    pub fn mset(elems: Vec<RelType>) -> Self {
        RelType::Mset(TypeMultiset::new(elems))
    }

    pub fn arrow(arg: TypeMultiset, res: RelType) -> Self {
        RelType::Arrow(arg, Box::new(res))
    }

    /// The empty multiset `[]`.
    pub fn empty() -> Self {
        RelType::Mset(TypeMultiset::empty())
    }

    /// Node count: one per multiset and per arrow.
    pub fn size(&self) -> usize {
        match self {
            RelType::Mset(m) => 1 + m.0.iter().map(RelType::size).sum::<usize>(),
            RelType::Arrow(a, r) => 1 + 1 + a.0.iter().map(RelType::size).sum::<usize>() + r.size(),
        }
    }

    /// Arrow nesting: multisets add nothing, arrows add one.
    pub fn depth(&self) -> usize {
        match self {
            RelType::Mset(m) => m.0.iter().map(RelType::depth).max().unwrap_or(0),
            RelType::Arrow(a, r) => 1 + RelType::Mset(a.clone()).depth().max(r.depth()),
        }
    }

    /// Largest multiset cardinality occurring anywhere in the type.
    pub fn width(&self) -> usize {
        match self {
            RelType::Mset(m) => m.0.iter().map(RelType::width).max().unwrap_or(0).max(m.len()),
            RelType::Arrow(a, r) => RelType::Mset(a.clone()).width().max(r.width()),
        }
    }

    pub fn is_mset(&self) -> bool {
        matches!(self, RelType::Mset(_))
    }

    pub fn within(&self, b: &Bound) -> bool {
        self.depth() <= b.max_depth && self.width() <= b.max_width && self.size() <= b.budget
    }
}

// Multisets before arrows; multisets by cardinality, then elementwise;
// arrows by source, then target.
impl Ord for RelType {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RelType::Mset(a), RelType::Mset(b)) => a.cmp(b),
            (RelType::Mset(_), RelType::Arrow(..)) => Ordering::Less,
            (RelType::Arrow(..), RelType::Mset(_)) => Ordering::Greater,
            (RelType::Arrow(a, r), RelType::Arrow(b, s)) => a.cmp(b).then_with(|| r.cmp(s)),
        }
    }
}

impl PartialOrd for RelType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TypeMultiset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TypeMultiset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TypeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for RelType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelType::Mset(m) => write!(f, "{m}"),
            RelType::Arrow(a, r) => write!(f, "{a} -o {r}"),
        }
    }
}

/// Parses the printed form: `[]`, `[t1, t2]`, `a -o t` (right-associative,
/// the source must be a multiset), with optional parentheses.
pub fn parse_type(text: &str) -> Result<RelType> {
    let mut p = TyParser { s: text.as_bytes(), at: 0 };
    let t = p.ty()?;
    p.ws();
    if p.at != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

struct TyParser<'a> {
    s: &'a [u8],
    at: usize,
}

impl TyParser<'_> {
    fn ws(&mut self) {
        while self.at < self.s.len() && self.s[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.at, msg: msg.into() }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.s[self.at..].starts_with(tok.as_bytes()) {
            self.at += tok.len();
            true
        } else {
            false
        }
    }

    fn ty(&mut self) -> Result<RelType> {
        let start = self.at;
        let head = self.atom()?;
        if self.eat("-o") {
            let RelType::Mset(arg) = head else {
                return Err(Error::Syntax { pos: start, msg: "the source of an arrow must be a multiset".into() });
            };
            let res = self.ty()?;
            return Ok(RelType::Arrow(arg, Box::new(res)));
        }
        Ok(head)
    }

    fn atom(&mut self) -> Result<RelType> {
        if self.eat("(") {
            let t = self.ty()?;
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            return Ok(t);
        }
        if !self.eat("[") {
            return Err(self.err("expected '[' or '('"));
        }
        let mut elems = Vec::new();
        if self.eat("]") {
            return Ok(RelType::Mset(TypeMultiset::empty()));
        }
        loop {
            elems.push(self.ty()?);
            if self.eat("]") {
                break;
            }
            if !self.eat(",") {
                return Err(self.err("expected ',' or ']'"));
            }
        }
        Ok(RelType::mset(elems))
    }
}

impl Serialize for RelType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RelType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        parse_type(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl Serialize for TypeMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Finite-support map from variables to multisets; absent means `[]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeEnv(BTreeMap<Name, TypeMultiset>);

impl TypeEnv {
    pub fn new() -> Self {
        TypeEnv::default()
    }

    pub fn get(&self, x: &str) -> TypeMultiset {
        self.0.get(x).cloned().unwrap_or_default()
    }

    pub fn insert(&mut self, x: &str, m: TypeMultiset) {
        if m.is_empty() {
            self.0.remove(x);
        } else {
            self.0.insert(x.into(), m);
        }
    }

    pub fn with(mut self, x: &str, m: TypeMultiset) -> Self {
        self.insert(x, m);
        self
    }

    /// Pointwise multiset union.
    pub fn sum(&self, other: &TypeEnv) -> TypeEnv {
        let mut out = self.clone();
        for (x, m) in &other.0 {
            let s = out.get(x).sum(m);
            out.insert(x, s);
        }
        out
    }

    pub fn support(&self) -> impl Iterator<Item = (&Name, &TypeMultiset)> {
        self.0.iter()
    }
}

/// Limits on the types a bounded derivation may use. Each bounds every
/// type occurring in the derivation, environment multisets included.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bound {
    /// Maximal arrow nesting.
    pub max_depth: usize,
    /// Maximal multiset cardinality.
    pub max_width: usize,
    /// Maximal node count of a single type.
    pub budget: usize,
}

impl Bound {
    pub const fn new(max_depth: usize, max_width: usize, budget: usize) -> Self {
        Bound { max_depth, max_width, budget }
    }

    /// Whether every type within `self` is within `other`.
    pub fn le(&self, other: &Bound) -> bool {
        self.max_depth <= other.max_depth && self.max_width <= other.max_width && self.budget <= other.budget
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(depth {}, width {}, budget {})", self.max_depth, self.max_width, self.budget)
    }
}
