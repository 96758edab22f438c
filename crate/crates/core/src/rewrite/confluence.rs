use std::collections::HashMap;
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::{Derivation, Redex, Rewriting, Step};

/// A common reduct of two terms with the two sequences reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Join<T> {
    pub common: T,
    pub left: Derivation<T>,
    pub right: Derivation<T>,
}

impl<T: fmt::Display> Serialize for Join<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Join", 3)?;
        st.serialize_field("common", &self.common.to_string())?;
        st.serialize_field("left", &self.left)?;
        st.serialize_field("right", &self.right)?;
        st.end()
    }
}

struct Frontier<T> {
    nodes: Vec<(T, Option<(usize, Redex)>)>,
    index: HashMap<T, usize>,
    next: usize,
}

impl<T: Clone + Eq + std::hash::Hash> Frontier<T> {
    fn new(t: &T) -> Self {
        Frontier { nodes: vec![(t.clone(), None)], index: HashMap::from([(t.clone(), 0)]), next: 0 }
    }

    fn pending(&self) -> usize {
        self.nodes.len() - self.next
    }

    fn derivation(&self, mut i: usize) -> Derivation<T> {
        let mut steps = Vec::new();
        while let Some((parent, redex)) = &self.nodes[i].1 {
            steps.push(Step { redex: redex.clone(), result: self.nodes[i].0.clone() });
            i = *parent;
        }
        steps.reverse();
        Derivation { initial: self.nodes[0].0.clone(), steps }
    }
}

/// Breadth-first search for a common reduct of `t1` and `t2`, expanding
/// both reduction graphs alternately. At most `budget` terms are expanded.
///
/// `None` means no common reduct was found within the budget, or that both
/// reduction graphs were exhausted without meeting.
pub fn join<R: Rewriting>(rel: &R, t1: &R::Term, t2: &R::Term, budget: usize) -> Option<Join<R::Term>> {
    let mut sides = [Frontier::new(t1), Frontier::new(t2)];
    if let Some(&j) = sides[1].index.get(t1) {
        return Some(meet(&sides, 0, 0, j));
    }
    for _ in 0..budget {
        let side = match (sides[0].pending(), sides[1].pending()) {
            (0, 0) => return None,
            (0, _) => 1,
            (_, 0) => 0,
            (a, b) => usize::from(b < a),
        };
        let (this, other) = if side == 0 {
            let (a, b) = sides.split_at_mut(1);
            (&mut a[0], &b[0])
        } else {
            let (a, b) = sides.split_at_mut(1);
            (&mut b[0], &a[0])
        };
        let i = this.next;
        this.next += 1;
        let cur = this.nodes[i].0.clone();
        for (redex, s) in rel.reducts(&cur) {
            if this.index.contains_key(&s) {
                continue;
            }
            let k = this.nodes.len();
            this.index.insert(s.clone(), k);
            this.nodes.push((s.clone(), Some((i, redex))));
            if let Some(&j) = other.index.get(&s) {
                return Some(meet(&sides, side, k, j));
            }
        }
    }
    None
}

fn meet<T: Clone + Eq + std::hash::Hash>(sides: &[Frontier<T>; 2], side: usize, mine: usize, theirs: usize) -> Join<T> {
    let (l, r) = if side == 0 { (mine, theirs) } else { (theirs, mine) };
    let left = sides[0].derivation(l);
    let right = sides[1].derivation(r);
    Join { common: left.last().clone(), left, right }
}

/// Breadth-first search for a reduction sequence from `from` to `to`,
/// expanding at most `budget` terms.
pub fn reach<R: Rewriting>(rel: &R, from: &R::Term, to: &R::Term, budget: usize) -> Option<Derivation<R::Term>> {
    let mut f = Frontier::new(from);
    if from == to {
        return Some(f.derivation(0));
    }
    while f.pending() > 0 && f.next < budget {
        let i = f.next;
        f.next += 1;
        let cur = f.nodes[i].0.clone();
        for (redex, s) in rel.reducts(&cur) {
            if f.index.contains_key(&s) {
                continue;
            }
            let k = f.nodes.len();
            f.index.insert(s.clone(), k);
            let hit = &s == to;
            f.nodes.push((s, Some((i, redex))));
            if hit {
                return Some(f.derivation(k));
            }
        }
    }
    None
}

/// Whether the peak `s1 <- t -> s2` closes quasi-strongly: `s1 = s2`, or
/// some term is reachable from both in exactly one step.
pub fn closes_quasi_strongly<R: Rewriting>(rel: &R, s1: &R::Term, s2: &R::Term) -> bool {
    if s1 == s2 {
        return true;
    }
    let left: Vec<R::Term> = rel.reducts(s1).into_iter().map(|(_, x)| x).collect();
    rel.reducts(s2).into_iter().any(|(_, x)| left.contains(&x))
}

/// Whether the peak `s1 <-r1 t ->r2 s2` closes as `s1 ->r2 u <-r1 s2`,
/// with exactly one step on each side.
pub fn commutes_strongly<R1, R2>(r1: &R1, r2: &R2, s1: &R1::Term, s2: &R1::Term) -> bool
where
    R1: Rewriting,
    R2: Rewriting<Term = R1::Term>,
{
    let left: Vec<R1::Term> = r2.reducts(s1).into_iter().map(|(_, x)| x).collect();
    r1.reducts(s2).into_iter().any(|(_, x)| left.contains(&x))
}
