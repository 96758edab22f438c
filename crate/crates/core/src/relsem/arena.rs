//! Interned types: every type within a bound gets a small integer id, and
//! the whole bounded universe is built up front.

use std::collections::HashMap;

use super::types::{Bound, RelType, TypeMultiset};
use crate::error::{Error, Result};

pub(crate) type TyId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    /// Elements sorted by id.
    Mset(Box<[TyId]>),
    /// Source (a multiset id) and target.
    Arrow(TyId, TyId),
}

#[derive(Clone, Copy, Debug)]
struct Info {
    size: u32,
    depth: u32,
}

/// Largest universe that will be materialized.
pub const MAX_UNIVERSE: u64 = 2_000_000;

pub(crate) struct Arena {
    pub(crate) bound: Bound,
    nodes: Vec<Node>,
    info: Vec<Info>,
    msets: HashMap<Box<[TyId]>, TyId>,
    arrows: HashMap<(TyId, TyId), TyId>,
    /// Ids of all multisets, by increasing size.
    pub(crate) all_msets: Vec<TyId>,
    /// `(alpha, [alpha])` for every alpha whose singleton is in bound.
    pub(crate) singletons: Vec<(TyId, TyId)>,
    pub(crate) empty: TyId,
}

/// Number of types within `b`, by a size-indexed recursion over the grammar
/// that does not build the types.
pub fn count_types(b: Bound) -> u64 {
    let (dmax, w, smax) = (b.max_depth, b.max_width, b.budget);
    if smax == 0 {
        return 0;
    }
    // n[d][s]: types of size s and arrow-depth <= d
    let mut n = vec![vec![0u64; smax + 1]; dmax + 1];
    for d in 0..=dmax {
        let prev_ms = if d == 0 { Vec::new() } else { msets_by_size(&n[d - 1], w, smax) };
        // comb[k][t]: k-element multisets over the types counted so far, element sizes summing to t
        let mut comb = vec![vec![0u64; smax + 1]; w + 1];
        comb[0][0] = 1;
        for s in 1..=smax {
            let msets: u64 = (0..=w).map(|k| comb[k][s - 1]).sum();
            let arrows: u64 =
                if d == 0 { 0 } else { (1..s.saturating_sub(1)).map(|sa| prev_ms[sa] * n[d - 1][s - 1 - sa]).sum() };
            n[d][s] = msets + arrows;
            add_elements(&mut comb, n[d][s], s, w, smax);
        }
    }
    n[dmax].iter().sum()
}

// Multisets of width <= w by size, with elements counted by `elems`.
fn msets_by_size(elems: &[u64], w: usize, smax: usize) -> Vec<u64> {
    let mut comb = vec![vec![0u64; smax + 1]; w + 1];
    comb[0][0] = 1;
    let mut out = vec![0u64; smax + 1];
    for s in 1..=smax {
        out[s] = (0..=w).map(|k| comb[k][s - 1]).sum();
        add_elements(&mut comb, elems[s], s, w, smax);
    }
    out
}

// Extends multiset counts with `c` distinct new element types of size `s`:
// choosing j copies among c kinds with repetition is C(c + j - 1, j).
fn add_elements(comb: &mut [Vec<u64>], c: u64, s: usize, w: usize, smax: usize) {
    if c == 0 {
        return;
    }
    let old = comb.to_vec();
    for k in 0..=w {
        for t in 0..=smax {
            let mut acc = 0u64;
            for j in 1..=k {
                if j * s > t {
                    break;
                }
                acc += old[k - j][t - j * s] * multichoose(c, j as u64);
            }
            comb[k][t] += acc;
        }
    }
}

fn multichoose(c: u64, j: u64) -> u64 {
    // C(c + j - 1, j)
    let mut r: u128 = 1;
    for i in 0..j {
        r = r * (c + i) as u128 / (i + 1) as u128;
    }
    r as u64
}

impl Arena {
    /// Builds every type within `bound`.
    pub(crate) fn new(bound: Bound) -> Result<Arena> {
        let count = count_types(bound);
        if count > MAX_UNIVERSE {
            return Err(Error::Inconclusive {
                budget: bound.budget,
                what: format!("the bound admits {count} types, more than the {MAX_UNIVERSE} that can be enumerated"),
            });
        }
        let mut a = Arena {
            bound,
            nodes: Vec::new(),
            info: Vec::new(),
            msets: HashMap::new(),
            arrows: HashMap::new(),
            all_msets: Vec::new(),
            singletons: Vec::new(),
            empty: 0,
        };
        a.build();
        debug_assert_eq!(a.nodes.len() as u64, count);
        Ok(a)
    }

    fn push(&mut self, node: Node, info: Info) -> TyId {
        let id = self.nodes.len() as TyId;
        match &node {
            Node::Mset(e) => {
                self.msets.insert(e.clone(), id);
                self.all_msets.push(id);
            }
            Node::Arrow(s, t) => {
                self.arrows.insert((*s, *t), id);
            }
        }
        self.nodes.push(node);
        self.info.push(info);
        id
    }

    // Ids are assigned by increasing size, so that the elements of a
    // multiset can be chosen in id order with sizes non-decreasing.
    fn build(&mut self) {
        let b = self.bound;
        if b.budget == 0 {
            return;
        }
        let mut by_size: Vec<Vec<TyId>> = vec![Vec::new(); b.budget + 1];
        let mut msets_by_size: Vec<Vec<TyId>> = vec![Vec::new(); b.budget + 1];
        for s in 1..=b.budget {
            let mut fresh = Vec::new();
            let mut chosen = Vec::new();
            self.choose(s - 1, 0, b.max_width, &by_size, &mut chosen, &mut fresh);
            for elems in fresh {
                let depth = elems.iter().map(|e| self.info[*e as usize].depth).max().unwrap_or(0);
                let id = self.push(Node::Mset(elems.into_boxed_slice()), Info { size: s as u32, depth });
                by_size[s].push(id);
                msets_by_size[s].push(id);
            }
            for (sa, sources) in msets_by_size.clone().iter().enumerate().take(s.saturating_sub(1)).skip(1) {
                let st = s - 1 - sa;
                for &src in sources {
                    for &tgt in &by_size[st].clone() {
                        let depth = 1 + self.info[src as usize].depth.max(self.info[tgt as usize].depth);
                        if depth as usize <= b.max_depth {
                            let id = self.push(Node::Arrow(src, tgt), Info { size: s as u32, depth });
                            by_size[s].push(id);
                        }
                    }
                }
            }
        }
        self.empty = self.msets[&[][..]];
        for id in 0..self.nodes.len() as TyId {
            if let Some(&m) = self.msets.get(&[id][..]) {
                self.singletons.push((id, m));
            }
        }
    }

    // Multisets of at most `left` elements whose sizes sum to `rem`, with
    // element ids non-decreasing from `min`.
    fn choose(
        &self,
        rem: usize,
        min: TyId,
        left: usize,
        by_size: &[Vec<TyId>],
        cur: &mut Vec<TyId>,
        out: &mut Vec<Vec<TyId>>,
    ) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if left == 0 {
            return;
        }
        let start = if cur.is_empty() { 1 } else { self.info[min as usize].size as usize };
        for s in start..=rem {
            for &id in &by_size[s] {
                if id < min {
                    continue;
                }
                cur.push(id);
                self.choose(rem - s, id, left - 1, by_size, cur, out);
                cur.pop();
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn size(&self, id: TyId) -> usize {
        self.info[id as usize].size as usize
    }

    /// Elements of a multiset id; `None` for an arrow.
    pub(crate) fn elems(&self, id: TyId) -> Option<&[TyId]> {
        match &self.nodes[id as usize] {
            Node::Mset(e) => Some(e),
            Node::Arrow(..) => None,
        }
    }

    pub(crate) fn as_arrow(&self, id: TyId) -> Option<(TyId, TyId)> {
        match self.nodes[id as usize] {
            Node::Arrow(s, t) => Some((s, t)),
            Node::Mset(_) => None,
        }
    }

    pub(crate) fn is_mset(&self, id: TyId) -> bool {
        matches!(self.nodes[id as usize], Node::Mset(_))
    }

    /// The multiset with these elements, if within bound.
    pub(crate) fn mset(&self, elems: &mut [TyId]) -> Option<TyId> {
        elems.sort_unstable();
        self.msets.get(&*elems).copied()
    }

    pub(crate) fn arrow(&self, src: TyId, tgt: TyId) -> Option<TyId> {
        self.arrows.get(&(src, tgt)).copied()
    }

    /// Multiset union, if within bound.
    pub(crate) fn sum(&self, a: TyId, b: TyId) -> Option<TyId> {
        if a == self.empty {
            return Some(b);
        }
        if b == self.empty {
            return Some(a);
        }
        let (x, y) = (self.elems(a)?, self.elems(b)?);
        let mut v = Vec::with_capacity(x.len() + y.len());
        v.extend_from_slice(x);
        v.extend_from_slice(y);
        self.mset(&mut v)
    }

    pub(crate) fn to_type(&self, id: TyId) -> RelType {
        match &self.nodes[id as usize] {
            Node::Mset(e) => RelType::mset(e.iter().map(|x| self.to_type(*x)).collect()),
            Node::Arrow(s, t) => RelType::Arrow(self.to_multiset(*s), Box::new(self.to_type(*t))),
        }
    }

    pub(crate) fn to_multiset(&self, id: TyId) -> TypeMultiset {
        match self.to_type(id) {
            RelType::Mset(m) => m,
            RelType::Arrow(..) => unreachable!("not a multiset id"),
        }
    }

    /// The id of a type, or `None` if it is outside the bound.
    pub(crate) fn lookup(&self, t: &RelType) -> Option<TyId> {
        match t {
            RelType::Mset(m) => self.lookup_mset(m),
            RelType::Arrow(s, r) => self.arrow(self.lookup_mset(s)?, self.lookup(r)?),
        }
    }

    pub(crate) fn lookup_mset(&self, m: &TypeMultiset) -> Option<TyId> {
        let mut ids = m.elems().iter().map(|e| self.lookup(e)).collect::<Option<Vec<_>>>()?;
        self.mset(&mut ids)
    }
}
