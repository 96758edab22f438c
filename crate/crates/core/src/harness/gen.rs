use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::syntax::{BangTerm, LambdaTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    Bang,
    Lambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    /// Largest number of AST nodes.
    pub max_size: usize,
    /// Number of distinct free variable names available.
    pub var_pool: usize,
    pub closed: bool,
    pub calculus: Calculus,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(calculus: Calculus, max_size: usize, seed: u64) -> Self {
        GenConfig { max_size, var_pool: 3, closed: false, calculus, seed }
    }
}

const FREE: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
const BINDERS: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

fn free_name(i: usize) -> String {
    match FREE.get(i) {
        Some(n) => n.to_string(),
        None => format!("a{i}"),
    }
}

/// A deterministic stream of random terms.
///
/// Sizes are drawn uniformly, then shapes top-down. Redex shapes (`(\x.T)!R`
/// and `der !T` in the bang calculus, `(\x.t)u` in the λ-calculus) are
/// drawn more often than the grammar alone would produce them.
pub struct TermGen {
    cfg: GenConfig,
    rng: ChaCha8Rng,
}

impl TermGen {
    pub fn new(cfg: GenConfig) -> Self {
        TermGen { cfg, rng: ChaCha8Rng::seed_from_u64(cfg.seed) }
    }

    /// The next term. A closed term needs at least two nodes, so with
    /// `closed` and `max_size < 2` the result is `\x. x`.
    pub fn next_term(&mut self) -> BangTerm {
        let min = if self.cfg.closed { 2 } else { 1 };
        if self.cfg.max_size < min {
            return if self.cfg.closed { BangTerm::lam("x", BangTerm::var("x")) } else { BangTerm::var(&free_name(0)) };
        }
        let n = self.rng.gen_range(min..=self.cfg.max_size);
        self.exact(n, 0)
    }

    pub fn next_lambda(&mut self) -> LambdaTerm {
        assert_eq!(self.cfg.calculus, Calculus::Lambda, "configured for the bang calculus");
        LambdaTerm::from_bang(self.next_term()).expect("λ generator produces λ-terms")
    }

    fn min_size(&self, depth: u32) -> usize {
        if self.cfg.closed && depth == 0 {
            2
        } else {
            1
        }
    }

    fn var(&mut self, depth: u32) -> BangTerm {
        let use_bound = depth > 0 && (self.cfg.closed || self.cfg.var_pool == 0 || self.rng.gen_bool(0.75));
        if use_bound {
            BangTerm::bound(self.rng.gen_range(0..depth))
        } else {
            let i = self.rng.gen_range(0..self.cfg.var_pool.max(1));
            BangTerm::var(&free_name(i))
        }
    }

    fn lam(&mut self, n: usize, depth: u32) -> BangTerm {
        let body = self.exact(n - 1, depth + 1);
        BangTerm::Lam(BINDERS[depth as usize % BINDERS.len()].into(), Box::new(body))
    }

    // A pair of sizes (l, r) with l + r = total, l >= lmin, r >= rmin.
    fn split(&mut self, total: usize, lmin: usize, rmin: usize) -> (usize, usize) {
        let l = self.rng.gen_range(lmin..=total - rmin);
        (l, total - l)
    }

    /// A term of exactly `n` nodes under `depth` binders; `n` must be at
    /// least `min_size(depth)`.
    fn exact(&mut self, n: usize, depth: u32) -> BangTerm {
        let m = self.min_size(depth);
        debug_assert!(n >= m);
        if n == 1 {
            return self.var(depth);
        }
        let bang = self.cfg.calculus == Calculus::Bang;
        // redex shapes first
        if self.rng.gen_bool(0.35) {
            if bang {
                if n >= 3 + 1 + m && self.rng.gen_bool(0.6) {
                    let (b, a) = self.split(n - 3, 1, m);
                    let body = self.exact(b, depth + 1);
                    let f = BangTerm::Lam(BINDERS[depth as usize % BINDERS.len()].into(), Box::new(body));
                    return BangTerm::app(f, BangTerm::bang(self.exact(a, depth)));
                }
                if n >= 2 + m {
                    return BangTerm::der(BangTerm::bang(self.exact(n - 2, depth)));
                }
            } else if n >= 2 + 1 + m {
                let (b, a) = self.split(n - 2, 1, m);
                let body = self.exact(b, depth + 1);
                let f = BangTerm::Lam(BINDERS[depth as usize % BINDERS.len()].into(), Box::new(body));
                return BangTerm::app(f, self.exact(a, depth));
            }
        }
        let mut shapes: Vec<u8> = vec![0]; // abstraction
        if n > 2 * m {
            shapes.push(1); // application
        }
        if bang && n > m {
            shapes.extend([2, 3]); // der, box
        }
        match shapes[self.rng.gen_range(0..shapes.len())] {
            0 => self.lam(n, depth),
            1 => {
                let (l, r) = self.split(n - 1, m, m);
                BangTerm::app(self.exact(l, depth), self.exact(r, depth))
            }
            2 => BangTerm::der(self.exact(n - 1, depth)),
            _ => BangTerm::bang(self.exact(n - 1, depth)),
        }
    }
}

impl Iterator for TermGen {
    type Item = BangTerm;

    fn next(&mut self) -> Option<BangTerm> {
        Some(self.next_term())
    }
}

/// The first term of the stream for `cfg`.
pub fn gen_term(cfg: GenConfig) -> BangTerm {
    TermGen::new(cfg).next_term()
}
