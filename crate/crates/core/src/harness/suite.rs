use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gen::{Calculus, GenConfig, TermGen};
use super::shrink::shrink;
use crate::error::{Error, Result};
use crate::relsem::{Bound, Factorization, InvarianceVerdict, Mode, Universe};
use crate::rewrite::{
    closes_quasi_strongly, commutes_strongly, contract_selected, development, is_normal, join, parallel_related, reach,
    Rewriting, B, BETA, BETAV, BETAV_GROUND, BETA_GROUND, B_GROUND, D, D_GROUND, V, V_GROUND,
};
use crate::syntax::{parse_bang, Ast, BangTerm, LambdaTerm};
use crate::translate::{
    cbn, cbn_inverse, cbv, cbv_inverse, check_equiv_preservation, check_simulation, classify, forgetful, ImageClass,
    SimMode, SimOptions, Translation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Rewrite,
    Translate,
    Relsem,
    All,
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rewrite" => Ok(SuiteName::Rewrite),
            "translate" => Ok(SuiteName::Translate),
            "relsem" => Ok(SuiteName::Relsem),
            "all" => Ok(SuiteName::All),
            _ => Err(Error::Mismatch(format!("unknown suite {s:?} (expected rewrite, translate, relsem or all)"))),
        }
    }
}

impl SuiteName {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Rewrite => "rewrite",
            SuiteName::Translate => "translate",
            SuiteName::Relsem => "relsem",
            SuiteName::All => "all",
        }
    }
}

/// Sizes and search limits shared by all properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest random λ-term for the translation properties.
    pub lambda_size: usize,
    /// Largest random bang term for the rewriting properties.
    pub bang_size: usize,
    /// Largest random term for the semantic properties.
    pub sem_size: usize,
    /// Terms expanded by a join or reachability search.
    pub join_budget: usize,
    /// Length of random reduction sequences.
    pub seq_len: usize,
    /// λ-terms visited per simulation check.
    pub sim_nodes: usize,
    /// Types allowed in derivations.
    pub sem_bound: Bound,
    /// Judgements compared by the invariance check.
    pub sem_window: Bound,
    /// Reduction steps explored by the invariance check.
    pub sem_steps: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        let sem_bound = Bound::new(3, 2, 11);
        Budgets {
            lambda_size: 25,
            bang_size: 12,
            sem_size: 10,
            join_budget: 10_000,
            seq_len: 5,
            sim_nodes: 50,
            sem_bound,
            sem_window: crate::relsem::invariance_window(sem_bound),
            sem_steps: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: usize,
    /// Replays the case with [`run_case`].
    pub seed: u64,
    pub term: String,
    pub shrunk: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub seed: u64,
    pub cases: usize,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.properties.iter().map(|p| p.failures.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

/// Shared state of one suite run.
pub struct Ctx {
    pub budgets: Budgets,
    universe: OnceLock<Result<Universe>>,
}

impl Ctx {
    pub fn new(budgets: Budgets) -> Self {
        Ctx { budgets, universe: OnceLock::new() }
    }

    fn universe(&self) -> std::result::Result<&Universe, String> {
        self.universe.get_or_init(|| Universe::new(self.budgets.sem_bound)).as_ref().map_err(|e| e.to_string())
    }
}

type Check = fn(&Ctx, &BangTerm, &mut ChaCha8Rng) -> std::result::Result<(), String>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Size {
    Lambda,
    Bang,
    Sem,
}

/// A named property over random terms.
pub struct Property {
    pub name: &'static str,
    pub suite: SuiteName,
    calculus: Calculus,
    size: Size,
    check: Check,
}

macro_rules! prop {
    ($suite:ident, $name:literal, $calc:ident, $size:ident, $f:expr) => {
        Property { name: $name, suite: SuiteName::$suite, calculus: Calculus::$calc, size: Size::$size, check: $f }
    };
}

/// Every property, grouped by suite.
pub fn properties() -> Vec<Property> {
    vec![
        prop!(Rewrite, "syntax.print_parse_roundtrip", Bang, Bang, print_parse_roundtrip),
        prop!(Rewrite, "syntax.substitution_free_vars", Bang, Bang, substitution_free_vars),
        prop!(Rewrite, "rewrite.ground_redexes", Bang, Bang, ground_redexes),
        prop!(Rewrite, "rewrite.quasi_strong_confluence", Bang, Bang, quasi_strong_confluence),
        prop!(Rewrite, "rewrite.commutation_d_v", Bang, Bang, commutation_d_v),
        prop!(Rewrite, "rewrite.confluence_b", Bang, Bang, confluence_b),
        prop!(Rewrite, "rewrite.development", Bang, Bang, development_closes),
        prop!(Rewrite, "rewrite.v_in_parallel", Bang, Bang, v_in_parallel),
        prop!(Rewrite, "rewrite.parallel_in_v_star", Bang, Bang, parallel_in_v_star),
        prop!(Translate, "translate.substitution", Lambda, Lambda, translation_substitution),
        prop!(Translate, "translate.cbv_v_normal", Lambda, Lambda, cbv_v_normal),
        prop!(Translate, "translate.inverses", Lambda, Lambda, inverses),
        prop!(Translate, "translate.simulation", Lambda, Lambda, simulation),
        prop!(Translate, "translate.cbn_normal_forms", Lambda, Lambda, cbn_normal_forms),
        prop!(Translate, "translate.forgetful_closure", Lambda, Lambda, forgetful_closure),
        prop!(Translate, "translate.equiv_preservation", Lambda, Lambda, equiv_preservation),
        prop!(Relsem, "relsem.factorization_cbn", Lambda, Sem, factorization_cbn),
        prop!(Relsem, "relsem.cbv_inclusion", Lambda, Sem, cbv_inclusion),
        prop!(Relsem, "relsem.cbv_macro_rules", Lambda, Sem, cbv_macro_rules),
        prop!(Relsem, "relsem.intv_multisets", Lambda, Sem, intv_multisets),
        prop!(Relsem, "relsem.monotonicity", Bang, Sem, monotonicity),
        prop!(Relsem, "relsem.alpha_invariance", Bang, Sem, alpha_invariance),
        prop!(Relsem, "relsem.invariance", Bang, Sem, invariance),
    ]
}

impl Property {
    fn config(&self, budgets: &Budgets, seed: u64) -> GenConfig {
        let max_size = match self.size {
            Size::Lambda => budgets.lambda_size,
            Size::Bang => budgets.bang_size,
            Size::Sem => budgets.sem_size,
        };
        GenConfig { max_size, var_pool: 3, closed: false, calculus: self.calculus, seed }
    }

    fn run_one(&self, ctx: &Ctx, case: usize, seed: u64) -> Option<Failure> {
        let t = TermGen::new(self.config(&ctx.budgets, seed)).next_term();
        let verdict = |u: &BangTerm| (self.check)(ctx, u, &mut ChaCha8Rng::seed_from_u64(seed ^ CHECK_SALT));
        let detail = verdict(&t).err()?;
        let fails = |u: &BangTerm| verdict(u).is_err();
        let small = shrink(&t, &fails);
        let detail = verdict(&small).err().unwrap_or(detail);
        Some(Failure { case, seed, term: t.to_string(), shrunk: small.to_string(), detail })
    }

    /// Runs `cases` cases in parallel; the report does not depend on the
    /// thread count.
    pub fn run(&self, ctx: &Ctx, cases: usize, seed: u64) -> PropertyReport {
        let start = Instant::now();
        let failures: Vec<Failure> =
            (0..cases).into_par_iter().filter_map(|i| self.run_one(ctx, i, case_seed(seed, self.name, i))).collect();
        PropertyReport { name: self.name.to_string(), cases, failures, elapsed_ms: start.elapsed().as_millis() as u64 }
    }
}

const CHECK_SALT: u64 = 0x5eed_0fc4ec;

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The seed of case `i` of a property, independent of scheduling.
pub fn case_seed(seed: u64, property: &str, i: usize) -> u64 {
    let name = property.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    mix(mix(seed ^ name) ^ i as u64)
}

pub fn find_property(name: &str) -> Option<Property> {
    properties().into_iter().find(|p| p.name == name)
}

/// Replays one case from the seed recorded in a [`Failure`].
pub fn run_case(property: &str, seed: u64, budgets: Budgets) -> Result<Option<Failure>> {
    let p = find_property(property).ok_or_else(|| Error::Mismatch(format!("unknown property {property:?}")))?;
    Ok(p.run_one(&Ctx::new(budgets), 0, seed))
}

/// Runs every property of `name` on `cases` random terms each.
pub fn run_suite(name: SuiteName, cases: usize, seed: u64, budgets: Budgets) -> SuiteReport {
    let ctx = Ctx::new(budgets);
    let properties = properties()
        .into_iter()
        .filter(|p| name == SuiteName::All || p.suite == name)
        .map(|p| p.run(&ctx, cases, seed))
        .collect();
    SuiteReport { suite: name, seed, cases, properties }
}

type Verdict = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lambda(t: &BangTerm) -> std::result::Result<LambdaTerm, String> {
    LambdaTerm::from_bang(t.clone()).ok_or_else(|| format!("{t} is not a λ-term"))
}

fn vars_of(t: &BangTerm) -> Vec<String> {
    t.free_vars().iter().map(|x| x.to_string()).collect()
}

/// A random sequence of at most `n` steps, stopping early at normal forms.
fn random_walk<R: Rewriting>(rel: &R, t: &R::Term, n: usize, rng: &mut ChaCha8Rng) -> Vec<R::Term> {
    let mut out = vec![t.clone()];
    let len = rng.gen_range(0..=n);
    for _ in 0..len {
        let rs = rel.reducts(out.last().expect("nonempty"));
        match rs.choose(rng) {
            Some((_, s)) => out.push(s.clone()),
            None => break,
        }
    }
    out
}

fn small_term(rng: &mut ChaCha8Rng, calculus: Calculus) -> BangTerm {
    let cfg = GenConfig { max_size: 4, var_pool: 3, closed: false, calculus, seed: rng.gen() };
    TermGen::new(cfg).next_term()
}

fn print_parse_roundtrip(_: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let text = t.to_string();
    let back = parse_bang(&text).map_err(|e| format!("{text:?} does not parse: {e}"))?;
    ensure(&back == t, || format!("{text:?} parses to {back}"))?;
    let json = serde_json::to_string(&Ast::from_term(t)).map_err(|e| e.to_string())?;
    let ast: Ast = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    ensure(&ast.to_term() == t, || format!("JSON round trip of {text} gives {}", ast.to_term()))
}

fn substitution_free_vars(_: &Ctx, t: &BangTerm, rng: &mut ChaCha8Rng) -> Verdict {
    let fv = t.free_vars();
    let x = fv.iter().next().map_or("a".to_string(), |x| x.to_string());
    let s = small_term(rng, Calculus::Bang);
    let r = t.substitute(&x, &s);
    let mut want = fv.clone();
    if want.remove(x.as_str()) {
        want.extend(s.free_vars());
    }
    ensure(r.free_vars() == want, || format!("FV({t}[{s}/{x}]) = {:?}, expected {want:?}", r.free_vars()))?;
    ensure(t.substitute(&x, &BangTerm::var(&x)) == *t, || format!("{t}[{x}/{x}] changed the term"))
}

fn ground_redexes(_: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    for (g, f) in [(V_GROUND, V), (D_GROUND, D), (B_GROUND, B)] {
        let full = f.redexes(t);
        for r in g.redexes(t) {
            ensure(full.iter().any(|q| q.position == r.position && q.kind == r.kind), || {
                format!("ground redex {} at {} is not a redex", r.kind, r.position)
            })?;
            ensure(!t.path_under_box(&r.position), || format!("ground redex at {} is under a box", r.position))?;
        }
        for r in &full {
            let ground = !t.path_under_box(&r.position);
            ensure(r.ground == ground, || format!("redex at {} has the wrong ground flag", r.position))?;
        }
    }
    Ok(())
}

fn peaks<R: Rewriting>(rel: &R, t: &R::Term) -> Vec<(R::Term, R::Term)> {
    let rs: Vec<R::Term> = rel.reducts(t).into_iter().map(|(_, s)| s).collect();
    let mut out = Vec::new();
    for (i, a) in rs.iter().enumerate() {
        for b in &rs[i + 1..] {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

fn quasi_strong_confluence(_: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    for (name, rel) in [("ground v", V_GROUND), ("ground d", D_GROUND), ("d", D), ("ground b", B_GROUND)] {
        for (a, b) in peaks(&rel, t) {
            ensure(closes_quasi_strongly(&rel, &a, &b), || {
                format!("{name} peak {a} <- {t} -> {b} does not close in one step")
            })?;
        }
    }
    Ok(())
}

fn commutation_d_v(ctx: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    for (ground, drel, vrel) in [(true, D_GROUND, V_GROUND), (false, D, V)] {
        for (_, sd) in drel.reducts(t) {
            for (_, sv) in vrel.reducts(t) {
                let ok = if ground {
                    commutes_strongly(&drel, &vrel, &sd, &sv)
                } else {
                    // the v-side may need several d-steps
                    vrel.reducts(&sd).iter().any(|(_, u)| reach(&drel, &sv, u, ctx.budgets.join_budget).is_some())
                };
                ensure(ok, || format!("d-step to {sd} and v-step to {sv} from {t} do not commute (ground: {ground})"))?;
            }
        }
    }
    Ok(())
}

fn confluence_b(ctx: &Ctx, t: &BangTerm, rng: &mut ChaCha8Rng) -> Verdict {
    let n = ctx.budgets.seq_len;
    let a = random_walk(&B, t, n, rng);
    let b = random_walk(&B, t, n, rng);
    let (x, y) = (a.last().expect("nonempty"), b.last().expect("nonempty"));
    ensure(join(&B, x, y, ctx.budgets.join_budget).is_some(), || {
        format!("{x} and {y} (after {} and {} steps) have no common reduct within budget", a.len() - 1, b.len() - 1)
    })
}

fn random_parallel_step(t: &BangTerm, rng: &mut ChaCha8Rng) -> BangTerm {
    contract_selected(t, &mut |_| rng.gen_bool(0.5))
}

fn development_closes(_: &Ctx, t: &BangTerm, rng: &mut ChaCha8Rng) -> Verdict {
    let s = random_parallel_step(t, rng);
    ensure(parallel_related(t, &s), || format!("{t} => {s} is not recognised as a parallel step"))?;
    let dev = development(t);
    ensure(parallel_related(&s, &dev), || format!("{s} does not parallel-reduce to the development {dev} of {t}"))
}

fn v_in_parallel(_: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    for (r, s) in V.reducts(t) {
        ensure(parallel_related(t, &s), || format!("the v-step at {} to {s} is not a parallel step", r.position))?;
    }
    Ok(())
}

fn parallel_in_v_star(ctx: &Ctx, t: &BangTerm, rng: &mut ChaCha8Rng) -> Verdict {
    let s = random_parallel_step(t, rng);
    ensure(reach(&V, t, &s, ctx.budgets.join_budget).is_some(), || format!("{t} => {s} but no v-sequence found"))
}

fn translation_substitution(_: &Ctx, t: &BangTerm, rng: &mut ChaCha8Rng) -> Verdict {
    let t = lambda(t)?;
    let x = t.free_vars().iter().next().map_or("a".to_string(), |x| x.to_string());
    let u = lambda(&small_term(rng, Calculus::Lambda))?;
    let lhs = cbn(&t.substitute(&x, &u));
    let rhs = cbn(&t).substitute(&x, &cbn(&u));
    ensure(lhs == rhs, || format!("cbn({t}[{u}/{x}]) = {lhs}, but cbn({t})[cbn({u})/{x}] = {rhs}"))?;
    // a value: the CbV translation substitutes what sits under its box
    let v = if u.is_value() { u } else { LambdaTerm::lam("z", u) };
    let inner = match cbv(&v) {
        BangTerm::Bang(b) => *b,
        other => return Err(format!("cbv of the value {v} is {other}, not a box")),
    };
    let lhs = cbv(&t.substitute(&x, &v));
    let rhs = cbv(&t).substitute(&x, &inner);
    ensure(lhs == rhs, || format!("cbv({t}[{v}/{x}]) = {lhs}, but substituting in cbv({t}) gives {rhs}"))
}

fn cbv_v_normal(_: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let t = lambda(t)?;
    let c = cbv(&t);
    ensure(is_normal(&V, &c), || format!("cbv({t}) = {c} has a v-redex"))
}

fn inverses(_: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let t = lambda(t)?;
    let n = cbn(&t);
    ensure(classify(&n, ImageClass::CbnImage), || format!("cbn({t}) = {n} is outside the CbN grammar"))?;
    ensure(cbn_inverse(&n).as_ref() == Ok(&t), || format!("cbn_inverse(cbn({t})) = {:?}", cbn_inverse(&n)))?;
    let v = cbv(&t);
    ensure(classify(&v, ImageClass::CbvClosure), || format!("cbv({t}) = {v} is outside the CbV grammar"))?;
    ensure(cbv_inverse(&v).as_ref() == Ok(&t), || format!("cbv_inverse(cbv({t})) = {:?}", cbv_inverse(&v)))?;
    ensure(forgetful(&v).as_ref() == Ok(&t), || format!("forgetful(cbv({t})) = {:?}", forgetful(&v)))
}

fn simulation(ctx: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let t = lambda(t)?;
    let opts = SimOptions { exhaustive: true, node_budget: ctx.budgets.sim_nodes, ..SimOptions::default() };
    for mode in SimMode::ALL {
        if let Some(r) = check_simulation(&t, mode, opts).into_iter().find(|r| !r.is_match()) {
            return Err(format!("{mode:?} {:?} on {}: {:?}", r.direction, r.source, r.verdict));
        }
    }
    Ok(())
}

fn cbn_normal_forms(_: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let t = lambda(t)?;
    let n = cbn(&t);
    ensure(is_normal(&BETA, &t) == is_normal(&B, &n), || {
        format!("β-normality of {t} differs from b-normality of {n}")
    })?;
    ensure(is_normal(&BETA_GROUND, &t) == is_normal(&B_GROUND, &n), || {
        format!("ground β-normality of {t} differs from ground b-normality of {n}")
    })
}

fn forgetful_closure(ctx: &Ctx, t: &BangTerm, rng: &mut ChaCha8Rng) -> Verdict {
    let t = lambda(t)?;
    let walk = random_walk(&B, &cbv(&t), ctx.budgets.seq_len, rng);
    let mut prev = t;
    for s in &walk[1..] {
        ensure(classify(s, ImageClass::CbvClosure), || format!("{s} left the CbV grammar"))?;
        let f = forgetful(s).map_err(|e| format!("forgetful({s}): {e}"))?;
        let ok = f == prev || BETAV.reducts(&prev).iter().any(|(_, r)| *r == f);
        ensure(ok, || format!("forgetful({s}) = {f} is not {prev} or one βv-step from it"))?;
        prev = f;
    }
    Ok(())
}

fn equiv_preservation(ctx: &Ctx, t: &BangTerm, rng: &mut ChaCha8Rng) -> Verdict {
    let t = lambda(t)?;
    for (mode, rel) in [(Translation::Cbn, BETA_GROUND), (Translation::Cbv, BETAV_GROUND)] {
        let walk = random_walk(&rel, &t, 3, rng);
        let u = walk.last().expect("nonempty");
        if let Err(e) = check_equiv_preservation(&t, u, mode, ctx.budgets.join_budget) {
            return Err(format!("{mode:?}: {t} and {u}: {e}"));
        }
    }
    Ok(())
}

fn factorization_cbn(ctx: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let u = ctx.universe()?;
    let l = lambda(t)?;
    match u.check_factorization_cbn(&l, &vars_of(t)).map_err(|e| e.to_string())? {
        Factorization::Equal { .. } => Ok(()),
        Factorization::Counterexample { judgement, in_psem } => {
            Err(format!("{judgement:?} is {} only", if in_psem { "in Psem(cbn t)" } else { "in the CbN oracle" }))
        }
    }
}

fn cbv_inclusion(ctx: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let u = ctx.universe()?;
    let r = u.check_cbv_inclusion(&lambda(t)?, &vars_of(t)).map_err(|e| e.to_string())?;
    ensure(r.inclusion_holds, || format!("{:?} is in Intv but not in Psem(cbv t)", r.missing.first()))
}

fn cbv_macro_rules(ctx: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let u = ctx.universe()?;
    let l = lambda(t)?;
    let vars = vars_of(t);
    let direct = u.interpret(Mode::Psem, &cbv(&l), &vars).map_err(|e| e.to_string())?;
    let derived = u.psem_cbv_macro(&l, &vars).map_err(|e| e.to_string())?;
    ensure(direct == derived, || {
        let d = direct.judgements.symmetric_difference(&derived.judgements).next().cloned();
        format!("derived rules disagree with Psem(cbv t) on {d:?}")
    })
}

fn intv_multisets(ctx: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let u = ctx.universe()?;
    let s = u.interpret(Mode::Intv, t, &vars_of(t)).map_err(|e| e.to_string())?;
    let bad = s.types().find(|ty| !ty.is_mset()).cloned();
    match bad {
        Some(ty) => Err(format!("Intv contains the non-multiset type {ty}")),
        None => Ok(()),
    }
}

fn monotonicity(ctx: &Ctx, t: &BangTerm, rng: &mut ChaCha8Rng) -> Verdict {
    let big = ctx.budgets.sem_bound;
    let small = Bound::new(
        rng.gen_range(0..=big.max_depth),
        rng.gen_range(0..=big.max_width),
        rng.gen_range(0..=big.budget.min(8)),
    );
    let vars = vars_of(t);
    let lo = crate::relsem::interpret(Mode::Psem, t, &vars, small).map_err(|e| e.to_string())?;
    let hi = ctx.universe()?.interpret(Mode::Psem, t, &vars).map_err(|e| e.to_string())?;
    match lo.judgements.difference(&hi.judgements).next() {
        Some(j) => Err(format!("{j:?} is derivable at {small} but not at {big}")),
        None => Ok(()),
    }
}

fn rehint(t: &BangTerm) -> BangTerm {
    match t {
        BangTerm::Var(_) => t.clone(),
        BangTerm::Lam(_, b) => BangTerm::Lam("r".into(), Box::new(rehint(b))),
        BangTerm::App(f, a) => BangTerm::app(rehint(f), rehint(a)),
        BangTerm::Der(b) => BangTerm::der(rehint(b)),
        BangTerm::Bang(b) => BangTerm::bang(rehint(b)),
    }
}

fn alpha_invariance(ctx: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let renamed = parse_bang(&rehint(t).to_string()).map_err(|e| e.to_string())?;
    let u = ctx.universe()?;
    let vars = vars_of(t);
    let a = u.interpret(Mode::Psem, t, &vars).map_err(|e| e.to_string())?;
    let b = u.interpret(Mode::Psem, &renamed, &vars).map_err(|e| e.to_string())?;
    ensure(a == b, || format!("{t} and its renaming {renamed} have different interpretations"))
}

fn invariance(ctx: &Ctx, t: &BangTerm, _: &mut ChaCha8Rng) -> Verdict {
    let u = ctx.universe()?;
    let r =
        u.check_invariance(t, ctx.budgets.sem_steps, &vars_of(t), ctx.budgets.sem_window).map_err(|e| e.to_string())?;
    match r.reducts.iter().find(|p| p.verdict != InvarianceVerdict::Equal) {
        Some(p) => Err(format!("reduct {} after {} steps: {:?}", p.reduct, p.steps, p.verdict)),
        None => Ok(()),
    }
}
