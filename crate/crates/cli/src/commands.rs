use std::fmt::Write as _;
use std::io::{Read, Write as _};
use std::process::ExitCode;

use bangcalc::harness::{self, Budgets, SuiteName};
use bangcalc::relsem::{self, Bound, Factorization, InvarianceVerdict, Mode, Universe};
use bangcalc::rewrite::{
    closes_quasi_strongly, join, reduce, BangRelation, BangRule, LambdaRelation, LambdaRule, Rewriting, Strategy, B,
    B_GROUND,
};
use bangcalc::syntax::{parse_bang, parse_lambda, Ast, BangTerm};
use bangcalc::translate::{self, SimMode, SimOptions, Translation};
use bangcalc::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Calculus, Check, Cli, Command, Format, Relation, SimModeArg, Suite, System};

pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

/// How a successful run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Inconclusive,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::Failed => ExitCode::from(EXIT_FAILED),
            Status::Inconclusive => ExitCode::from(EXIT_INCONCLUSIVE),
        }
    }
}

type Outcome = Result<Status, Error>;

fn read_arg(s: &str) -> Result<String, Error> {
    if s != "-" {
        return Ok(s.to_string());
    }
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf).map_err(|e| Error::Mismatch(format!("reading standard input: {e}")))?;
    Ok(buf.trim().to_string())
}

fn bang(s: &str) -> Result<BangTerm, Error> {
    parse_bang(&read_arg(s)?)
}

fn lambda(s: &str) -> Result<bangcalc::syntax::LambdaTerm, Error> {
    parse_lambda(&read_arg(s)?)
}

/// Serializes through `Value`, whose maps keep keys sorted.
fn to_json<T: Serialize>(x: &T) -> String {
    let v: Value = serde_json::to_value(x).expect("serializable report");
    serde_json::to_string_pretty(&v).expect("printable JSON")
}

// A closed pipe is not an error worth reporting.
fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Json => to_json(report),
        Format::Text => text().trim_end().to_string(),
    };
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn vars_or_free(vars: &Option<Vec<String>>, t: &BangTerm) -> Vec<String> {
    match vars {
        Some(v) => v.clone(),
        None => t.free_vars().iter().map(|x| x.to_string()).collect(),
    }
}

fn bound(b: &crate::BoundArgs) -> Bound {
    Bound::new(b.depth, b.width, b.budget)
}

pub fn run(cli: &Cli) -> Outcome {
    let f = cli.format;
    match &cli.command {
        Command::Parse { term, lambda: lam } => {
            let t = if *lam { lambda(term)?.into_bang() } else { bang(term)? };
            emit(f, &Ast::from_term(&t), || t.to_string());
            Ok(Status::Ok)
        }
        Command::Print { input } => {
            let text = read_arg(input)?;
            let t = if text.trim_start().starts_with('{') {
                let ast: Ast =
                    serde_json::from_str(&text).map_err(|e| Error::Mismatch(format!("invalid syntax tree: {e}")))?;
                ast.to_term()
            } else {
                parse_bang(&text)?
            };
            emit(f, &t.to_string(), || t.to_string());
            Ok(Status::Ok)
        }
        Command::Reduce { term, calculus, relation, ground, max_steps, no_cycles } => {
            let detect = !no_cycles;
            match (calculus, relation) {
                (Calculus::Bang, Relation::V | Relation::D | Relation::B) => {
                    let rule = match relation {
                        Relation::V => BangRule::V,
                        Relation::D => BangRule::D,
                        _ => BangRule::B,
                    };
                    let rel = BangRelation::new(rule, *ground);
                    let tr = reduce(&rel, &bang(term)?, Strategy::LeftmostOutermost, *max_steps, detect);
                    emit(f, &tr, || tr.to_string());
                }
                (Calculus::Lambda, Relation::Beta | Relation::Betav) => {
                    let rule = if *relation == Relation::Beta { LambdaRule::Beta } else { LambdaRule::BetaV };
                    let rel = LambdaRelation::new(rule, *ground);
                    let tr = reduce(&rel, &lambda(term)?, Strategy::LeftmostOutermost, *max_steps, detect);
                    emit(f, &tr, || tr.to_string());
                }
                (c, r) => {
                    return Err(Error::Mismatch(
                        format!("relation {r:?} is not defined for the {c:?} calculus").to_lowercase(),
                    ))
                }
            }
            Ok(Status::Ok)
        }
        Command::Translate { term, which } => {
            let t = lambda(term)?;
            let mode = if which.cbn { Translation::Cbn } else { Translation::Cbv };
            let out = mode.apply(&t);
            emit(f, &out, || out.to_string());
            Ok(Status::Ok)
        }
        Command::Untranslate { term, which } => {
            let t = bang(term)?;
            let out = if which.cbn { translate::cbn_inverse(&t) } else { translate::forgetful(&t) };
            match out {
                Ok(l) => {
                    emit(f, &l, || l.to_string());
                    Ok(Status::Ok)
                }
                Err(e) => {
                    emit(f, &json!({ "error": e.to_string() }), || e.to_string());
                    Ok(Status::Failed)
                }
            }
        }
        Command::Check { check } => run_check(f, check),
        Command::Types { term, system, bound: b, vars } => {
            let b = bound(b);
            let Some(term) = term else {
                let types = relsem::enumerate_types(b)?;
                emit(f, &types, || {
                    types.iter().fold(String::new(), |mut s, t| {
                        let _ = writeln!(s, "{t}");
                        s
                    })
                });
                return Ok(Status::Ok);
            };
            let (t, mode) = match system {
                System::Bang => (bang(term)?, Mode::Psem),
                System::Cbv => (lambda(term)?.into_bang(), Mode::Intv),
                System::Cbn => (lambda(term)?.into_bang(), Mode::IntnOracle),
            };
            let vars = vars_or_free(vars, &t);
            let set = relsem::interpret(mode, &t, &vars, b)?;
            emit(f, &set, || {
                let mut s = String::new();
                for j in &set.judgements {
                    let _ = writeln!(s, "{}", fmt_judgement(&vars, j));
                }
                let _ = write!(s, "{} judgement(s)", set.len());
                s
            });
            Ok(Status::Ok)
        }
        Command::Suite { name, cases, seed, property, replay } => {
            let seed = match std::env::var("BANGCALC_SEED") {
                Ok(s) => {
                    s.trim().parse().map_err(|_| Error::Mismatch(format!("BANGCALC_SEED is not an integer: {s:?}")))?
                }
                Err(_) => *seed,
            };
            if let (Some(p), Some(r)) = (property, replay) {
                let failure = harness::run_case(p, *r, Budgets::default())?;
                emit(f, &failure, || match &failure {
                    Some(fl) => format!("FAIL {p}: {} (shrunk to {}): {}", fl.term, fl.shrunk, fl.detail),
                    None => format!("PASS {p} (seed {r})"),
                });
                return Ok(if failure.is_some() { Status::Failed } else { Status::Ok });
            }
            let name = match name {
                Suite::Rewrite => SuiteName::Rewrite,
                Suite::Translate => SuiteName::Translate,
                Suite::Relsem => SuiteName::Relsem,
                Suite::All => SuiteName::All,
            };
            let report = harness::run_suite(name, *cases, seed, Budgets::default());
            emit(f, &report, || {
                let mut s = String::new();
                for p in &report.properties {
                    let tag = if p.passed() { "PASS" } else { "FAIL" };
                    let _ = writeln!(s, "{tag} {:<36} {:>5} cases {:>7} ms", p.name, p.cases, p.elapsed_ms);
                    for fl in &p.failures {
                        let _ =
                            writeln!(s, "     seed {}: {} (shrunk to {}): {}", fl.seed, fl.term, fl.shrunk, fl.detail);
                    }
                }
                let _ = write!(s, "{} failure(s), seed {}", report.failures(), report.seed);
                s
            });
            Ok(if report.passed() { Status::Ok } else { Status::Failed })
        }
    }
}

fn run_check(f: Format, check: &Check) -> Outcome {
    match check {
        Check::Simulation { term, mode, exhaustive, max_steps, nodes } => {
            let t = lambda(term)?;
            let modes: Vec<SimMode> = match mode {
                SimModeArg::All => SimMode::ALL.to_vec(),
                SimModeArg::Cbn => vec![SimMode::Cbn],
                SimModeArg::CbnGround => vec![SimMode::CbnGround],
                SimModeArg::Cbv => vec![SimMode::Cbv],
                SimModeArg::CbvGround => vec![SimMode::CbvGround],
            };
            let opts = SimOptions { max_steps: *max_steps, exhaustive: *exhaustive, node_budget: *nodes };
            let reports: Vec<_> = modes.iter().flat_map(|m| translate::check_simulation(&t, *m, opts)).collect();
            let ok = reports.iter().all(|r| r.is_match());
            emit(f, &reports, || {
                let mut s = String::new();
                for r in &reports {
                    let verdict = match &r.verdict {
                        translate::Verdict::Matched => "matched".to_string(),
                        translate::Verdict::Mismatch(m) => format!("MISMATCH: {m}"),
                    };
                    let step = r
                        .source_step
                        .as_ref()
                        .map_or("-".to_string(), |st| format!("{} at {}", st.redex.kind, st.redex.position));
                    let _ = writeln!(s, "{:?} {:?} {} [{}]: {}", r.mode, r.direction, r.source, step, verdict);
                }
                let _ = write!(
                    s,
                    "{} correspondence(s), {}",
                    reports.len(),
                    if ok { "all matched" } else { "mismatches found" }
                );
                s
            });
            Ok(if ok { Status::Ok } else { Status::Failed })
        }
        Check::Confluence { term, steps, samples, budget, seed } => {
            check_confluence(f, &bang(term)?, *steps, *samples, *budget, *seed)
        }
        Check::Equiv { left, right, which, budget } => {
            let (t, u) = (lambda(left)?, lambda(right)?);
            let mode = if which.cbn { Translation::Cbn } else { Translation::Cbv };
            match translate::check_equiv_preservation(&t, &u, mode, *budget) {
                Ok(j) => {
                    emit(f, &j, || format!("common reduct {}\nleft:\n{}\nright:\n{}", j.common, j.left, j.right));
                    Ok(Status::Ok)
                }
                Err(e @ Error::Inconclusive { .. }) => {
                    emit(f, &json!({ "inconclusive": e.to_string() }), || e.to_string());
                    Ok(Status::Inconclusive)
                }
                Err(e) => Err(e),
            }
        }
        Check::Factorization { term, bound: b, vars } => {
            let t = lambda(term)?;
            let vars = vars_or_free(vars, t.as_bang());
            let r = relsem::check_factorization_cbn(&t, &vars, bound(b))?;
            let ok = matches!(r, Factorization::Equal { .. });
            emit(f, &r, || match &r {
                Factorization::Equal { judgements } => format!("equal: {judgements} judgement(s)"),
                Factorization::Counterexample { judgement, in_psem } => format!(
                    "counterexample: {} only in {}",
                    fmt_judgement(&vars, judgement),
                    if *in_psem { "Psem(cbn t)" } else { "the CbN interpretation" }
                ),
            });
            Ok(if ok { Status::Ok } else { Status::Failed })
        }
        Check::Inclusion { term, bound: b, vars } => {
            let t = lambda(term)?;
            let vars = vars_or_free(vars, t.as_bang());
            let r = relsem::check_cbv_inclusion(&t, &vars, bound(b))?;
            emit(f, &r, || {
                let mut s = format!(
                    "inclusion {}: {} CbV judgement(s), {} bang judgement(s)\n",
                    if r.inclusion_holds { "holds" } else { "FAILS" },
                    r.intv_size,
                    r.psem_size
                );
                for j in &r.missing {
                    let _ = writeln!(s, "missing: {}", fmt_judgement(&vars, j));
                }
                for j in &r.strict_witnesses {
                    let _ = writeln!(s, "strict: {}", fmt_judgement(&vars, j));
                }
                s
            });
            Ok(if r.inclusion_holds { Status::Ok } else { Status::Failed })
        }
        Check::Invariance { term, steps, bound: b, window_budget, vars } => {
            let t = bang(term)?;
            let vars = vars_or_free(vars, &t);
            let b = bound(b);
            let window = match window_budget {
                Some(w) => Bound::new(b.max_depth, b.max_width, *w),
                None => relsem::invariance_window(b),
            };
            let r = Universe::new(b)?.check_invariance(&t, *steps, &vars, window)?;
            emit(f, &r, || {
                let mut s = format!("window {}, derivations within {}\n", r.window, r.bound);
                for p in &r.reducts {
                    let v = match &p.verdict {
                        InvarianceVerdict::Equal => "equal".to_string(),
                        InvarianceVerdict::Counterexample { judgement } => {
                            format!("COUNTEREXAMPLE {}", fmt_judgement(&vars, judgement))
                        }
                        InvarianceVerdict::BoundLimited { judgement } => {
                            format!("bound-limited {}", fmt_judgement(&vars, judgement))
                        }
                    };
                    let _ = writeln!(s, "{} step(s): {}: {}", p.steps, p.reduct, v);
                }
                let _ = write!(s, "{} reduct(s)", r.reducts.len());
                s
            });
            Ok(if r.has_counterexample() {
                Status::Failed
            } else if r.all_equal() {
                Status::Ok
            } else {
                Status::Inconclusive
            })
        }
    }
}

/// `x : a, y : b |- t`
fn fmt_judgement(vars: &[String], j: &relsem::Judgement) -> String {
    let parts: Vec<String> = vars.iter().zip(&j.env).map(|(x, m)| format!("{x} : {m}")).collect();
    if parts.is_empty() {
        format!("|- {}", j.ty)
    } else {
        format!("{} |- {}", parts.join(", "), j.ty)
    }
}

#[derive(Serialize)]
struct PeakFailure {
    left: String,
    right: String,
    relation: &'static str,
}

#[derive(Serialize)]
struct ConfluenceReport {
    term: String,
    ground_peaks: usize,
    full_peaks: usize,
    sequence_pairs: usize,
    failures: Vec<PeakFailure>,
}

fn check_confluence(f: Format, t: &BangTerm, steps: usize, samples: usize, budget: usize, seed: u64) -> Outcome {
    let mut failures = Vec::new();
    let pairs = |rel: &BangRelation| {
        let rs: Vec<BangTerm> = rel.reducts(t).into_iter().map(|(_, s)| s).collect();
        let mut out = Vec::new();
        for (i, a) in rs.iter().enumerate() {
            for b in &rs[i + 1..] {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    };
    let ground = pairs(&B_GROUND);
    for (a, b) in &ground {
        if !closes_quasi_strongly(&B_GROUND, a, b) {
            failures.push(PeakFailure { left: a.to_string(), right: b.to_string(), relation: "ground b, one step" });
        }
    }
    let full = pairs(&B);
    for (a, b) in &full {
        if join(&B, a, b, budget).is_none() {
            failures.push(PeakFailure { left: a.to_string(), right: b.to_string(), relation: "b" });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let walk = |rng: &mut ChaCha8Rng| {
        let mut cur = t.clone();
        for _ in 0..rng.gen_range(0..=steps) {
            match B.reducts(&cur).choose(rng) {
                Some((_, s)) => cur = s.clone(),
                None => break,
            }
        }
        cur
    };
    for _ in 0..samples {
        let (a, b) = (walk(&mut rng), walk(&mut rng));
        if join(&B, &a, &b, budget).is_none() {
            failures.push(PeakFailure { left: a.to_string(), right: b.to_string(), relation: "b, sequences" });
        }
    }
    let report = ConfluenceReport {
        term: t.to_string(),
        ground_peaks: ground.len(),
        full_peaks: full.len(),
        sequence_pairs: samples,
        failures,
    };
    let ok = report.failures.is_empty();
    emit(f, &report, || {
        let mut s = format!(
            "{} ground peak(s), {} peak(s), {} sequence pair(s)\n",
            report.ground_peaks, report.full_peaks, report.sequence_pairs
        );
        for p in &report.failures {
            let _ = writeln!(s, "not joined ({}): {} and {}", p.relation, p.left, p.right);
        }
        let _ = write!(s, "{}", if ok { "all joined" } else { "FAILURES" });
        s
    });
    Ok(if ok { Status::Ok } else { Status::Failed })
}
