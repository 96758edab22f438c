//! The library against the reference implementations in `common`.

mod common;

use std::collections::BTreeSet;

use bangcalc::harness::{Calculus, GenConfig, TermGen};
use bangcalc::relsem::{count_types, enumerate_types, Bound, Mode, RelType, System, TypeEnv, TypeMultiset, Universe};
use bangcalc::rewrite::{
    development, parallel_reducts, Rewriting, B, BETA, BETAV, BETAV_GROUND, BETA_GROUND, B_GROUND, D, D_GROUND, V,
    V_GROUND,
};
use bangcalc::syntax::{BangTerm, LambdaTerm};
use bangcalc::translate::{cbn, cbv, forgetful};
use common::types::{all_types, from_judgement, from_rel, Jdg, Oracle, Sys};
use common::{Root, N};

fn bang_corpus(n: usize, size: usize, seed: u64) -> Vec<BangTerm> {
    TermGen::new(GenConfig::new(Calculus::Bang, size, seed)).take(n).collect()
}

fn lambda_corpus(n: usize, size: usize, seed: u64) -> Vec<LambdaTerm> {
    let mut g = TermGen::new(GenConfig::new(Calculus::Lambda, size, seed));
    (0..n).map(|_| g.next_lambda()).collect()
}

#[test]
fn type_counts_match_brute_force() {
    // (depth, width, budget) and the frozen brute-force count
    let frozen: [((usize, usize, usize), u64); 6] =
        [((0, 0, 5), 1), ((1, 1, 5), 15), ((2, 1, 8), 142), ((2, 2, 7), 176), ((3, 2, 9), 1_322), ((3, 2, 11), 10_640)];
    for ((d, w, b), expected) in frozen {
        let bound = Bound::new(d, w, b);
        let brute = all_types(bound);
        assert_eq!(brute.len() as u64, expected, "brute force at {bound}");
        assert_eq!(count_types(bound), expected, "count_types at {bound}");
        let lib: BTreeSet<_> = enumerate_types(bound).unwrap().iter().map(from_rel).collect();
        let brute: BTreeSet<_> = brute.into_iter().collect();
        assert_eq!(lib, brute, "enumerate_types at {bound}");
    }
}

#[test]
fn enumerated_types_respect_the_bound() {
    let bound = Bound::new(2, 2, 7);
    for t in enumerate_types(bound).unwrap() {
        let o = from_rel(&t);
        assert_eq!((t.depth(), t.width(), t.size()), (o.depth(), o.width(), o.size()), "{t}");
        assert!(t.within(&bound));
    }
}

fn library_set(u: &Universe, mode: Mode, t: &BangTerm, vars: &[String]) -> BTreeSet<Jdg> {
    u.interpret(mode, t, vars).unwrap().judgements.iter().map(|j| from_judgement(j, vars)).collect()
}

fn vars_of(t: &BangTerm) -> Vec<String> {
    t.free_vars().iter().map(|x| x.to_string()).collect()
}

const SMALL: Bound = Bound::new(2, 2, 7);

#[test]
fn bang_interpretation_matches_naive_derivations() {
    let u = Universe::new(SMALL).unwrap();
    let o = Oracle::new(SMALL);
    for t in bang_corpus(150, 7, 11) {
        let vars = vars_of(&t);
        let naive = o.judgements(Sys::Bang, &common::from_term(&t), SMALL.max_width);
        assert_eq!(library_set(&u, Mode::Psem, &t, &vars), naive, "{t}");
    }
}

#[test]
fn cbv_and_cbn_interpretations_match_naive_derivations() {
    let u = Universe::new(SMALL).unwrap();
    let o = Oracle::new(SMALL);
    for t in lambda_corpus(150, 7, 12) {
        let b = t.as_bang();
        let vars = vars_of(b);
        let n = common::from_term(b);
        assert_eq!(library_set(&u, Mode::Intv, b, &vars), o.judgements(Sys::Cbv, &n, SMALL.max_width), "Intv {t}");
        assert_eq!(
            library_set(&u, Mode::IntnOracle, b, &vars),
            o.judgements(Sys::Cbn, &n, SMALL.max_width),
            "Intn {t}"
        );
    }
}

fn env_of(vars: &[String], ms: &[TypeMultiset]) -> TypeEnv {
    vars.iter().zip(ms).fold(TypeEnv::new(), |e, (x, m)| e.with(x, m.clone()))
}

#[test]
fn derivability_matches_naive_derivations() {
    let bound = Bound::new(2, 1, 6);
    let u = Universe::new(bound).unwrap();
    let o = Oracle::new(bound);
    let types = u.types();
    for t in bang_corpus(80, 6, 13) {
        let n = common::from_term(&t);
        let naive = o.judgements(Sys::Bang, &n, bound.max_width);
        let vars = vars_of(&t);
        // every naive judgement is derivable
        for j in u.interpret(Mode::Psem, &t, &vars).unwrap().judgements {
            assert!(naive.contains(&from_judgement(&j, &vars)));
            assert!(u.derivable(System::Bang, &env_of(&vars, &j.env), &t, &j.ty).unwrap(), "{t}: {j:?}");
        }
        // for closed terms, every other type is underivable
        if vars.is_empty() {
            for ty in &types {
                let expected = naive.contains(&(Default::default(), from_rel(ty)));
                assert_eq!(u.derivable(System::Bang, &TypeEnv::new(), &t, ty).unwrap(), expected, "{t} : {ty}");
            }
        }
    }
}

#[test]
fn named_examples_of_the_interpretations() {
    let u = Universe::new(SMALL).unwrap();
    let o = Oracle::new(SMALL);
    let none: [String; 0] = [];
    // identity: [α] -o α for every α with [α] in bound
    let id = bangcalc::syntax::parse_bang(r"\x. x").unwrap();
    let ps = library_set(&u, Mode::Psem, &id, &none);
    let expected: BTreeSet<Jdg> = o
        .types
        .iter()
        .map(|a| common::types::Ty::A(vec![a.clone()], Box::new(a.clone())))
        .filter(|t| t.size() <= SMALL.budget && t.depth() <= SMALL.max_depth)
        .map(|t| (Default::default(), t))
        .collect();
    assert_eq!(ps, expected);
    // ω has no judgement in any system
    let omega = bangcalc::syntax::parse_lambda(r"(\x. x x) \x. x x").unwrap();
    assert!(u.interpret(Mode::Intv, omega.as_bang(), &none).unwrap().is_empty());
    assert!(u.interpret(Mode::IntnOracle, omega.as_bang(), &none).unwrap().is_empty());
    assert!(u.interpret(Mode::Psem, &cbn(&omega), &none).unwrap().is_empty());
    assert!(u.interpret(Mode::Psem, &cbv(&omega), &none).unwrap().is_empty());
    // CbV results are multisets
    for t in lambda_corpus(50, 8, 14) {
        let vars = vars_of(t.as_bang());
        assert!(u.interpret(Mode::Intv, t.as_bang(), &vars).unwrap().types().all(RelType::is_mset));
    }
}

fn lib_ms<R: Rewriting>(rel: &R, t: &R::Term, view: impl Fn(&R::Term) -> N) -> Vec<N> {
    common::multiset(rel.reducts(t).iter().map(|(_, s)| view(s)))
}

#[test]
fn bang_reducts_match_the_named_oracle() {
    let rels = [
        (V, Root::V, false),
        (D, Root::D, false),
        (B, Root::B, false),
        (V_GROUND, Root::V, true),
        (D_GROUND, Root::D, true),
        (B_GROUND, Root::B, true),
    ];
    for t in bang_corpus(400, 16, 15) {
        let n = common::from_term(&t);
        for (rel, root, ground) in rels {
            assert_eq!(
                lib_ms(&rel, &t, common::from_term),
                common::multiset(common::bang_reducts(&n, root, ground)),
                "{t} {rel:?}"
            );
            for r in rel.redexes(&t) {
                assert_eq!(r.ground, !t.path_under_box(&r.position), "{t} {r:?}");
            }
        }
    }
}

#[test]
fn lambda_reducts_match_the_named_oracle() {
    let rels = [(BETA, false, false), (BETAV, true, false), (BETA_GROUND, false, true), (BETAV_GROUND, true, true)];
    for t in lambda_corpus(400, 20, 16) {
        let n = common::lambda(&t);
        for (rel, cbv, ground) in rels {
            assert_eq!(
                lib_ms(&rel, &t, common::lambda),
                common::multiset(common::lambda_reducts(&n, cbv, ground)),
                "{t} {rel:?}"
            );
        }
    }
}

#[test]
fn substitution_and_free_variables_match_the_named_oracle() {
    let mut ts = bang_corpus(300, 12, 17).into_iter();
    while let (Some(t), Some(s)) = (ts.next(), ts.next()) {
        let (n, m) = (common::from_term(&t), common::from_term(&s));
        let fv: BTreeSet<String> = t.free_vars().iter().map(|x| x.to_string()).collect();
        assert_eq!(fv, common::fv(&n));
        for x in ["a", "b", "c"] {
            let lib = common::from_term(&t.substitute(x, &s));
            assert!(common::alpha(&lib, &common::subst(&n, x, &m)), "{t} [{s}/{x}]");
        }
    }
}

#[test]
fn development_and_parallel_reducts_match_the_named_oracle() {
    for t in bang_corpus(300, 14, 18) {
        let n = common::from_term(&t);
        assert!(common::alpha(&common::from_term(&development(&t)), &common::develop(&n)), "{t}");
        let lib = common::multiset(parallel_reducts(&t).iter().map(common::from_term));
        assert_eq!(lib, common::multiset(common::parallel(&n)), "{t}");
    }
}

#[test]
fn translations_and_inverse_match_the_named_oracle() {
    for t in lambda_corpus(300, 20, 19) {
        let n = common::lambda(&t);
        assert!(common::alpha(&common::from_term(&cbn(&t)), &common::cbn(&n)));
        let img = common::cbv(&n);
        assert!(common::alpha(&common::from_term(&cbv(&t)), &img));
        assert!(common::in_cbv_m(&img));
        assert_eq!(forgetful(&cbv(&t)).unwrap(), t);
    }
}
