mod common;

use proptest::prelude::*;

use bangcalc::harness::shrink;
use bangcalc::rewrite::{Rewriting, B};
use bangcalc::syntax::{parse_bang, print_term, BangTerm};
use bangcalc::translate::{cbn, cbn_inverse, cbv, cbv_inverse, forgetful};
use common::N;

fn named(bang: bool) -> impl Strategy<Value = N> {
    let leaf = prop_oneof![Just("a"), Just("b"), Just("x"), Just("y")].prop_map(common::var);
    leaf.prop_recursive(6, 40, 2, move |inner| {
        let binder = prop_oneof![Just("x"), Just("y"), Just("z")];
        let base = prop_oneof![
            (binder, inner.clone()).prop_map(|(x, b)| common::lam(x, b)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| common::app(f, a)),
        ];
        if bang {
            prop_oneof![
                2 => base,
                1 => inner.clone().prop_map(common::der),
                1 => inner.prop_map(common::bang),
            ]
            .boxed()
        } else {
            base.boxed()
        }
    })
}

/// Renames every binder to a fresh name, avoiding capture.
fn rename(n: &N, k: &mut usize) -> N {
    match n {
        N::Var(_) => n.clone(),
        N::Lam(x, b) => {
            *k += 1;
            let z = format!("r{k}");
            let b = common::subst(b, x, &common::var(&z));
            common::lam(&z, rename(&b, k))
        }
        N::App(f, a) => common::app(rename(f, k), rename(a, k)),
        N::Der(b) => common::der(rename(b, k)),
        N::Bang(b) => common::bang(rename(b, k)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_then_parsing_is_the_identity(n in named(true)) {
        let t = common::to_term(&n);
        let back = parse_bang(&print_term(&t)).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert!(common::alpha(&common::from_term(&back), &n));
    }

    #[test]
    fn json_round_trip(n in named(true)) {
        let t = common::to_term(&n);
        let json = serde_json::to_string(&t).unwrap();
        let back: BangTerm = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn equality_is_alpha_equivalence(n in named(true), m in named(true)) {
        let (t, s) = (common::to_term(&n), common::to_term(&m));
        prop_assert_eq!(t == s, common::alpha(&n, &m));
        let r = rename(&n, &mut 0);
        prop_assert_eq!(common::to_term(&r), t);
    }

    #[test]
    fn substitution_agrees_with_the_oracle(n in named(true), m in named(true)) {
        let (t, s) = (common::to_term(&n), common::to_term(&m));
        for x in ["a", "b", "x"] {
            let lib = common::from_term(&t.substitute(x, &s));
            prop_assert!(common::alpha(&lib, &common::subst(&n, x, &m)));
        }
    }

    #[test]
    fn translations_have_inverses(n in named(false)) {
        let t = common::to_lambda(&n);
        prop_assert_eq!(cbn_inverse(&cbn(&t)).unwrap(), t.clone());
        prop_assert_eq!(cbv_inverse(&cbv(&t)).unwrap(), t.clone());
        prop_assert_eq!(forgetful(&cbv(&t)).unwrap(), t);
    }

    #[test]
    fn shrinking_keeps_the_failure_and_never_grows(n in named(true), m in named(true)) {
        let t = common::to_term(&common::app(n, common::der(common::bang(m))));
        let has_redex = |u: &BangTerm| !B.is_normal(u);
        let s = shrink(&t, &has_redex);
        prop_assert!(s.size() <= t.size());
        prop_assert!(has_redex(&s));
        // a single redex of the smallest shape
        prop_assert!(s.size() <= 5, "{}", s);
    }
}
