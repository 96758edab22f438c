use std::collections::HashSet;

use crate::syntax::{BangTerm, Path, Selector};

/// Decides `t =>v s` (parallel v-reduction).
///
/// The rules are syntax-directed except at `(\x. T') !R`, where both the
/// congruence rule and the contracting rule may apply; there the
/// congruence rule is tried first, then every pair of parallel reducts of
/// `T'` and `R`.
pub fn parallel_related(t: &BangTerm, s: &BangTerm) -> bool {
    match (t, s) {
        (BangTerm::Var(a), BangTerm::Var(b)) => a == b,
        (BangTerm::Lam(_, b), BangTerm::Lam(_, c))
        | (BangTerm::Der(b), BangTerm::Der(c))
        | (BangTerm::Bang(b), BangTerm::Bang(c)) => parallel_related(b, c),
        (BangTerm::App(f, a), _) => {
            if let BangTerm::App(g, c) = s {
                if parallel_related(f, g) && parallel_related(a, c) {
                    return true;
                }
            }
            let (BangTerm::Lam(_, body), BangTerm::Bang(arg)) = (&**f, &**a) else {
                return false;
            };
            let args = parallel_reducts(arg);
            parallel_reducts(body).iter().any(|b| args.iter().any(|r| &b.instantiate(r) == s))
        }
        _ => false,
    }
}

/// Every `s` with `t =>v s`, without duplicates. The count is exponential
/// in the number of v-redexes of `t`.
pub fn parallel_reducts(t: &BangTerm) -> Vec<BangTerm> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |x: BangTerm| {
        if seen.insert(x.clone()) {
            out.push(x);
        }
    };
    match t {
        BangTerm::Var(_) => push(t.clone()),
        BangTerm::Lam(n, b) => {
            for c in parallel_reducts(b) {
                push(BangTerm::Lam(n.clone(), Box::new(c)));
            }
        }
        BangTerm::Der(b) => parallel_reducts(b).into_iter().for_each(|c| push(BangTerm::der(c))),
        BangTerm::Bang(b) => parallel_reducts(b).into_iter().for_each(|c| push(BangTerm::bang(c))),
        BangTerm::App(f, a) => {
            let fs = parallel_reducts(f);
            let as_ = parallel_reducts(a);
            for g in &fs {
                for c in &as_ {
                    push(BangTerm::app(g.clone(), c.clone()));
                }
            }
            if let (BangTerm::Lam(_, body), BangTerm::Bang(arg)) = (&**f, &**a) {
                let args = parallel_reducts(arg);
                for b in parallel_reducts(body) {
                    for r in &args {
                        push(b.instantiate(r));
                    }
                }
            }
        }
    }
    out
}

/// Contracts simultaneously the v-redexes whose position (in `t`) is
/// accepted by `select`. Every result satisfies `t =>v result`.
pub fn contract_selected(t: &BangTerm, select: &mut dyn FnMut(&Path) -> bool) -> BangTerm {
    go(t, &mut Vec::new(), select)
}

fn go(t: &BangTerm, path: &mut Vec<Selector>, select: &mut dyn FnMut(&Path) -> bool) -> BangTerm {
    let mut sub = |sel: &[Selector], x: &BangTerm, path: &mut Vec<Selector>| {
        let n = path.len();
        path.extend_from_slice(sel);
        let out = go(x, path, select);
        path.truncate(n);
        out
    };
    match t {
        BangTerm::Var(_) => t.clone(),
        BangTerm::Lam(n, b) => BangTerm::Lam(n.clone(), Box::new(sub(&[Selector::Body], b, path))),
        BangTerm::Der(b) => BangTerm::der(sub(&[Selector::Body], b, path)),
        BangTerm::Bang(b) => BangTerm::bang(sub(&[Selector::Body], b, path)),
        BangTerm::App(f, a) => {
            if let (BangTerm::Lam(n, body), BangTerm::Bang(arg)) = (&**f, &**a) {
                let body2 = sub(&[Selector::Fun, Selector::Body], body, path);
                let arg2 = sub(&[Selector::Arg, Selector::Body], arg, path);
                if select(&Path::new(path.clone())) {
                    body2.instantiate(&arg2)
                } else {
                    BangTerm::app(BangTerm::Lam(n.clone(), Box::new(body2)), BangTerm::bang(arg2))
                }
            } else {
                BangTerm::app(sub(&[Selector::Fun], f, path), sub(&[Selector::Arg], a, path))
            }
        }
    }
}

/// The full development `T*`: all v-redexes of `t` contracted at once.
pub fn development(t: &BangTerm) -> BangTerm {
    match t {
        BangTerm::Var(_) => t.clone(),
        BangTerm::Lam(n, b) => BangTerm::Lam(n.clone(), Box::new(development(b))),
        BangTerm::Der(b) => BangTerm::der(development(b)),
        BangTerm::Bang(b) => BangTerm::bang(development(b)),
        BangTerm::App(f, a) => match (&**f, &**a) {
            (BangTerm::Lam(_, body), BangTerm::Bang(arg)) => development(body).instantiate(&development(arg)),
            _ => BangTerm::app(development(f), development(a)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{redexes, step, V};
    use crate::syntax::parse_bang;

    fn p(s: &str) -> BangTerm {
        parse_bang(s).unwrap()
    }

    #[test]
    fn development_examples() {
        assert_eq!(development(&p("x")), p("x"));
        let dd = p(r"(\x. x !x) !(\x. x !x)");
        assert_eq!(development(&dd), dd);
        assert_eq!(development(&p(r"(\x. y) !(\x. x !x)")), p("y"));
        // nested redexes inside the argument are developed too
        assert_eq!(development(&p(r"(\x. x) !((\z. z) !w)")), p("w"));
    }

    #[test]
    fn parallel_examples() {
        let dd = p(r"(\x. x !x) !(\x. x !x)");
        assert!(parallel_related(&dd, &dd));
        assert!(!parallel_related(&p("x"), &p("y")));
        let t = p(r"(\x. x x) !((\z. z) !w)");
        assert!(parallel_related(&t, &p("w w")));
        assert!(parallel_related(&t, &p(r"((\z. z) !w) ((\z. z) !w)")));
        assert!(parallel_related(&t, &p(r"(\x. x x) !w")));
        // two steps in sequence on the same created redex are not parallel
        assert!(!parallel_related(&p(r"(\x. x !y) !(\z. z)"), &p("y")));
    }

    #[test]
    fn single_steps_are_parallel() {
        let t = p(r"(\x. x (\y. y) !x) !((\z. z z) !(\w. w))");
        for r in redexes(&t, V) {
            assert!(parallel_related(&t, &step(&t, &r).unwrap()));
        }
        assert_eq!(parallel_reducts(&t).len(), 4);
    }

    #[test]
    fn selected_contraction() {
        let t = p(r"(\x. x x) !((\z. z) !w)");
        let inner = Path::new(vec![Selector::Arg, Selector::Body]);
        let s = contract_selected(&t, &mut |q| *q == inner);
        assert_eq!(s, p(r"(\x. x x) !w"));
        assert_eq!(contract_selected(&t, &mut |_| true), development(&t));
        assert_eq!(contract_selected(&t, &mut |_| false), t);
    }
}
