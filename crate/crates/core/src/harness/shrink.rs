use crate::syntax::{BangTerm, Path, Selector};

/// Greedily shrinks a failing term: each subterm is tried, in order, as a
/// free variable stub, as one of its children, and as `\x. x`. A candidate
/// is kept only if it is smaller and `fails` still holds on it.
pub fn shrink(t: &BangTerm, fails: &dyn Fn(&BangTerm) -> bool) -> BangTerm {
    let mut cur = t.clone();
    'outer: loop {
        for path in positions(&cur) {
            let sub = cur.subterm(&path).expect("enumerated path");
            for cand in candidates(sub) {
                if cand.size() >= sub.size() {
                    continue;
                }
                let next = cur.replace_at(&path, cand).expect("enumerated path");
                if fails(&next) {
                    cur = next;
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

fn positions(t: &BangTerm) -> Vec<Path> {
    fn go(t: &BangTerm, p: &mut Vec<Selector>, out: &mut Vec<Path>) {
        out.push(Path::new(p.clone()));
        let mut child = |s: Selector, c: &BangTerm, p: &mut Vec<Selector>| {
            p.push(s);
            go(c, p, out);
            p.pop();
        };
        match t {
            BangTerm::Var(_) => {}
            BangTerm::Lam(_, b) | BangTerm::Der(b) | BangTerm::Bang(b) => child(Selector::Body, b, p),
            BangTerm::App(f, a) => {
                child(Selector::Fun, f, p);
                child(Selector::Arg, a, p);
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

fn candidates(t: &BangTerm) -> Vec<BangTerm> {
    let stub = BangTerm::var("s");
    let mut out = vec![stub.clone()];
    match t {
        BangTerm::Var(_) => {}
        // the body loses its binder: its occurrences become the stub
        BangTerm::Lam(_, b) => out.push(b.instantiate(&stub)),
        BangTerm::Der(b) | BangTerm::Bang(b) => out.push((**b).clone()),
        BangTerm::App(f, a) => {
            out.push((**f).clone());
            out.push((**a).clone());
        }
    }
    out.push(BangTerm::lam("x", BangTerm::var("x")));
    out
}
