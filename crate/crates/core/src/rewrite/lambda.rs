use super::{LambdaRelation, LambdaRule, Redex, RedexKind};
use crate::error::{Error, Result};
use crate::syntax::{BangTerm, LambdaTerm, Path, Selector};

// CbN ground contexts: N ::= [] | \x. N | N t
fn in_cbn_ground(path: &[Selector]) -> bool {
    path.iter().all(|s| *s != Selector::Arg)
}

// CbV ground contexts: V ::= [] | V t | t V
fn in_cbv_ground(path: &[Selector]) -> bool {
    path.iter().all(|s| *s != Selector::Body)
}

fn is_value(t: &BangTerm) -> bool {
    matches!(t, BangTerm::Var(_) | BangTerm::Lam(..))
}

/// β- or βv-redexes of `t`, leftmost-outermost first.
pub fn lambda_redexes(t: &LambdaTerm, rel: LambdaRelation) -> Vec<Redex> {
    let mut out = Vec::new();
    collect(t.as_bang(), rel, &mut Vec::new(), &mut out);
    out
}

fn collect(t: &BangTerm, rel: LambdaRelation, path: &mut Vec<Selector>, out: &mut Vec<Redex>) {
    let (kind, ground) = match rel.rule {
        LambdaRule::Beta => (RedexKind::Beta, in_cbn_ground(path)),
        LambdaRule::BetaV => (RedexKind::Betav, in_cbv_ground(path)),
    };
    if let BangTerm::App(f, a) = t {
        let fires = matches!(**f, BangTerm::Lam(..)) && (rel.rule == LambdaRule::Beta || is_value(a));
        if fires {
            out.push(Redex { position: Path::new(path.clone()), kind, ground });
        }
    }
    let mut descend = |sel: Selector, sub: &BangTerm, path: &mut Vec<Selector>| {
        path.push(sel);
        let allowed = !rel.ground
            || match rel.rule {
                LambdaRule::Beta => in_cbn_ground(path),
                LambdaRule::BetaV => in_cbv_ground(path),
            };
        if allowed {
            collect(sub, rel, path, out);
        }
        path.pop();
    };
    match t {
        BangTerm::Var(_) => {}
        BangTerm::Lam(_, b) => descend(Selector::Body, b, path),
        BangTerm::App(f, a) => {
            descend(Selector::Fun, f, path);
            descend(Selector::Arg, a, path);
        }
        BangTerm::Der(_) | BangTerm::Bang(_) => unreachable!("λ-terms have no der or ! nodes"),
    }
}

/// Contracts a β- or βv-redex.
pub fn step_lambda(t: &LambdaTerm, r: &Redex) -> Result<LambdaTerm> {
    let invalid = |reason: &str| Error::InvalidRedex { path: r.position.clone(), reason: reason.to_string() };
    let sub = t.as_bang().subterm(&r.position).ok_or_else(|| invalid("no subterm at this path"))?;
    let BangTerm::App(f, a) = sub else {
        return Err(invalid("expected an application"));
    };
    let BangTerm::Lam(_, body) = &**f else {
        return Err(invalid("expected an abstraction in function position"));
    };
    match r.kind {
        RedexKind::Beta => {}
        RedexKind::Betav if is_value(a) => {}
        RedexKind::Betav => return Err(invalid("argument is not a value")),
        RedexKind::V | RedexKind::D => return Err(invalid("bang calculus redex on a λ-term")),
    }
    let out = t.as_bang().replace_at(&r.position, body.instantiate(a)).expect("path checked above");
    Ok(LambdaTerm::from_bang_unchecked(out))
}
