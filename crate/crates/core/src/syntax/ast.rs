use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{BangTerm, Name, Var, VarRef};

/// Named surface syntax, also the JSON form of a term (`tag` + children).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum Ast {
    Var { name: String },
    Lam { binder: String, body: Box<Ast> },
    App { fun: Box<Ast>, arg: Box<Ast> },
    Der { body: Box<Ast> },
    Bang { body: Box<Ast> },
}

impl Ast {
    /// Resolves names against binders; unbound names become free variables.
    pub fn to_term(&self) -> BangTerm {
        let mut scope = Vec::new();
        self.resolve(&mut scope)
    }

    fn resolve(&self, scope: &mut Vec<String>) -> BangTerm {
        match self {
            Ast::Var { name } => match scope.iter().rev().position(|b| b == name) {
                Some(i) => BangTerm::bound(i as u32),
                None => BangTerm::var(name),
            },
            Ast::Lam { binder, body } => {
                scope.push(binder.clone());
                let b = body.resolve(scope);
                scope.pop();
                BangTerm::Lam(binder.as_str().into(), Box::new(b))
            }
            Ast::App { fun, arg } => BangTerm::app(fun.resolve(scope), arg.resolve(scope)),
            Ast::Der { body } => BangTerm::der(body.resolve(scope)),
            Ast::Bang { body } => BangTerm::bang(body.resolve(scope)),
        }
    }

    /// Names every binder, renaming hints that would capture or be shadowed.
    pub fn from_term(t: &BangTerm) -> Ast {
        let mut scope: Vec<Name> = Vec::new();
        name_term(t, &mut scope)
    }
}

fn name_term(t: &BangTerm, scope: &mut Vec<Name>) -> Ast {
    match t {
        BangTerm::Var(Var(VarRef::Free(n))) => Ast::Var { name: n.to_string() },
        BangTerm::Var(Var(VarRef::Bound(i))) => {
            let idx = scope.len().checked_sub(1 + *i as usize);
            let name = match idx {
                Some(k) => scope[k].to_string(),
                // dangling index: only reachable when printing an open subterm
                None => format!("#{i}"),
            };
            Ast::Var { name }
        }
        BangTerm::Lam(hint, body) => {
            let mut avoid: BTreeSet<Name> = body.free_vars();
            // outer binders that the body still refers to
            collect_outer(body, 1, scope, &mut avoid);
            let name = fresh(hint, &avoid);
            scope.push(name.clone());
            let b = name_term(body, scope);
            scope.pop();
            Ast::Lam { binder: name.to_string(), body: Box::new(b) }
        }
        BangTerm::App(f, a) => Ast::App { fun: Box::new(name_term(f, scope)), arg: Box::new(name_term(a, scope)) },
        BangTerm::Der(b) => Ast::Der { body: Box::new(name_term(b, scope)) },
        BangTerm::Bang(b) => Ast::Bang { body: Box::new(name_term(b, scope)) },
    }
}

fn collect_outer(t: &BangTerm, depth: u32, scope: &[Name], out: &mut BTreeSet<Name>) {
    match t {
        BangTerm::Var(Var(VarRef::Bound(i))) if *i >= depth => {
            let k = (*i - depth) as usize;
            if let Some(idx) = scope.len().checked_sub(1 + k) {
                out.insert(scope[idx].clone());
            }
        }
        BangTerm::Var(_) => {}
        BangTerm::Lam(_, b) => collect_outer(b, depth + 1, scope, out),
        BangTerm::Der(b) | BangTerm::Bang(b) => collect_outer(b, depth, scope, out),
        BangTerm::App(f, a) => {
            collect_outer(f, depth, scope, out);
            collect_outer(a, depth, scope, out);
        }
    }
}

fn fresh(hint: &Name, avoid: &BTreeSet<Name>) -> Name {
    if !avoid.contains(hint) && &**hint != "der" {
        return hint.clone();
    }
    let base = hint.trim_end_matches(|c: char| c.is_ascii_digit());
    let base = if base.is_empty() || base == "der" { "v" } else { base };
    (1..).map(|k| Name::from(format!("{base}{k}"))).find(|n| !avoid.contains(n)).expect("infinitely many candidates")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let t = crate::syntax::parse_bang(r"\x. der !x").unwrap();
        let v = serde_json::to_value(Ast::from_term(&t)).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"tag": "lam", "binder": "x",
                "body": {"tag": "der", "body": {"tag": "bang", "body": {"tag": "var", "name": "x"}}}})
        );
        let back: Ast = serde_json::from_value(v).unwrap();
        assert_eq!(back.to_term(), t);
    }

    #[test]
    fn shadowed_outer_binder_gets_renamed() {
        // \x. \x. (outer x) -- written with identical hints
        let inner = BangTerm::Lam("x".into(), Box::new(BangTerm::bound(1)));
        let t = BangTerm::Lam("x".into(), Box::new(inner));
        let ast = Ast::from_term(&t);
        assert_eq!(ast.to_term(), t);
    }
}
