use super::{Ast, BangTerm};

pub(crate) fn print(t: &BangTerm) -> String {
    let mut out = String::new();
    term(&Ast::from_term(t), true, &mut out);
    out
}

// `rightmost`: nothing follows this term inside the enclosing parentheses,
// so a trailing abstraction needs no parentheses.
fn term(a: &Ast, rightmost: bool, out: &mut String) {
    match a {
        Ast::Lam { binder, body } => {
            out.push('\\');
            out.push_str(binder);
            out.push_str(". ");
            term(body, rightmost, out);
        }
        _ => app(a, rightmost, out),
    }
}

fn app(a: &Ast, rightmost: bool, out: &mut String) {
    match a {
        Ast::App { fun, arg } => {
            match **fun {
                Ast::App { .. } => app(fun, false, out),
                Ast::Lam { .. } => parens(fun, out),
                _ => prefix(fun, out),
            }
            out.push(' ');
            match **arg {
                Ast::Lam { .. } if rightmost => term(arg, true, out),
                Ast::Lam { .. } | Ast::App { .. } => parens(arg, out),
                _ => prefix(arg, out),
            }
        }
        _ => prefix(a, out),
    }
}

fn prefix(a: &Ast, out: &mut String) {
    match a {
        Ast::Var { name } => out.push_str(name),
        Ast::Der { body } => {
            out.push_str("der ");
            operand(body, out);
        }
        Ast::Bang { body } => {
            out.push('!');
            operand(body, out);
        }
        Ast::App { .. } | Ast::Lam { .. } => parens(a, out),
    }
}

fn operand(a: &Ast, out: &mut String) {
    match a {
        Ast::Var { .. } | Ast::Der { .. } | Ast::Bang { .. } => prefix(a, out),
        _ => parens(a, out),
    }
}

fn parens(a: &Ast, out: &mut String) {
    out.push('(');
    term(a, true, out);
    out.push(')');
}
