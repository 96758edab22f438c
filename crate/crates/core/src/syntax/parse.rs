//! Recursive-descent parser for the surface syntax.
//!
//! ```text
//! term   ::= ('\' | 'λ') ident '.' term | app
//! app    ::= prefix+ [lambda]          -- left-associative
//! prefix ::= '!' prefix | 'der' prefix | ident | '(' term ')'
//! ```

use super::{Ast, BangTerm, LambdaTerm};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Lambda,
    Dot,
    Open,
    Close,
    Bang,
    Der,
    Ident(String),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '\\' | 'λ' => {
                it.next();
                out.push((pos, Tok::Lambda));
            }
            '.' => {
                it.next();
                out.push((pos, Tok::Dot));
            }
            '(' => {
                it.next();
                out.push((pos, Tok::Open));
            }
            ')' => {
                it.next();
                out.push((pos, Tok::Close));
            }
            '!' => {
                it.next();
                out.push((pos, Tok::Bang));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut id = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        id.push(c);
                        it.next();
                    } else {
                        break;
                    }
                }
                let tok = if id == "der" { Tok::Der } else { Tok::Ident(id) };
                out.push((pos, tok));
            }
            other => {
                return Err(Error::Syntax { pos, msg: format!("unexpected character {other:?}") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    lambda_mode: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn term(&mut self) -> Result<Ast> {
        if self.peek() == Some(&Tok::Lambda) {
            self.lambda()
        } else {
            self.app()
        }
    }

    fn lambda(&mut self) -> Result<Ast> {
        self.at += 1;
        let binder = match self.peek() {
            Some(Tok::Ident(id)) => id.clone(),
            _ => return self.error("expected a binder name after '\\'"),
        };
        self.at += 1;
        self.expect(Tok::Dot, "'.'")?;
        let body = self.term()?;
        Ok(Ast::Lam { binder, body: Box::new(body) })
    }

    fn starts_prefix(&self) -> bool {
        matches!(self.peek(), Some(Tok::Bang | Tok::Der | Tok::Ident(_) | Tok::Open))
    }

    fn app(&mut self) -> Result<Ast> {
        if !self.starts_prefix() {
            return self.error("expected a term");
        }
        let mut acc = self.prefix()?;
        loop {
            if self.starts_prefix() {
                let arg = self.prefix()?;
                acc = Ast::App { fun: Box::new(acc), arg: Box::new(arg) };
            } else if self.peek() == Some(&Tok::Lambda) {
                let arg = self.lambda()?;
                return Ok(Ast::App { fun: Box::new(acc), arg: Box::new(arg) });
            } else {
                return Ok(acc);
            }
        }
    }

    fn prefix(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(Tok::Bang | Tok::Der) if self.lambda_mode => Err(Error::BangInLambdaMode { pos: self.pos() }),
            Some(Tok::Bang) => {
                self.at += 1;
                Ok(Ast::Bang { body: Box::new(self.prefix()?) })
            }
            Some(Tok::Der) => {
                self.at += 1;
                Ok(Ast::Der { body: Box::new(self.prefix()?) })
            }
            Some(Tok::Ident(id)) => {
                let name = id.clone();
                self.at += 1;
                Ok(Ast::Var { name })
            }
            Some(Tok::Open) => {
                self.at += 1;
                let t = self.term()?;
                self.expect(Tok::Close, "')'")?;
                Ok(t)
            }
            _ => self.error("expected a variable, '!', 'der' or '('"),
        }
    }
}

fn parse_ast(text: &str, lambda_mode: bool) -> Result<Ast> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), lambda_mode };
    let t = p.term()?;
    if p.at != p.toks.len() {
        return p.error("trailing input");
    }
    Ok(t)
}

/// Parses a term of the bang calculus.
pub fn parse_bang(text: &str) -> Result<BangTerm> {
    Ok(parse_ast(text, false)?.to_term())
}

/// Parses a λ-term; `!` and `der` are rejected.
pub fn parse_lambda(text: &str) -> Result<LambdaTerm> {
    Ok(LambdaTerm::from_bang_unchecked(parse_ast(text, true)?.to_term()))
}

impl Ast {
    pub fn parse(text: &str) -> Result<Ast> {
        parse_ast(text, false)
    }
}
