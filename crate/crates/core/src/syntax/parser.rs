use std::collections::BTreeSet;

use thiserror::Error;

use super::lexer::{lex, Tok, Token};
use super::{Branch, Def, Expr, LeftExpr, Pos, Program};
use crate::value::Value;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at {pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

/// Parses a program. Sugared definitions `f l =: e` (with `l` not a bare
/// variable) become `f x =: case x of { l -> e }` for a fresh `x`.
pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let mut p = Parser::new(src)?;
    let mut raw = Vec::new();
    loop {
        if p.peek() == &Tok::Eof {
            break;
        }
        raw.push(p.def()?);
        if !p.eat(&Tok::Semi) {
            break;
        }
    }
    p.expect(&Tok::Eof)?;

    let mut used: BTreeSet<String> = BTreeSet::new();
    for (_, param, body, _) in &raw {
        used.extend(param.vars().into_iter().map(str::to_string));
        let mut vs = BTreeSet::new();
        body.all_vars(&mut vs);
        used.extend(vs.into_iter().map(str::to_string));
    }

    let mut defs = Vec::with_capacity(raw.len());
    let mut fresh_counter = 0usize;
    for (name, param, body, pos) in raw {
        let def = match param {
            LeftExpr::Var(x) => Def {
                name,
                param: x,
                body,
                pos: Some(pos),
            },
            pattern => {
                let fresh = loop {
                    let candidate = format!("x{fresh_counter}");
                    fresh_counter += 1;
                    if !used.contains(&candidate) {
                        break candidate;
                    }
                };
                used.insert(fresh.clone());
                Def {
                    name,
                    param: fresh.clone(),
                    body: Expr::Case {
                        scrutinee: LeftExpr::Var(fresh),
                        branches: vec![Branch { pattern, body }],
                    },
                    pos: Some(pos),
                }
            }
        };
        defs.push(def);
    }
    Ok(Program { defs })
}

/// Parses a value in the textual syntax `c`, `c(v1, ..., vn)`, `<v1, ..., vn>`.
pub fn parse_value(src: &str) -> Result<Value, ParseError> {
    let mut p = Parser::new(src)?;
    let v = p.value()?;
    p.expect(&Tok::Eof)?;
    Ok(v)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, what: &str) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: format!("expected {what}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.error(&t.describe())
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(s) => Ok(s),
                _ => unreachable!(),
            },
            _ => self.error("an identifier"),
        }
    }

    fn def(&mut self) -> Result<(String, LeftExpr, Expr, Pos), ParseError> {
        let pos = self.pos();
        let name = self.ident()?;
        let param = self.left()?;
        self.expect(&Tok::Define)?;
        let body = self.expr()?;
        Ok((name, param, body, pos))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Let | Tok::RLet => {
                let reverse = self.bump() == Tok::RLet;
                let lhs = self.left()?;
                self.expect(&Tok::Eq)?;
                let func = self.ident()?;
                let rhs = self.left()?;
                self.expect(&Tok::In)?;
                let body = Box::new(self.expr()?);
                Ok(if reverse {
                    Expr::RLet {
                        input: lhs,
                        func,
                        out: rhs,
                        body,
                    }
                } else {
                    Expr::Let {
                        out: lhs,
                        func,
                        input: rhs,
                        body,
                    }
                })
            }
            Tok::Case => {
                self.bump();
                let scrutinee = self.left()?;
                self.expect(&Tok::Of)?;
                self.expect(&Tok::LBrace)?;
                let mut branches = Vec::new();
                loop {
                    let pattern = self.left()?;
                    self.expect(&Tok::Arrow)?;
                    let body = self.expr()?;
                    branches.push(Branch { pattern, body });
                    if !self.eat(&Tok::Semi) || self.peek() == &Tok::RBrace {
                        break;
                    }
                }
                self.expect(&Tok::RBrace)?;
                Ok(Expr::Case {
                    scrutinee,
                    branches,
                })
            }
            _ => Ok(Expr::Leaf(self.left()?)),
        }
    }

    fn left(&mut self) -> Result<LeftExpr, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                if self.peek() == &Tok::LParen {
                    self.bump();
                    let args = self.list(&Tok::RParen, Self::left)?;
                    Ok(LeftExpr::Ctor(name, args))
                } else if name.starts_with(|c: char| c.is_uppercase()) {
                    Ok(LeftExpr::Ctor(name, Vec::new()))
                } else {
                    Ok(LeftExpr::Var(name))
                }
            }
            Tok::LAngle => {
                self.bump();
                Ok(LeftExpr::tuple(self.list(&Tok::RAngle, Self::left)?))
            }
            Tok::DupOpen => {
                self.bump();
                let inner = self.left()?;
                self.expect(&Tok::DupClose)?;
                Ok(LeftExpr::dupeq(inner))
            }
            _ => self.error("a left expression"),
        }
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                if self.eat(&Tok::LParen) {
                    let args = self.list(&Tok::RParen, Self::value)?;
                    Ok(Value::new(name, args))
                } else {
                    Ok(Value::sym(name))
                }
            }
            Tok::LAngle => {
                self.bump();
                Ok(Value::tuple(self.list(&Tok::RAngle, Self::value)?))
            }
            _ => self.error("a value"),
        }
    }

    /// Comma-separated items up to and including `close`; the opening
    /// delimiter has been consumed.
    fn list<T>(
        &mut self,
        close: &Tok,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            if self.peek2() == close && self.peek() == &Tok::Comma {
                return self.error("an item after `,`");
            }
            self.expect(&Tok::Comma)?;
        }
    }
}
