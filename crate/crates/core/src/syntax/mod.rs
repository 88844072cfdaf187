//! Abstract syntax, parsing, pretty-printing and static checks.
//!
//! Concrete syntax (Unicode forms in parentheses):
//!
//! ```text
//! plus <x, y> =: case y of {            (≜)
//!     Z    -> |_ <x> _| ;               (→, ⌊⟨x⟩⌋)
//!     S(u) -> let <x', u'> = plus <x, u> in <x', S(u')>
//! };
//! ```
//!
//! Identifiers starting with an upper-case letter, or directly followed by
//! `(`, are constructors; all other identifiers in left expressions are
//! variables. Definitions are separated by `;`, branches of a `case` too.
//! `--` starts a line comment.

mod check;
mod lexer;
mod parser;
mod pretty;

use std::collections::BTreeSet;
use std::fmt;

pub use check::{check_static, Violation};
pub use parser::{parse_program, parse_value, ParseError};
pub use pretty::{print_def, print_expr, print_left, print_program};

pub use crate::value::TUPLE;

/// Source position (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Left expressions: `x | c(l1, ..., ln) | |_ l _|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LeftExpr {
    Var(String),
    Ctor(String, Vec<LeftExpr>),
    DupEq(Box<LeftExpr>),
}

impl LeftExpr {
    pub fn var(name: impl Into<String>) -> Self {
        LeftExpr::Var(name.into())
    }

    pub fn ctor(name: impl Into<String>, args: Vec<LeftExpr>) -> Self {
        LeftExpr::Ctor(name.into(), args)
    }

    pub fn tuple(items: Vec<LeftExpr>) -> Self {
        LeftExpr::Ctor(TUPLE.to_string(), items)
    }

    pub fn dupeq(inner: LeftExpr) -> Self {
        LeftExpr::DupEq(Box::new(inner))
    }

    /// Variables in left-to-right order, with repetitions.
    pub fn vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            LeftExpr::Var(x) => out.push(x),
            LeftExpr::Ctor(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            LeftExpr::DupEq(inner) => inner.collect_vars(out),
        }
    }

    pub fn var_set(&self) -> BTreeSet<&str> {
        self.vars().into_iter().collect()
    }

    /// Replaces the (single) occurrence of `var` by `with`. Returns whether
    /// a replacement happened.
    pub fn substitute(&mut self, var: &str, with: &LeftExpr) -> bool {
        match self {
            LeftExpr::Var(x) if x == var => {
                *self = with.clone();
                true
            }
            LeftExpr::Var(_) => false,
            LeftExpr::Ctor(_, args) => args.iter_mut().any(|a| a.substitute(var, with)),
            LeftExpr::DupEq(inner) => inner.substitute(var, with),
        }
    }

    pub fn constructors<'a>(&'a self, out: &mut Vec<(&'a str, usize)>) {
        match self {
            LeftExpr::Var(_) => {}
            LeftExpr::Ctor(c, args) => {
                out.push((c, args.len()));
                args.iter().for_each(|a| a.constructors(out));
            }
            LeftExpr::DupEq(inner) => {
                out.push((TUPLE, 1));
                out.push((TUPLE, 2));
                inner.constructors(out);
            }
        }
    }
}

/// A `case` branch `pattern -> body`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub pattern: LeftExpr,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Leaf(LeftExpr),
    /// `let out = func input in body`
    Let {
        out: LeftExpr,
        func: String,
        input: LeftExpr,
        body: Box<Expr>,
    },
    /// `rlet input = func out in body`: consumes `input`, binds `out` to
    /// the preimage of `input` under `func`.
    RLet {
        input: LeftExpr,
        func: String,
        out: LeftExpr,
        body: Box<Expr>,
    },
    Case {
        scrutinee: LeftExpr,
        branches: Vec<Branch>,
    },
}

impl Expr {
    /// Left expressions in return position, left to right.
    pub fn leaves(&self) -> Vec<&LeftExpr> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a LeftExpr>) {
        match self {
            Expr::Leaf(l) => out.push(l),
            Expr::Let { body, .. } | Expr::RLet { body, .. } => body.collect_leaves(out),
            Expr::Case { branches, .. } => {
                branches.iter().for_each(|b| b.body.collect_leaves(out))
            }
        }
    }

    /// Free variables in first-use order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let push = |x: &str, out: &mut Vec<String>| {
            if !out.iter().any(|y| y == x) {
                out.push(x.to_string());
            }
        };
        match self {
            Expr::Leaf(l) => l.vars().into_iter().for_each(|x| push(x, &mut out)),
            Expr::Let {
                out: bound,
                input: used,
                body,
                ..
            }
            | Expr::RLet {
                out: bound,
                input: used,
                body,
                ..
            } => {
                used.vars().into_iter().for_each(|x| push(x, &mut out));
                let bound = bound.var_set();
                for x in body.free_vars() {
                    if !bound.contains(x.as_str()) {
                        push(&x, &mut out);
                    }
                }
            }
            Expr::Case {
                scrutinee,
                branches,
            } => {
                scrutinee.vars().into_iter().for_each(|x| push(x, &mut out));
                for b in branches {
                    let bound = b.pattern.var_set();
                    for x in b.body.free_vars() {
                        if !bound.contains(x.as_str()) {
                            push(&x, &mut out);
                        }
                    }
                }
            }
        }
        out
    }

    /// Names of all functions called, in order of appearance.
    pub fn callees(&self) -> Vec<&str> {
        match self {
            Expr::Leaf(_) => Vec::new(),
            Expr::Let { func, body, .. } | Expr::RLet { func, body, .. } => {
                let mut v = vec![func.as_str()];
                v.extend(body.callees());
                v
            }
            Expr::Case { branches, .. } => branches.iter().flat_map(|b| b.body.callees()).collect(),
        }
    }

    /// Every variable name that occurs anywhere, bound or free.
    pub fn all_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Expr::Leaf(l) => out.extend(l.vars()),
            Expr::Let {
                out: o,
                input,
                body,
                ..
            }
            | Expr::RLet {
                out: o,
                input,
                body,
                ..
            } => {
                out.extend(o.vars());
                out.extend(input.vars());
                body.all_vars(out);
            }
            Expr::Case {
                scrutinee,
                branches,
            } => {
                out.extend(scrutinee.vars());
                for b in branches {
                    out.extend(b.pattern.vars());
                    b.body.all_vars(out);
                }
            }
        }
    }

    pub fn constructors<'a>(&'a self, out: &mut Vec<(&'a str, usize)>) {
        match self {
            Expr::Leaf(l) => l.constructors(out),
            Expr::Let {
                out: o,
                input,
                body,
                ..
            }
            | Expr::RLet {
                out: o,
                input,
                body,
                ..
            } => {
                input.constructors(out);
                o.constructors(out);
                body.constructors(out);
            }
            Expr::Case {
                scrutinee,
                branches,
            } => {
                scrutinee.constructors(out);
                for b in branches {
                    b.pattern.constructors(out);
                    b.body.constructors(out);
                }
            }
        }
    }
}

/// `name param =: body`
#[derive(Clone, Debug)]
pub struct Def {
    pub name: String,
    pub param: String,
    pub body: Expr,
    pub pos: Option<Pos>,
}

impl Def {
    pub fn new(name: impl Into<String>, param: impl Into<String>, body: Expr) -> Self {
        Def {
            name: name.into(),
            param: param.into(),
            body,
            pos: None,
        }
    }
}

// Positions are diagnostics only.
impl PartialEq for Def {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.param == other.param && self.body == other.body
    }
}

impl Eq for Def {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub defs: Vec<Def>,
}

impl Program {
    pub fn new(defs: Vec<Def>) -> Self {
        Program { defs }
    }

    pub fn get(&self, name: &str) -> Option<&Def> {
        self.defs.iter().find(|d| d.name == name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.defs.iter().position(|d| d.name == name)
    }

    /// Constructor names with the arities they are used at, in order of
    /// first appearance.
    pub fn constructors(&self) -> Vec<(&str, usize)> {
        let mut all = Vec::new();
        for d in &self.defs {
            d.body.constructors(&mut all);
        }
        let mut seen = Vec::new();
        for c in all {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_program(self))
    }
}

impl fmt::Display for LeftExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_left(self))
    }
}
