//! Static restrictions: linear patterns, exactly-once use of every bound
//! variable, distinct function names, and calls only to defined functions.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use super::{Def, Expr, LeftExpr, Pos, Program};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("{}: function `{name}` is defined more than once", fmt_pos(.pos))]
    DuplicateFunction { name: String, pos: Option<Pos> },
    #[error("{}: in `{function}`: variable `{var}` {issue}", fmt_pos(.pos))]
    Linearity {
        function: String,
        var: String,
        issue: LinearityIssue,
        pos: Option<Pos>,
    },
    #[error("{}: in `{function}`: variable `{var}` is not bound", fmt_pos(.pos))]
    UnboundVariable {
        function: String,
        var: String,
        pos: Option<Pos>,
    },
    #[error("{}: in `{function}`: call to undefined function `{callee}`", fmt_pos(.pos))]
    UnknownFunction {
        function: String,
        callee: String,
        pos: Option<Pos>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearityIssue {
    /// Occurs more than once in a single left expression.
    Repeated,
    /// Bound while an earlier binding of the same name is still live.
    Rebound,
    /// Bound but never used.
    Unused,
}

impl std::fmt::Display for LinearityIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LinearityIssue::Repeated => "occurs more than once in a left expression",
            LinearityIssue::Rebound => "is bound again while still live",
            LinearityIssue::Unused => "is bound but never used",
        })
    }
}

fn fmt_pos(pos: &Option<Pos>) -> String {
    pos.map_or_else(|| "?".to_string(), |p| p.to_string())
}

/// Returns every violation found, in program order. An empty list means the
/// program is accepted.
pub fn check_static(q: &Program) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let names: HashSet<&str> = q.defs.iter().map(|d| d.name.as_str()).collect();
    let mut seen = HashSet::new();
    for d in &q.defs {
        if !seen.insert(d.name.as_str()) {
            violations.push(Violation::DuplicateFunction {
                name: d.name.clone(),
                pos: d.pos,
            });
        }
        let mut ck = DefChecker {
            def: d,
            functions: &names,
            out: &mut violations,
        };
        let live = BTreeSet::from([d.param.clone()]);
        ck.expr(&d.body, live);
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

struct DefChecker<'a> {
    def: &'a Def,
    functions: &'a HashSet<&'a str>,
    out: &'a mut Vec<Violation>,
}

impl DefChecker<'_> {
    fn linearity(&mut self, var: &str, issue: LinearityIssue) {
        self.out.push(Violation::Linearity {
            function: self.def.name.clone(),
            var: var.to_string(),
            issue,
            pos: self.def.pos,
        });
    }

    fn call(&mut self, callee: &str) {
        if !self.functions.contains(callee) {
            self.out.push(Violation::UnknownFunction {
                function: self.def.name.clone(),
                callee: callee.to_string(),
                pos: self.def.pos,
            });
        }
    }

    /// Distinct variables of `l`, reporting repeats.
    fn linear_vars(&mut self, l: &LeftExpr) -> BTreeSet<String> {
        let mut set = BTreeSet::new();
        for x in l.vars() {
            if !set.insert(x.to_string()) {
                self.linearity(x, LinearityIssue::Repeated);
            }
        }
        set
    }

    /// Removes the variables of `l` from `live`, reporting unbound ones.
    fn consume(&mut self, l: &LeftExpr, live: &mut BTreeSet<String>) {
        for x in self.linear_vars(l) {
            if !live.remove(&x) {
                self.out.push(Violation::UnboundVariable {
                    function: self.def.name.clone(),
                    var: x,
                    pos: self.def.pos,
                });
            }
        }
    }

    fn bind(&mut self, l: &LeftExpr, live: &mut BTreeSet<String>) {
        for x in self.linear_vars(l) {
            if live.contains(&x) {
                self.linearity(&x, LinearityIssue::Rebound);
            }
            live.insert(x);
        }
    }

    fn expr(&mut self, e: &Expr, mut live: BTreeSet<String>) {
        match e {
            Expr::Leaf(l) => {
                self.consume(l, &mut live);
                for x in live {
                    self.linearity(&x, LinearityIssue::Unused);
                }
            }
            Expr::Let {
                out,
                func,
                input,
                body,
            }
            | Expr::RLet {
                input,
                func,
                out,
                body,
            } => {
                self.call(func);
                self.consume(input, &mut live);
                self.bind(out, &mut live);
                self.expr(body, live);
            }
            Expr::Case {
                scrutinee,
                branches,
            } => {
                self.consume(scrutinee, &mut live);
                for b in branches {
                    let mut branch_live = live.clone();
                    self.bind(&b.pattern, &mut branch_live);
                    self.expr(&b.body, branch_live);
                }
            }
        }
    }
}
