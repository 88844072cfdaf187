//! Big-step interpreter, run in either direction.
//!
//! Forward evaluation follows the rules directly. Backward application is a
//! separate interpreter that walks each body from its leaves to its
//! parameter, so the two can be checked against each other and against the
//! syntactic inverter.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::{Def, Expr, LeftExpr, Program};
use crate::value::Value;

pub const DEFAULT_FUEL: u64 = 10_000;

// Deep values are cloned, hashed and compared recursively, so keep a wide
// margin below each call.
pub(crate) const RED_ZONE: usize = 1024 * 1024;
pub(crate) const STACK_SEGMENT: usize = 8 * 1024 * 1024;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    /// No rule applies: a pattern failed to match, or `|_ . _|` was applied
    /// outside its domain.
    #[error("no match")]
    NoMatch,
    /// A `case` result matched a leaf of an earlier branch (or, backward, a
    /// reconstructed scrutinee matched an earlier pattern).
    #[error("first-match violation in `{function}`")]
    FirstMatchViolation { function: String },
    #[error("out of fuel")]
    OutOfFuel,
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("variable `{0}` left unused")]
    LeftoverVariable(String),
    #[error("variable `{0}` bound twice")]
    NotDisjoint(String),
}

impl EvalError {
    /// Short status label shared with the denotational side.
    pub fn status(&self) -> &'static str {
        match self {
            EvalError::NoMatch => "NoMatch",
            EvalError::FirstMatchViolation { .. } => "FirstMatchViolation",
            EvalError::OutOfFuel => "OutOfFuel",
            _ => "Error",
        }
    }
}

pub type EvalResult<T> = Result<T, EvalError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

/// A finite map from variables to values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subst(BTreeMap<String, Value>);

impl Subst {
    pub fn new() -> Self {
        Subst::default()
    }

    pub fn singleton(x: impl Into<String>, v: Value) -> Self {
        Subst(BTreeMap::from([(x.into(), v)]))
    }

    pub fn get(&self, x: &str) -> Option<&Value> {
        self.0.get(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Disjoint union; fails on a shared variable.
    pub fn union(mut self, other: Subst) -> EvalResult<Subst> {
        for (x, v) in other.0 {
            if self.0.contains_key(&x) {
                return Err(EvalError::NotDisjoint(x));
            }
            self.0.insert(x, v);
        }
        Ok(self)
    }

    /// Splits off the bindings of `vars`: returns `(those, rest)`.
    pub fn split<'a>(mut self, vars: impl IntoIterator<Item = &'a str>) -> EvalResult<(Subst, Subst)> {
        let mut taken = BTreeMap::new();
        for x in vars {
            match self.0.remove(x) {
                Some(v) => {
                    taken.insert(x.to_string(), v);
                }
                None if taken.contains_key(x) => {}
                None => return Err(EvalError::UnboundVariable(x.to_string())),
            }
        }
        Ok((Subst(taken), self))
    }
}

impl FromIterator<(String, Value)> for Subst {
    fn from_iter<I: IntoIterator<Item = (String, Value)>>(iter: I) -> Self {
        Subst(iter.into_iter().collect())
    }
}

/// Builds the value of `l` under `sigma`, which must bind exactly the
/// variables of `l`.
pub fn instantiate(sigma: &Subst, l: &LeftExpr) -> EvalResult<Value> {
    let mut left = sigma.0.clone();
    let v = build(&mut left, l)?;
    match left.into_keys().next() {
        Some(x) => Err(EvalError::LeftoverVariable(x)),
        None => Ok(v),
    }
}

fn build(sigma: &mut BTreeMap<String, Value>, l: &LeftExpr) -> EvalResult<Value> {
    match l {
        LeftExpr::Var(x) => sigma
            .remove(x)
            .ok_or_else(|| EvalError::UnboundVariable(x.clone())),
        LeftExpr::Ctor(c, args) => {
            let args = args
                .iter()
                .map(|a| build(sigma, a))
                .collect::<EvalResult<Vec<_>>>()?;
            Ok(Value::new(c.clone(), args))
        }
        LeftExpr::DupEq(inner) => build(sigma, inner)?.dupeq().ok_or(EvalError::NoMatch),
    }
}

/// The unique substitution `sigma` with `instantiate(sigma, l) = v`, if any.
pub fn match_pattern(v: &Value, l: &LeftExpr) -> Option<Subst> {
    let mut sigma = BTreeMap::new();
    bind(v, l, &mut sigma).then_some(Subst(sigma))
}

fn bind(v: &Value, l: &LeftExpr, sigma: &mut BTreeMap<String, Value>) -> bool {
    match l {
        LeftExpr::Var(x) => match sigma.get(x) {
            // Only reachable for non-linear patterns.
            Some(prev) => prev == v,
            None => {
                sigma.insert(x.clone(), v.clone());
                true
            }
        },
        LeftExpr::Ctor(c, args) => {
            v.ctor() == c
                && v.args().len() == args.len()
                && v.args().iter().zip(args).all(|(v, l)| bind(v, l, sigma))
        }
        LeftExpr::DupEq(inner) => match v.dupeq() {
            Some(w) => bind(&w, inner, sigma),
            None => false,
        },
    }
}

fn matches(v: &Value, l: &LeftExpr) -> bool {
    bind(v, l, &mut BTreeMap::new())
}

/// Applies `f` forward to `v` with at most `fuel` nested unfoldings.
pub fn apply(q: &Program, f: &str, v: &Value, fuel: u64) -> EvalResult<Value> {
    Machine::new(q, fuel).apply(f, v, Direction::Forward)
}

/// Finds the `u` with `apply(q, f, u) = v`.
pub fn apply_backward(q: &Program, f: &str, v: &Value, fuel: u64) -> EvalResult<Value> {
    Machine::new(q, fuel).apply(f, v, Direction::Backward)
}

pub fn apply_dir(q: &Program, f: &str, v: &Value, dir: Direction, fuel: u64) -> EvalResult<Value> {
    Machine::new(q, fuel).apply(f, v, dir)
}

/// Evaluates `e` under `sigma`, which must bind exactly the free variables
/// of `e`.
pub fn eval_expr(q: &Program, sigma: Subst, e: &Expr, fuel: u64) -> EvalResult<Value> {
    Machine::new(q, fuel).eval(sigma, e, "")
}

struct Machine<'q> {
    defs: HashMap<&'q str, &'q Def>,
    remaining: u64,
    /// Calls currently on the stack. Evaluation is deterministic, so meeting
    /// the same call again below itself means it can never return.
    active: HashSet<(&'q str, Direction, Value)>,
}

impl<'q> Machine<'q> {
    fn new(q: &'q Program, fuel: u64) -> Self {
        Machine {
            defs: q.defs.iter().map(|d| (d.name.as_str(), d)).collect(),
            remaining: fuel,
            active: HashSet::new(),
        }
    }

    fn apply(&mut self, f: &str, v: &Value, dir: Direction) -> EvalResult<Value> {
        let def = *self
            .defs
            .get(f)
            .ok_or_else(|| EvalError::UnknownFunction(f.to_string()))?;
        if self.remaining == 0 {
            return Err(EvalError::OutOfFuel);
        }
        let key = (def.name.as_str(), dir, v.clone());
        if self.active.contains(&key) {
            return Err(EvalError::OutOfFuel);
        }
        self.active.insert(key.clone());
        self.remaining -= 1;
        let out = stacker::maybe_grow(RED_ZONE, STACK_SEGMENT, || match dir {
            Direction::Forward => self.eval(Subst::singleton(&def.param, v.clone()), &def.body, &def.name),
            Direction::Backward => {
                let sigma = self.back(&def.body, v, &def.name)?;
                let (param, rest) = sigma.split([def.param.as_str()])?;
                if let Some((x, _)) = rest.iter().next() {
                    return Err(EvalError::LeftoverVariable(x.to_string()));
                }
                Ok(param.0.into_values().next().expect("parameter bound"))
            }
        });
        self.remaining += 1;
        self.active.remove(&key);
        out
    }

    fn eval(&mut self, sigma: Subst, e: &Expr, fname: &str) -> EvalResult<Value> {
        match e {
            Expr::Leaf(l) => instantiate(&sigma, l),
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
                let dir = if matches!(e, Expr::Let { .. }) {
                    Direction::Forward
                } else {
                    Direction::Backward
                };
                let (sigma_in, rest) = sigma.split(input.vars())?;
                let arg = instantiate(&sigma_in, input)?;
                let res = self.apply(func, &arg, dir)?;
                let sigma_out = match_pattern(&res, out).ok_or(EvalError::NoMatch)?;
                self.eval(rest.union(sigma_out)?, body, fname)
            }
            Expr::Case {
                scrutinee,
                branches,
            } => {
                let (sigma_s, rest) = sigma.split(scrutinee.vars())?;
                let v = instantiate(&sigma_s, scrutinee)?;
                let (j, sigma_j) = branches
                    .iter()
                    .enumerate()
                    .find_map(|(i, b)| match_pattern(&v, &b.pattern).map(|s| (i, s)))
                    .ok_or(EvalError::NoMatch)?;
                let w = self.eval(rest.union(sigma_j)?, &branches[j].body, fname)?;
                let earlier_leaf = branches[..j]
                    .iter()
                    .flat_map(|b| b.body.leaves())
                    .any(|l| matches(&w, l));
                if earlier_leaf {
                    return Err(EvalError::FirstMatchViolation {
                        function: fname.to_string(),
                    });
                }
                Ok(w)
            }
        }
    }

    /// The substitution `sigma` such that evaluating `e` under it yields `v`.
    fn back(&mut self, e: &Expr, v: &Value, fname: &str) -> EvalResult<Subst> {
        match e {
            Expr::Leaf(l) => match_pattern(v, l).ok_or(EvalError::NoMatch),
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
                let dir = if matches!(e, Expr::Let { .. }) {
                    Direction::Backward
                } else {
                    Direction::Forward
                };
                let sigma = self.back(body, v, fname)?;
                let (sigma_out, rest) = sigma.split(out.vars())?;
                let res = instantiate(&sigma_out, out)?;
                let arg = self.apply(func, &res, dir)?;
                let sigma_in = match_pattern(&arg, input).ok_or(EvalError::NoMatch)?;
                sigma_in.union(rest)
            }
            Expr::Case {
                scrutinee,
                branches,
            } => {
                let j = branches
                    .iter()
                    .position(|b| b.body.leaves().into_iter().any(|l| matches(v, l)))
                    .ok_or(EvalError::NoMatch)?;
                let sigma = self.back(&branches[j].body, v, fname)?;
                let (sigma_j, rest) = sigma.split(branches[j].pattern.vars())?;
                let scrut = instantiate(&sigma_j, &branches[j].pattern)?;
                if branches[..j].iter().any(|b| matches(&scrut, &b.pattern)) {
                    return Err(EvalError::FirstMatchViolation {
                        function: fname.to_string(),
                    });
                }
                let sigma_s = match_pattern(&scrut, scrutinee).ok_or(EvalError::NoMatch)?;
                sigma_s.union(rest)
            }
        }
    }
}
