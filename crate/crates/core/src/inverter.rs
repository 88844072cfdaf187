//! Syntactic program inversion.
//!
//! Every definition body is first cut into its root-to-leaf paths. Each path
//! is a chain of `let`, `rlet` and case-match steps ending in a leaf; the
//! inverse definition has one `case` branch per path, matching on the leaf
//! and replaying the steps in reverse with `let` and `rlet` swapping the
//! direction of their callee. Branch order follows the leaves' left-to-right
//! order, which is what the symmetric first-match policy checks forward.
//!
//! Cutting into paths flattens nested `case`s; branches that differ in one
//! constructor argument only are regrouped into a nested `case` afterwards,
//! so inverting twice returns the original shape for the usual
//! pattern-then-discriminate style.

use std::collections::{BTreeSet, HashMap};

use crate::syntax::{Branch, Def, Expr, LeftExpr, Program};

const INV_SUFFIX: &str = "_inv";

/// Name of the inverse of `f`: `f_inv`, or `f` when `f` is already `f_inv`.
pub fn inverse_name(f: &str) -> String {
    match f.strip_suffix(INV_SUFFIX) {
        Some(base) if !base.is_empty() => base.to_string(),
        _ => format!("{f}{INV_SUFFIX}"),
    }
}

pub fn invert_program(q: &Program) -> Program {
    Program::new(q.defs.iter().map(invert_def).collect())
}

enum Step {
    Let { out: LeftExpr, func: String, input: LeftExpr },
    RLet { input: LeftExpr, func: String, out: LeftExpr },
    Match { scrutinee: LeftExpr, pattern: LeftExpr },
}

struct Path {
    steps: Vec<Step>,
    leaf: LeftExpr,
}

pub fn invert_def(d: &Def) -> Def {
    let mut names = NameSupply::new(d);
    let body = names.uniquify(&d.body, &mut BTreeSet::from([d.param.clone()]));
    let mut paths = Vec::new();
    flatten(&body, &mut Vec::new(), &mut paths);

    let branches: Vec<Branch> = paths
        .into_iter()
        .map(|p| {
            let mut k = Expr::Leaf(LeftExpr::var(&d.param));
            for step in p.steps {
                k = reverse_step(step, k);
            }
            Branch {
                pattern: p.leaf,
                body: k,
            }
        })
        .collect();

    let name = inverse_name(&d.name);
    if let [Branch {
        pattern: LeftExpr::Var(x),
        ..
    }] = branches.as_slice()
    {
        let param = x.clone();
        let body = branches.into_iter().next().unwrap().body;
        return Def::new(name, param, body);
    }

    let param = names.fresh(&d.param);
    let case = Expr::Case {
        scrutinee: LeftExpr::var(&param),
        branches,
    };
    Def::new(name, param, names.regroup(case))
}

fn flatten(e: &Expr, prefix: &mut Vec<Step>, out: &mut Vec<Path>) {
    match e {
        Expr::Leaf(l) => out.push(Path {
            steps: prefix.iter().map(Step::duplicate).collect(),
            leaf: l.clone(),
        }),
        Expr::Let {
            out: o,
            func,
            input,
            body,
        } => {
            prefix.push(Step::Let {
                out: o.clone(),
                func: func.clone(),
                input: input.clone(),
            });
            flatten(body, prefix, out);
            prefix.pop();
        }
        Expr::RLet {
            input,
            func,
            out: o,
            body,
        } => {
            prefix.push(Step::RLet {
                input: input.clone(),
                func: func.clone(),
                out: o.clone(),
            });
            flatten(body, prefix, out);
            prefix.pop();
        }
        Expr::Case {
            scrutinee,
            branches,
        } => {
            for b in branches {
                prefix.push(Step::Match {
                    scrutinee: scrutinee.clone(),
                    pattern: b.pattern.clone(),
                });
                flatten(&b.body, prefix, out);
                prefix.pop();
            }
        }
    }
}

impl Step {
    fn duplicate(&self) -> Step {
        match self {
            Step::Let { out, func, input } => Step::Let {
                out: out.clone(),
                func: func.clone(),
                input: input.clone(),
            },
            Step::RLet { input, func, out } => Step::RLet {
                input: input.clone(),
                func: func.clone(),
                out: out.clone(),
            },
            Step::Match { scrutinee, pattern } => Step::Match {
                scrutinee: scrutinee.clone(),
                pattern: pattern.clone(),
            },
        }
    }
}

/// Wraps `k` (which consumes what the step consumed) with the reverse of
/// `step` (which produces it from what the step produced).
fn reverse_step(step: Step, mut k: Expr) -> Expr {
    match step {
        Step::Let { out, func, input } => Expr::Let {
            out: input,
            func: inverse_name(&func),
            input: out,
            body: Box::new(k),
        },
        Step::RLet { input, func, out } => Expr::RLet {
            input: out,
            func: inverse_name(&func),
            out: input,
            body: Box::new(k),
        },
        Step::Match {
            scrutinee: LeftExpr::Var(y),
            pattern,
        } => {
            substitute_expr(&mut k, &y, &pattern);
            k
        }
        Step::Match { scrutinee, pattern } => Expr::Case {
            scrutinee: pattern,
            branches: vec![Branch {
                pattern: scrutinee,
                body: k,
            }],
        },
    }
}

/// Replaces the single free use of `var` in `e`.
fn substitute_expr(e: &mut Expr, var: &str, with: &LeftExpr) -> bool {
    match e {
        Expr::Leaf(l) => l.substitute(var, with),
        Expr::Let {
            out, input, body, ..
        }
        | Expr::RLet {
            out, input, body, ..
        } => {
            input.substitute(var, with)
                || (!out.var_set().contains(var) && substitute_expr(body, var, with))
        }
        Expr::Case {
            scrutinee,
            branches,
        } => {
            scrutinee.substitute(var, with)
                || branches.iter_mut().fold(false, |hit, b| {
                    let shadowed = b.pattern.var_set().contains(var);
                    (!shadowed && substitute_expr(&mut b.body, var, with)) || hit
                })
        }
    }
}

struct NameSupply {
    used: BTreeSet<String>,
}

impl NameSupply {
    fn new(d: &Def) -> Self {
        let mut vs = BTreeSet::new();
        d.body.all_vars(&mut vs);
        let mut used: BTreeSet<String> = vs.into_iter().map(str::to_string).collect();
        used.insert(d.param.clone());
        NameSupply { used }
    }

    /// `base` with enough primes to be unused; reserves the result.
    fn fresh(&mut self, base: &str) -> String {
        let mut name = format!("{base}'");
        while self.used.contains(&name) {
            name.push('\'');
        }
        self.used.insert(name.clone());
        name
    }

    /// Renames binders so that no variable is bound twice along one path.
    fn uniquify(&mut self, e: &Expr, bound: &mut BTreeSet<String>) -> Expr {
        self.uniquify_in(e, bound, &HashMap::new())
    }

    fn uniquify_in(
        &mut self,
        e: &Expr,
        bound: &mut BTreeSet<String>,
        ren: &HashMap<String, String>,
    ) -> Expr {
        let use_ = |l: &LeftExpr| rename_left(l, ren);
        match e {
            Expr::Leaf(l) => Expr::Leaf(use_(l)),
            Expr::Let {
                out,
                func,
                input,
                body,
            } => {
                let input = use_(input);
                let mut ren = ren.clone();
                let out = self.bind(out, bound, &mut ren);
                Expr::Let {
                    out,
                    func: func.clone(),
                    input,
                    body: Box::new(self.uniquify_in(body, bound, &ren)),
                }
            }
            Expr::RLet {
                input,
                func,
                out,
                body,
            } => {
                let input = use_(input);
                let mut ren = ren.clone();
                let out = self.bind(out, bound, &mut ren);
                Expr::RLet {
                    input,
                    func: func.clone(),
                    out,
                    body: Box::new(self.uniquify_in(body, bound, &ren)),
                }
            }
            Expr::Case {
                scrutinee,
                branches,
            } => Expr::Case {
                scrutinee: use_(scrutinee),
                branches: branches
                    .iter()
                    .map(|b| {
                        let mut bound = bound.clone();
                        let mut ren = ren.clone();
                        let pattern = self.bind(&b.pattern, &mut bound, &mut ren);
                        Branch {
                            pattern,
                            body: self.uniquify_in(&b.body, &mut bound, &ren),
                        }
                    })
                    .collect(),
            },
        }
    }

    fn bind(
        &mut self,
        l: &LeftExpr,
        bound: &mut BTreeSet<String>,
        ren: &mut HashMap<String, String>,
    ) -> LeftExpr {
        let mut l = l.clone();
        for x in l.clone().vars() {
            if bound.contains(x) {
                let y = self.fresh(x);
                l.substitute(x, &LeftExpr::var(&y));
                ren.insert(x.to_string(), y.clone());
                bound.insert(y);
            } else {
                ren.remove(x);
                bound.insert(x.to_string());
            }
        }
        l
    }

    /// Nests `case s of { c(.., p1, ..) -> e1 ; c(.., p2, ..) -> e2 ; .. }`
    /// into `case s of { c(.., y, ..) -> case y of { p1 -> e1 ; p2 -> e2 ; .. } }`
    /// when all other arguments are variables.
    fn regroup(&mut self, e: Expr) -> Expr {
        let Expr::Case {
            scrutinee,
            branches,
        } = e
        else {
            return e;
        };
        let Some(k) = discriminating_position(&branches) else {
            return Expr::Case {
                scrutinee,
                branches,
            };
        };
        let (c, arity) = match &branches[0].pattern {
            LeftExpr::Ctor(c, args) => (c.clone(), args.len()),
            _ => unreachable!(),
        };
        let mut shared = Vec::with_capacity(arity);
        for j in 0..arity {
            if j == k {
                shared.push(self.fresh("y"));
                continue;
            }
            let names: BTreeSet<&str> = branches
                .iter()
                .map(|b| arg_var(&b.pattern, j))
                .collect();
            shared.push(match names.into_iter().collect::<Vec<_>>().as_slice() {
                [only] => only.to_string(),
                _ => self.fresh("v"),
            });
        }
        let inner = branches
            .into_iter()
            .map(|b| {
                let LeftExpr::Ctor(_, mut args) = b.pattern else {
                    unreachable!()
                };
                let mut body = b.body;
                for (j, name) in shared.iter().enumerate() {
                    if j != k {
                        let old = arg_var_owned(&args[j]);
                        if &old != name {
                            substitute_expr(&mut body, &old, &LeftExpr::var(name));
                        }
                    }
                }
                Branch {
                    pattern: args.swap_remove(k),
                    body,
                }
            })
            .collect();
        let inner = self.regroup(Expr::Case {
            scrutinee: LeftExpr::var(&shared[k]),
            branches: inner,
        });
        Expr::Case {
            scrutinee,
            branches: vec![Branch {
                pattern: LeftExpr::Ctor(c, shared.into_iter().map(LeftExpr::Var).collect()),
                body: inner,
            }],
        }
    }
}

fn discriminating_position(branches: &[Branch]) -> Option<usize> {
    if branches.len() < 2 {
        return None;
    }
    let LeftExpr::Ctor(c, args) = &branches[0].pattern else {
        return None;
    };
    let same_shape = branches.iter().all(|b| {
        matches!(&b.pattern, LeftExpr::Ctor(c2, a2) if c2 == c && a2.len() == args.len())
    });
    if !same_shape {
        return None;
    }
    let non_var: Vec<usize> = (0..args.len())
        .filter(|&j| {
            branches.iter().any(|b| match &b.pattern {
                LeftExpr::Ctor(_, a) => !matches!(a[j], LeftExpr::Var(_)),
                _ => true,
            })
        })
        .collect();
    match non_var.as_slice() {
        [k] => Some(*k),
        _ => None,
    }
}

fn arg_var(p: &LeftExpr, j: usize) -> &str {
    match p {
        LeftExpr::Ctor(_, args) => match &args[j] {
            LeftExpr::Var(x) => x,
            _ => unreachable!(),
        },
        _ => unreachable!(),
    }
}

fn arg_var_owned(l: &LeftExpr) -> String {
    match l {
        LeftExpr::Var(x) => x.clone(),
        _ => unreachable!(),
    }
}

fn rename_left(l: &LeftExpr, ren: &HashMap<String, String>) -> LeftExpr {
    match l {
        LeftExpr::Var(x) => LeftExpr::Var(ren.get(x).cloned().unwrap_or_else(|| x.clone())),
        LeftExpr::Ctor(c, args) => {
            LeftExpr::Ctor(c.clone(), args.iter().map(|a| rename_left(a, ren)).collect())
        }
        LeftExpr::DupEq(inner) => LeftExpr::dupeq(rename_left(inner, ren)),
    }
}

/// Structural equality up to consistent renaming of bound variables.
/// Function names must agree exactly.
pub fn alpha_eq(p: &Program, q: &Program) -> bool {
    p.defs.len() == q.defs.len() && p.defs.iter().zip(&q.defs).all(|(a, b)| alpha_eq_def(a, b))
}

pub fn alpha_eq_def(a: &Def, b: &Def) -> bool {
    let mut st = Alpha::default();
    let i = st.bind_var();
    let env_a = HashMap::from([(a.param.as_str(), i)]);
    let env_b = HashMap::from([(b.param.as_str(), i)]);
    a.name == b.name && st.expr(&a.body, &b.body, env_a, env_b)
}

#[derive(Default)]
struct Alpha {
    next: usize,
}

type Env<'a> = HashMap<&'a str, usize>;

impl Alpha {
    fn bind_var(&mut self) -> usize {
        self.next += 1;
        self.next
    }

    fn uses(&self, a: &LeftExpr, b: &LeftExpr, ea: &Env, eb: &Env) -> bool {
        match (a, b) {
            (LeftExpr::Var(x), LeftExpr::Var(y)) => match (ea.get(x.as_str()), eb.get(y.as_str())) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            },
            (LeftExpr::Ctor(c, xs), LeftExpr::Ctor(d, ys)) => {
                c == d && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.uses(x, y, ea, eb))
            }
            (LeftExpr::DupEq(x), LeftExpr::DupEq(y)) => self.uses(x, y, ea, eb),
            _ => false,
        }
    }

    fn binds<'a>(&mut self, a: &'a LeftExpr, b: &'a LeftExpr, ea: &mut Env<'a>, eb: &mut Env<'a>) -> bool {
        match (a, b) {
            (LeftExpr::Var(x), LeftExpr::Var(y)) => {
                let i = self.bind_var();
                ea.insert(x, i);
                eb.insert(y, i);
                true
            }
            (LeftExpr::Ctor(c, xs), LeftExpr::Ctor(d, ys)) => {
                c == d
                    && xs.len() == ys.len()
                    && xs.iter().zip(ys).all(|(x, y)| self.binds(x, y, ea, eb))
            }
            (LeftExpr::DupEq(x), LeftExpr::DupEq(y)) => self.binds(x, y, ea, eb),
            _ => false,
        }
    }

    fn expr<'a>(&mut self, a: &'a Expr, b: &'a Expr, mut ea: Env<'a>, mut eb: Env<'a>) -> bool {
        match (a, b) {
            (Expr::Leaf(x), Expr::Leaf(y)) => self.uses(x, y, &ea, &eb),
            (
                Expr::Let {
                    out: o1,
                    func: f1,
                    input: i1,
                    body: b1,
                },
                Expr::Let {
                    out: o2,
                    func: f2,
                    input: i2,
                    body: b2,
                },
            )
            | (
                Expr::RLet {
                    input: i1,
                    func: f1,
                    out: o1,
                    body: b1,
                },
                Expr::RLet {
                    input: i2,
                    func: f2,
                    out: o2,
                    body: b2,
                },
            ) => {
                f1 == f2
                    && self.uses(i1, i2, &ea, &eb)
                    && self.binds(o1, o2, &mut ea, &mut eb)
                    && self.expr(b1, b2, ea, eb)
            }
            (
                Expr::Case {
                    scrutinee: s1,
                    branches: bs1,
                },
                Expr::Case {
                    scrutinee: s2,
                    branches: bs2,
                },
            ) => {
                self.uses(s1, s2, &ea, &eb)
                    && bs1.len() == bs2.len()
                    && bs1.iter().zip(bs2).all(|(x, y)| {
                        let (mut ea, mut eb) = (ea.clone(), eb.clone());
                        self.binds(&x.pattern, &y.pattern, &mut ea, &mut eb)
                            && self.expr(&x.body, &y.body, ea, eb)
                    })
            }
            _ => false,
        }
    }
}
