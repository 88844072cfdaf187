//! Left expressions, expressions and programs as morphisms over `T(S)`.

use std::collections::HashMap;

use super::encode::{node, pack, tree_obj, unpack, SymbolTable};
use super::DenError;
use crate::invcat::{
    compose_all, dagger, delta, first_match_guard, fix, identity, join, join_in, oplus, otimes,
    restrict, rewire, DecIdem, Elem, Morph, ObjDesc, Wiring,
};
use crate::syntax::{Def, Expr, LeftExpr, Program};
use crate::value::TUPLE;

fn tensor_all(ms: Vec<Morph>) -> Morph {
    let mut it = ms.into_iter().rev();
    match it.next() {
        None => identity(ObjDesc::One),
        Some(last) => it.fold(last, |acc, m| otimes(&m, &acc)),
    }
}

fn nest_right(ws: Vec<Wiring>) -> Wiring {
    let mut it = ws.into_iter().rev();
    match it.next() {
        None => Wiring::Unit,
        Some(last) => it.fold(last, |acc, w| Wiring::pair(w, acc)),
    }
}

/// Rearranges variables laid out as the groups `from` into the groups
/// `to`; each group is a right-nested tensor, and so is the list of groups.
fn arrange(from: &[&[&str]], to: &[&[&str]]) -> Result<Morph, DenError> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut layout = |groups: &[&[&str]]| {
        nest_right(
            groups
                .iter()
                .map(|g| {
                    let ws: Vec<usize> = g
                        .iter()
                        .map(|x| {
                            let next = ids.len();
                            *ids.entry(x.to_string()).or_insert(next)
                        })
                        .collect();
                    Wiring::flat(&ws)
                })
                .collect(),
        )
    };
    let a = layout(from);
    let b = layout(to);
    Ok(rewire(&tree_obj(), a, b)?)
}

fn tensor_obj(n: usize) -> ObjDesc {
    ObjDesc::tensor_pow(&tree_obj(), n)
}

/// `ctx` minus the variables of `used`, which must all occur in `ctx`.
fn remove<'a>(ctx: &[&'a str], used: &[&str]) -> Result<Vec<&'a str>, DenError> {
    if let Some(x) = used.iter().find(|x| !ctx.contains(x)) {
        return Err(DenError::Context(format!("`{x}` is not among {ctx:?}")));
    }
    Ok(ctx.iter().copied().filter(|x| !used.contains(x)).collect())
}

/// The partial isomorphism on `T` that duplicates a one-tuple, contracts
/// a two-tuple of equal components, and fixes a two-tuple of distinct ones.
pub fn dupeq_morphism(tbl: &SymbolTable) -> Result<Morph, DenError> {
    let t = tree_obj();
    let tuple = node(TUPLE, tbl)?;
    let untuple = dagger(&tuple);
    let eq = delta(t.clone());
    let distinct = DecIdem::from_restriction(&restrict(&dagger(&eq))).complement();
    let contract = compose_all(&[
        untuple.clone(),
        unpack(2)?,
        dagger(&eq),
        pack(1)?,
        tuple.clone(),
    ])?;
    let keep = compose_all(&[
        untuple.clone(),
        unpack(2)?,
        distinct.as_morph(),
        pack(2)?,
        tuple.clone(),
    ])?;
    let duplicate = compose_all(&[untuple, unpack(1)?, eq, pack(2)?, tuple])?;
    Ok(join(&[contract, keep, duplicate])?)
}

/// `⟦l⟧ : T^⊗k → T` where the wires of the tensor carry the variables of
/// `ctx` in order. `ctx` must list exactly the variables of `l`.
pub fn sem_left(l: &LeftExpr, ctx: &[&str], tbl: &SymbolTable) -> Result<Morph, DenError> {
    let mut vars = l.vars();
    let mut sorted_ctx = ctx.to_vec();
    vars.sort_unstable();
    sorted_ctx.sort_unstable();
    if vars != sorted_ctx {
        return Err(DenError::Context(format!("{l:?} used in context {ctx:?}")));
    }
    match l {
        LeftExpr::Var(_) => Ok(identity(tree_obj())),
        LeftExpr::DupEq(inner) => Ok(compose_all(&[sem_left(inner, ctx, tbl)?, dupeq_morphism(tbl)?])?),
        LeftExpr::Ctor(c, args) => {
            let groups: Vec<Vec<&str>> = args.iter().map(|a| a.vars()).collect();
            let group_refs: Vec<&[&str]> = groups.iter().map(Vec::as_slice).collect();
            let children = args
                .iter()
                .zip(&groups)
                .map(|(a, g)| sem_left(a, g, tbl))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(compose_all(&[
                arrange(&[ctx], &group_refs)?,
                tensor_all(children),
                pack(args.len())?,
                node(c, tbl)?,
            ])?)
        }
    }
}

/// What expressions need from the surrounding program: the encoding, the
/// index of each function, and the self-reference standing for the whole
/// program.
pub struct SemEnv<'a> {
    pub table: &'a SymbolTable,
    pub funcs: &'a HashMap<String, usize>,
    pub xi: &'a Morph,
}

impl SemEnv<'_> {
    /// `ξ_f = inj_f† ∘ ξ ∘ inj_f`, or its dagger.
    fn function(&self, f: &str, backward: bool) -> Result<Morph, DenError> {
        let &i = self
            .funcs
            .get(f)
            .ok_or_else(|| DenError::UnknownFunction(f.to_string()))?;
        let inj = summand(i, self.funcs.len());
        let m = compose_all(&[inj.clone(), self.xi.clone(), dagger(&inj)])?;
        Ok(if backward { dagger(&m) } else { m })
    }
}

/// `T → T^⊕n` into the `i`-th summand.
pub fn summand(i: usize, n: usize) -> Morph {
    Morph::iso(
        tree_obj(),
        ObjDesc::sum_pow(&tree_obj(), n),
        move |x| Some(Elem::inject(i, n, x.clone())),
        move |y| match y.project(n) {
            Some((k, x)) if k == i => Some(x.clone()),
            _ => None,
        },
    )
}

/// Restriction to the elements matching `l`.
fn matches(l: &LeftExpr, tbl: &SymbolTable) -> Result<DecIdem, DenError> {
    Ok(DecIdem::from_restriction(&dagger(&sem_left(l, &l.vars(), tbl)?)))
}

/// `⟦e⟧ : T^⊗k → T` over the variables `ctx`.
pub fn sem_expr(e: &Expr, ctx: &[&str], env: &SemEnv) -> Result<Morph, DenError> {
    let t = tree_obj();
    match e {
        Expr::Leaf(l) => sem_left(l, ctx, env.table),
        Expr::Let { out, func, input, body } => sem_call(input, func, false, out, body, ctx, env),
        Expr::RLet { input, func, out, body } => sem_call(input, func, true, out, body, ctx, env),
        Expr::Case { scrutinee, branches } => {
            let gs = scrutinee.vars();
            let rest = remove(ctx, &gs)?;
            let r = identity(tensor_obj(rest.len()));
            let prefix = compose_all(&[
                arrange(&[ctx], &[&gs, &rest])?,
                otimes(&sem_left(scrutinee, &gs, env.table)?, &r),
            ])?;
            let mut earlier_patterns = Vec::new();
            let mut earlier_leaves = Vec::new();
            let mut arms = Vec::new();
            for b in branches {
                let pv = b.pattern.vars();
                let inner: Vec<&str> = rest.iter().chain(&pv).copied().collect();
                let in_guard = first_match_guard(&DecIdem::any(t.clone(), &earlier_patterns)?);
                let out_guard = dagger(&first_match_guard(&DecIdem::any(t.clone(), &earlier_leaves)?));
                arms.push(compose_all(&[
                    otimes(&in_guard, &r),
                    otimes(&dagger(&sem_left(&b.pattern, &pv, env.table)?), &r),
                    arrange(&[&pv, &rest], &[&inner])?,
                    sem_expr(&b.body, &inner, env)?,
                    out_guard,
                ])?);
                earlier_patterns.push(matches(&b.pattern, env.table)?);
                for leaf in b.body.leaves() {
                    earlier_leaves.push(matches(leaf, env.table)?);
                }
            }
            let all = join_in(prefix.tgt().clone(), t, &arms)?;
            Ok(compose_all(&[prefix, all])?)
        }
    }
}

fn sem_call(
    input: &LeftExpr,
    func: &str,
    backward: bool,
    out: &LeftExpr,
    body: &Expr,
    ctx: &[&str],
    env: &SemEnv,
) -> Result<Morph, DenError> {
    let gin = input.vars();
    let rest = remove(ctx, &gin)?;
    let r = identity(tensor_obj(rest.len()));
    let gout = out.vars();
    let inner: Vec<&str> = rest.iter().chain(&gout).copied().collect();
    Ok(compose_all(&[
        arrange(&[ctx], &[&gin, &rest])?,
        otimes(&sem_left(input, &gin, env.table)?, &r),
        otimes(&env.function(func, backward)?, &r),
        otimes(&dagger(&sem_left(out, &gout, env.table)?), &r),
        arrange(&[&gout, &rest], &[&inner])?,
        sem_expr(body, &inner, env)?,
    ])?)
}

pub fn sem_def(d: &Def, env: &SemEnv) -> Result<Morph, DenError> {
    sem_expr(&d.body, &[d.param.as_str()], env)
}

/// The whole program as one morphism on `T^⊕n`, the `i`-th summand
/// carrying the `i`-th function: the least fixed point of the map taking
/// `ξ` to the sum of the bodies interpreted with calls through `ξ`.
pub fn sem_program(q: &Program, tbl: &SymbolTable) -> Result<Morph, DenError> {
    let n = q.defs.len();
    let obj = ObjDesc::sum_pow(&tree_obj(), n);
    let funcs: HashMap<String, usize> = q
        .defs
        .iter()
        .enumerate()
        .map(|(i, d)| (d.name.clone(), i))
        .collect();
    let mut failure = None;
    let whole = fix(obj.clone(), obj.clone(), |xi| {
        let env = SemEnv { table: tbl, funcs: &funcs, xi };
        let built = q
            .defs
            .iter()
            .map(|d| sem_def(d, &env))
            .collect::<Result<Vec<_>, _>>();
        match built {
            Ok(parts) => {
                let mut it = parts.into_iter().rev();
                Ok(match it.next() {
                    None => identity(obj.clone()),
                    Some(last) => it.fold(last, |acc, m| oplus(&m, &acc)),
                })
            }
            Err(e) => {
                let msg = e.to_string();
                failure = Some(e);
                Err(crate::invcat::CatError::Shape(msg))
            }
        }
    });
    match (whole, failure) {
        (_, Some(e)) => Err(e),
        (w, None) => Ok(w?),
    }
}
