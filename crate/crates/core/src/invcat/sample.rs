//! Enumeration and seeded random generation of elements, used to check
//! laws pointwise.

use rand::Rng;

use super::{Elem, Morph, ObjDesc, Stop};

pub const DEFAULT_DEPTH: usize = 6;

/// All elements of a `Mu`-free closed object, or `None` if it has `Mu`.
pub fn enumerate(obj: &ObjDesc) -> Option<Vec<Elem>> {
    if obj.has_mu() || !obj.is_closed() {
        return None;
    }
    Some(enumerate_bounded(obj, 0))
}

/// Every element whose nesting of `Roll`s is at most `depth`.
pub fn enumerate_bounded(obj: &ObjDesc, depth: usize) -> Vec<Elem> {
    match obj {
        ObjDesc::Zero | ObjDesc::Var(_) => Vec::new(),
        ObjDesc::One => vec![Elem::Star],
        ObjDesc::Sum(a, b) => enumerate_bounded(a, depth)
            .into_iter()
            .map(Elem::inl)
            .chain(enumerate_bounded(b, depth).into_iter().map(Elem::inr))
            .collect(),
        ObjDesc::Prod(a, b) => {
            let bs = enumerate_bounded(b, depth);
            enumerate_bounded(a, depth)
                .into_iter()
                .flat_map(|x| bs.iter().map(move |y| Elem::pair(x.clone(), y.clone())))
                .collect()
        }
        ObjDesc::Mu(_) => match (depth, obj.unfold()) {
            (0, _) | (_, None) => Vec::new(),
            (d, Some(u)) => enumerate_bounded(&u, d - 1).into_iter().map(Elem::roll).collect(),
        },
    }
}

/// A smallest element, if the object has any finite element.
pub fn minimal(obj: &ObjDesc) -> Option<Elem> {
    minimal_in(obj, &mut Vec::new())
}

fn minimal_in(obj: &ObjDesc, open: &mut Vec<ObjDesc>) -> Option<Elem> {
    match obj {
        ObjDesc::Zero | ObjDesc::Var(_) => None,
        ObjDesc::One => Some(Elem::Star),
        ObjDesc::Sum(a, b) => minimal_in(a, open)
            .map(Elem::inl)
            .or_else(|| minimal_in(b, open).map(Elem::inr)),
        ObjDesc::Prod(a, b) => Some(Elem::pair(minimal_in(a, open)?, minimal_in(b, open)?)),
        ObjDesc::Mu(_) => {
            if open.contains(obj) {
                return None;
            }
            open.push(obj.clone());
            let r = obj.unfold().and_then(|u| minimal_in(&u, open)).map(Elem::roll);
            open.pop();
            r
        }
    }
}

/// A random element; below `depth` levels of `Roll` every recursive
/// object is completed with its minimal element.
pub fn sample(obj: &ObjDesc, depth: usize, rng: &mut impl Rng) -> Option<Elem> {
    match obj {
        ObjDesc::Zero | ObjDesc::Var(_) => None,
        ObjDesc::One => Some(Elem::Star),
        ObjDesc::Sum(a, b) => {
            let left_first = rng.gen_bool(0.5);
            let (first, second) = if left_first { (a, b) } else { (b, a) };
            let wrap = |left: bool, e: Elem| if left { Elem::inl(e) } else { Elem::inr(e) };
            sample(first, depth, rng)
                .map(|e| wrap(left_first, e))
                .or_else(|| sample(second, depth, rng).map(|e| wrap(!left_first, e)))
        }
        ObjDesc::Prod(a, b) => Some(Elem::pair(sample(a, depth, rng)?, sample(b, depth, rng)?)),
        ObjDesc::Mu(_) if depth == 0 => minimal(obj),
        ObjDesc::Mu(_) => Some(Elem::roll(sample(&obj.unfold()?, depth - 1, rng)?)),
    }
}

pub fn samples(obj: &ObjDesc, n: usize, depth: usize, rng: &mut impl Rng) -> Vec<Elem> {
    (0..n).filter_map(|_| sample(obj, depth, rng)).collect()
}

/// Sampled check of `f ≤ g`: wherever `f` is defined, `g` agrees.
pub fn leq_on(f: &Morph, g: &Morph, xs: &[Elem], fuel: u64) -> bool {
    xs.iter().all(|x| match f.run(x, fuel) {
        Ok(y) => g.run(x, fuel) == Ok(y),
        Err(Stop::Undefined) => true,
        Err(_) => false,
    })
}

/// First input on which `f` and `g` give different outcomes, forward or
/// backward; backward is probed on `ys`.
pub fn disagreement(f: &Morph, g: &Morph, xs: &[Elem], ys: &[Elem], fuel: u64) -> Option<String> {
    for x in xs {
        let (a, b) = (f.run(x, fuel), g.run(x, fuel));
        if a != b {
            return Some(format!("forward at {x}: {a:?} vs {b:?}"));
        }
    }
    for y in ys {
        let (a, b) = (f.run_back(y, fuel), g.run_back(y, fuel));
        if a != b {
            return Some(format!("backward at {y}: {a:?} vs {b:?}"));
        }
    }
    None
}

/// Checks the partial-isomorphism law at each sample: a defined forward
/// result maps back to its input, and vice versa.
pub fn inverse_violation(f: &Morph, xs: &[Elem], ys: &[Elem], fuel: u64) -> Option<String> {
    for x in xs {
        if let Ok(y) = f.run(x, fuel) {
            let back = f.run_back(&y, fuel);
            if back.as_ref() != Ok(x) {
                return Some(format!("{x} ↦ {y} ↦ {back:?}"));
            }
        }
    }
    for y in ys {
        if let Ok(x) = f.run_back(y, fuel) {
            let fwd = f.run(&x, fuel);
            if fwd.as_ref() != Ok(y) {
                return Some(format!("{y} ↤ {x} ↤ {fwd:?}"));
            }
        }
    }
    None
}
