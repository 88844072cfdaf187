//! Structural isomorphisms: unitors, associators and symmetries of both
//! tensors, distributors, annihilators, and the fold/unfold pair of a
//! recursive object.

use std::collections::HashMap;

use super::{CatError, Elem, Morph, ObjDesc};

fn prod(a: &ObjDesc, b: &ObjDesc) -> ObjDesc {
    ObjDesc::prod(a.clone(), b.clone())
}

fn sum(a: &ObjDesc, b: &ObjDesc) -> ObjDesc {
    ObjDesc::sum(a.clone(), b.clone())
}

/// `λ: 1 ⊗ A → A`
pub fn tensor_unit_left(a: &ObjDesc) -> Morph {
    Morph::iso(
        prod(&ObjDesc::One, a),
        a.clone(),
        |x| match x.as_pair()? {
            (Elem::Star, b) => Some(b.clone()),
            _ => None,
        },
        |y| Some(Elem::pair(Elem::Star, y.clone())),
    )
}

/// `ρ: A ⊗ 1 → A`
pub fn tensor_unit_right(a: &ObjDesc) -> Morph {
    Morph::iso(
        prod(a, &ObjDesc::One),
        a.clone(),
        |x| match x.as_pair()? {
            (b, Elem::Star) => Some(b.clone()),
            _ => None,
        },
        |y| Some(Elem::pair(y.clone(), Elem::Star)),
    )
}

/// `α: A ⊗ (B ⊗ C) → (A ⊗ B) ⊗ C`
pub fn tensor_assoc(a: &ObjDesc, b: &ObjDesc, c: &ObjDesc) -> Morph {
    Morph::iso(
        prod(a, &prod(b, c)),
        prod(&prod(a, b), c),
        |x| {
            let (a, bc) = x.as_pair()?;
            let (b, c) = bc.as_pair()?;
            Some(Elem::pair(Elem::pair(a.clone(), b.clone()), c.clone()))
        },
        |y| {
            let (ab, c) = y.as_pair()?;
            let (a, b) = ab.as_pair()?;
            Some(Elem::pair(a.clone(), Elem::pair(b.clone(), c.clone())))
        },
    )
}

/// `γ: A ⊗ B → B ⊗ A`
pub fn tensor_swap(a: &ObjDesc, b: &ObjDesc) -> Morph {
    let swap = |x: &Elem| {
        let (l, r) = x.as_pair()?;
        Some(Elem::pair(r.clone(), l.clone()))
    };
    Morph::iso(prod(a, b), prod(b, a), swap, swap)
}

/// `0 ⊕ A → A`
pub fn sum_unit_left(a: &ObjDesc) -> Morph {
    Morph::iso(
        sum(&ObjDesc::Zero, a),
        a.clone(),
        |x| x.as_inr().cloned(),
        |y| Some(Elem::inr(y.clone())),
    )
}

/// `A ⊕ 0 → A`
pub fn sum_unit_right(a: &ObjDesc) -> Morph {
    Morph::iso(
        sum(a, &ObjDesc::Zero),
        a.clone(),
        |x| x.as_inl().cloned(),
        |y| Some(Elem::inl(y.clone())),
    )
}

/// `A ⊕ (B ⊕ C) → (A ⊕ B) ⊕ C`
pub fn sum_assoc(a: &ObjDesc, b: &ObjDesc, c: &ObjDesc) -> Morph {
    Morph::iso(
        sum(a, &sum(b, c)),
        sum(&sum(a, b), c),
        |x| match x {
            Elem::InL(a) => Some(Elem::inl(Elem::inl((**a).clone()))),
            Elem::InR(bc) => match &**bc {
                Elem::InL(b) => Some(Elem::inl(Elem::inr((**b).clone()))),
                Elem::InR(c) => Some(Elem::inr((**c).clone())),
                _ => None,
            },
            _ => None,
        },
        |y| match y {
            Elem::InL(ab) => match &**ab {
                Elem::InL(a) => Some(Elem::inl((**a).clone())),
                Elem::InR(b) => Some(Elem::inr(Elem::inl((**b).clone()))),
                _ => None,
            },
            Elem::InR(c) => Some(Elem::inr(Elem::inr((**c).clone()))),
            _ => None,
        },
    )
}

/// `A ⊕ B → B ⊕ A`
pub fn sum_swap(a: &ObjDesc, b: &ObjDesc) -> Morph {
    let swap = |x: &Elem| match x {
        Elem::InL(v) => Some(Elem::inr((**v).clone())),
        Elem::InR(v) => Some(Elem::inl((**v).clone())),
        _ => None,
    };
    Morph::iso(sum(a, b), sum(b, a), swap, swap)
}

/// `δ_L: A ⊗ (B ⊕ C) → (A ⊗ B) ⊕ (A ⊗ C)`
pub fn dist_left(a: &ObjDesc, b: &ObjDesc, c: &ObjDesc) -> Morph {
    Morph::iso(
        prod(a, &sum(b, c)),
        sum(&prod(a, b), &prod(a, c)),
        |x| {
            let (a, bc) = x.as_pair()?;
            match bc {
                Elem::InL(b) => Some(Elem::inl(Elem::pair(a.clone(), (**b).clone()))),
                Elem::InR(c) => Some(Elem::inr(Elem::pair(a.clone(), (**c).clone()))),
                _ => None,
            }
        },
        |y| match y {
            Elem::InL(ab) => {
                let (a, b) = ab.as_pair()?;
                Some(Elem::pair(a.clone(), Elem::inl(b.clone())))
            }
            Elem::InR(ac) => {
                let (a, c) = ac.as_pair()?;
                Some(Elem::pair(a.clone(), Elem::inr(c.clone())))
            }
            _ => None,
        },
    )
}

/// `δ_R: (A ⊕ B) ⊗ C → (A ⊗ C) ⊕ (B ⊗ C)`
pub fn dist_right(a: &ObjDesc, b: &ObjDesc, c: &ObjDesc) -> Morph {
    Morph::iso(
        prod(&sum(a, b), c),
        sum(&prod(a, c), &prod(b, c)),
        |x| {
            let (ab, c) = x.as_pair()?;
            match ab {
                Elem::InL(a) => Some(Elem::inl(Elem::pair((**a).clone(), c.clone()))),
                Elem::InR(b) => Some(Elem::inr(Elem::pair((**b).clone(), c.clone()))),
                _ => None,
            }
        },
        |y| match y {
            Elem::InL(ac) => {
                let (a, c) = ac.as_pair()?;
                Some(Elem::pair(Elem::inl(a.clone()), c.clone()))
            }
            Elem::InR(bc) => {
                let (b, c) = bc.as_pair()?;
                Some(Elem::pair(Elem::inr(b.clone()), c.clone()))
            }
            _ => None,
        },
    )
}

/// `ν_L: 0 ⊗ A → 0`. Both sides are empty.
pub fn annihilator_left(a: &ObjDesc) -> Morph {
    Morph::iso(prod(&ObjDesc::Zero, a), ObjDesc::Zero, |_| None, |_| None)
}

/// `ν_R: A ⊗ 0 → 0`
pub fn annihilator_right(a: &ObjDesc) -> Morph {
    Morph::iso(prod(a, &ObjDesc::Zero), ObjDesc::Zero, |_| None, |_| None)
}

/// `fold: F(μF) → μF`
pub fn fold(mu: &ObjDesc) -> Result<Morph, CatError> {
    let unfolded = mu
        .unfold()
        .ok_or_else(|| CatError::Shape(format!("{mu} is not a closed recursive object")))?;
    Ok(Morph::iso(
        unfolded,
        mu.clone(),
        |x| Some(Elem::roll(x.clone())),
        |y| y.as_roll().cloned(),
    ))
}

/// `unfold: μF → F(μF)`
pub fn unfold(mu: &ObjDesc) -> Result<Morph, CatError> {
    Ok(fold(mu)?.dagger())
}

/// Arrangement of labelled wires in a tensor of copies of one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Wiring {
    Unit,
    Wire(usize),
    Pair(Box<Wiring>, Box<Wiring>),
}

impl Wiring {
    pub fn pair(a: Wiring, b: Wiring) -> Self {
        Wiring::Pair(Box::new(a), Box::new(b))
    }

    /// Right-nested tensor of the given wires, `Unit` when empty.
    pub fn flat(ids: &[usize]) -> Self {
        match ids {
            [] => Wiring::Unit,
            [w] => Wiring::Wire(*w),
            [w, rest @ ..] => Wiring::pair(Wiring::Wire(*w), Wiring::flat(rest)),
        }
    }

    pub fn object(&self, a: &ObjDesc) -> ObjDesc {
        match self {
            Wiring::Unit => ObjDesc::One,
            Wiring::Wire(_) => a.clone(),
            Wiring::Pair(l, r) => ObjDesc::prod(l.object(a), r.object(a)),
        }
    }

    fn wires(&self, out: &mut Vec<usize>) {
        match self {
            Wiring::Unit => {}
            Wiring::Wire(w) => out.push(*w),
            Wiring::Pair(l, r) => {
                l.wires(out);
                r.wires(out);
            }
        }
    }

    fn read(&self, x: &Elem, out: &mut HashMap<usize, Elem>) -> Option<()> {
        match self {
            Wiring::Unit => (x == &Elem::Star).then_some(()),
            Wiring::Wire(w) => {
                out.insert(*w, x.clone());
                Some(())
            }
            Wiring::Pair(l, r) => {
                let (a, b) = x.as_pair()?;
                l.read(a, out)?;
                r.read(b, out)
            }
        }
    }

    fn write(&self, vals: &HashMap<usize, Elem>) -> Elem {
        match self {
            Wiring::Unit => Elem::Star,
            Wiring::Wire(w) => vals[w].clone(),
            Wiring::Pair(l, r) => Elem::pair(l.write(vals), r.write(vals)),
        }
    }
}

/// The isomorphism rearranging wires laid out as `from` into `to`. Both
/// must mention the same wires, each once. Covers permutations, regrouping
/// and the tensor unitors.
pub fn rewire(a: &ObjDesc, from: Wiring, to: Wiring) -> Result<Morph, CatError> {
    let (mut ws, mut vs) = (Vec::new(), Vec::new());
    from.wires(&mut ws);
    to.wires(&mut vs);
    let mut sorted = ws.clone();
    sorted.sort_unstable();
    sorted.dedup();
    vs.sort_unstable();
    if sorted.len() != ws.len() || sorted != vs {
        return Err(CatError::Shape(format!("rewire: {from:?} and {to:?} differ in wires")));
    }
    let (f1, t1) = (from.clone(), to.clone());
    Ok(Morph::iso(
        from.object(a),
        to.object(a),
        move |x| {
            let mut vals = HashMap::new();
            f1.read(x, &mut vals)?;
            Some(t1.write(&vals))
        },
        move |y| {
            let mut vals = HashMap::new();
            to.read(y, &mut vals)?;
            Some(from.write(&vals))
        },
    ))
}
