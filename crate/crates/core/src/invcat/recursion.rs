use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use super::{expect_eq, CatError, Elem, Eval, Fuel, Morph, ObjDesc, Stop};

/// Feedback on the `⊕` tensor: for `f: A ⊕ U → B ⊕ U`, iterate `f` from
/// `inl a` until it leaves through `inl b`. More iterations than the
/// remaining fuel, or a repeated state, count as running out of fuel.
pub fn trace(f: &Morph, a: &ObjDesc, b: &ObjDesc) -> Result<Morph, CatError> {
    let (ObjDesc::Sum(sa, su), ObjDesc::Sum(tb, tu)) = (f.src(), f.tgt()) else {
        return Err(CatError::Shape(format!(
            "trace needs A ⊕ U → B ⊕ U, got {} → {}",
            f.src(),
            f.tgt()
        )));
    };
    expect_eq("trace", sa, a)?;
    expect_eq("trace", tb, b)?;
    expect_eq("trace", su, tu)?;
    let (fwd, bwd) = (f.clone(), f.dagger());
    Ok(Morph::new(
        a.clone(),
        b.clone(),
        move |x, fuel| iterate(&fwd, x, fuel),
        move |y, fuel| iterate(&bwd, y, fuel),
    ))
}

fn iterate(f: &Morph, x: &Elem, fuel: &mut Fuel) -> Eval {
    let mut state = Elem::inl(x.clone());
    let mut seen = HashSet::new();
    loop {
        match f.apply(&state, fuel)? {
            Elem::InL(out) => return Ok((*out).clone()),
            Elem::InR(u) => {
                if seen.len() as u64 >= fuel.remaining() || !seen.insert(u.clone()) {
                    return Err(Stop::OutOfFuel);
                }
                state = Elem::InR(u);
            }
            _ => return Err(Stop::Undefined),
        }
    }
}

static NEXT_FIX: AtomicU64 = AtomicU64::new(0);

/// Least fixed point of a morphism scheme `h ↦ scheme(h)` on `A → B`.
/// Each use of the self-reference `h` costs one unit of fuel for as long
/// as it runs, so fuel bounds the nesting depth of unfoldings.
pub fn fix(
    a: ObjDesc,
    b: ObjDesc,
    scheme: impl FnOnce(&Morph) -> Result<Morph, CatError>,
) -> Result<Morph, CatError> {
    let id = NEXT_FIX.fetch_add(1, Ordering::Relaxed);
    let cell: Arc<OnceLock<Morph>> = Arc::new(OnceLock::new());
    let (w1, w2) = (Arc::downgrade(&cell), Arc::downgrade(&cell));
    let recur = move |cell: &std::sync::Weak<OnceLock<Morph>>, dir: bool, x: &Elem, fuel: &mut Fuel| {
        let cell = cell.upgrade().expect("fixed point dropped while running");
        let body = cell.get().expect("fixed point used before it was tied");
        fuel.nest((id, dir, x), |fuel| {
            if dir {
                body.apply(x, fuel)
            } else {
                body.apply_back(x, fuel)
            }
        })
    };
    let self_ref = Morph::new(
        a.clone(),
        b.clone(),
        move |x, fuel| recur(&w1, true, x, fuel),
        move |y, fuel| recur(&w2, false, y, fuel),
    );
    let body = scheme(&self_ref)?;
    expect_eq("fix", body.src(), &a)?;
    expect_eq("fix", body.tgt(), &b)?;
    let _ = cell.set(body);
    let c2 = cell.clone();
    Ok(Morph::new(
        a,
        b,
        move |x, fuel| cell.get().expect("tied").apply(x, fuel),
        move |y, fuel| c2.get().expect("tied").apply_back(y, fuel),
    ))
}
