use std::fmt;
use std::sync::Arc;

use super::{expect_eq, CatError, Elem, Eval, Fuel, ObjDesc, Stop};

type Evaluator = Arc<dyn Fn(&Elem, &mut Fuel) -> Eval + Send + Sync>;

/// A partial injection `src → tgt` given by its forward map and the
/// forward map of its partial inverse.
#[derive(Clone)]
pub struct Morph {
    src: ObjDesc,
    tgt: ObjDesc,
    fwd: Evaluator,
    bwd: Evaluator,
}

impl fmt::Debug for Morph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morph({} → {})", self.src, self.tgt)
    }
}

impl Morph {
    /// The caller guarantees that `fwd` and `bwd` are mutually inverse
    /// wherever they are defined.
    pub fn new(
        src: ObjDesc,
        tgt: ObjDesc,
        fwd: impl Fn(&Elem, &mut Fuel) -> Eval + Send + Sync + 'static,
        bwd: impl Fn(&Elem, &mut Fuel) -> Eval + Send + Sync + 'static,
    ) -> Self {
        Morph {
            src,
            tgt,
            fwd: Arc::new(fwd),
            bwd: Arc::new(bwd),
        }
    }

    /// A fuel-free isomorphism on shapes; `None` means undefined.
    pub fn iso(
        src: ObjDesc,
        tgt: ObjDesc,
        fwd: impl Fn(&Elem) -> Option<Elem> + Send + Sync + 'static,
        bwd: impl Fn(&Elem) -> Option<Elem> + Send + Sync + 'static,
    ) -> Self {
        Morph::new(
            src,
            tgt,
            move |x, _| fwd(x).ok_or(Stop::Undefined),
            move |y, _| bwd(y).ok_or(Stop::Undefined),
        )
    }

    pub fn src(&self) -> &ObjDesc {
        &self.src
    }

    pub fn tgt(&self) -> &ObjDesc {
        &self.tgt
    }

    pub fn apply(&self, x: &Elem, fuel: &mut Fuel) -> Eval {
        (self.fwd)(x, fuel)
    }

    pub fn apply_back(&self, y: &Elem, fuel: &mut Fuel) -> Eval {
        (self.bwd)(y, fuel)
    }

    /// Forward application with a fresh budget.
    pub fn run(&self, x: &Elem, fuel: u64) -> Eval {
        self.apply(x, &mut Fuel::new(fuel))
    }

    pub fn run_back(&self, y: &Elem, fuel: u64) -> Eval {
        self.apply_back(y, &mut Fuel::new(fuel))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morph) -> Result<Morph, CatError> {
        compose(g, self)
    }

    pub fn dagger(&self) -> Morph {
        dagger(self)
    }

    pub fn restrict(&self) -> Morph {
        restrict(self)
    }
}

pub fn identity(a: ObjDesc) -> Morph {
    Morph::iso(a.clone(), a, |x| Some(x.clone()), |y| Some(y.clone()))
}

pub fn zero(a: ObjDesc, b: ObjDesc) -> Morph {
    Morph::iso(a, b, |_| None, |_| None)
}

/// `g ∘ f`.
pub fn compose(g: &Morph, f: &Morph) -> Result<Morph, CatError> {
    expect_eq("compose", &f.tgt, &g.src)?;
    let (f1, g1) = (f.fwd.clone(), g.fwd.clone());
    let (f2, g2) = (f.bwd.clone(), g.bwd.clone());
    Ok(Morph::new(
        f.src.clone(),
        g.tgt.clone(),
        move |x, fuel| g1(&f1(x, fuel)?, fuel),
        move |y, fuel| f2(&g2(y, fuel)?, fuel),
    ))
}

/// `fs[n-1] ∘ ... ∘ fs[0]`: the first morphism is applied first.
pub fn compose_all(fs: &[Morph]) -> Result<Morph, CatError> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| CatError::Shape("empty composition".into()))?;
    rest.iter().try_fold(first.clone(), |acc, g| compose(g, &acc))
}

pub fn dagger(f: &Morph) -> Morph {
    Morph {
        src: f.tgt.clone(),
        tgt: f.src.clone(),
        fwd: f.bwd.clone(),
        bwd: f.fwd.clone(),
    }
}

/// The restriction idempotent: identity exactly where `f` is defined.
pub fn restrict(f: &Morph) -> Morph {
    let fwd = f.fwd.clone();
    let check = move |x: &Elem, fuel: &mut Fuel| fwd(x, fuel).map(|_| x.clone());
    let check = Arc::new(check);
    let back = check.clone();
    Morph::new(
        f.src.clone(),
        f.src.clone(),
        move |x, fuel| check(x, fuel),
        move |x, fuel| back(x, fuel),
    )
}

/// Join of parallel morphisms assumed pairwise inverse compatible. Every
/// component is probed: the first defined result wins, a different defined
/// result from another component is reported as [`Stop::IncompatibleJoin`],
/// and any other stop from any component propagates.
pub fn join(fs: &[Morph]) -> Result<Morph, CatError> {
    let first = fs
        .first()
        .ok_or_else(|| CatError::Shape("empty join needs objects; use join_in".into()))?;
    join_in(first.src.clone(), first.tgt.clone(), fs)
}

pub fn join_in(src: ObjDesc, tgt: ObjDesc, fs: &[Morph]) -> Result<Morph, CatError> {
    for f in fs {
        expect_eq("join", &src, &f.src)?;
        expect_eq("join", &tgt, &f.tgt)?;
    }
    let fwds: Arc<[Evaluator]> = fs.iter().map(|f| f.fwd.clone()).collect();
    let bwds: Arc<[Evaluator]> = fs.iter().map(|f| f.bwd.clone()).collect();
    Ok(Morph::new(
        src,
        tgt,
        move |x, fuel| probe_all(&fwds, x, fuel),
        move |y, fuel| probe_all(&bwds, y, fuel),
    ))
}

fn probe_all(fs: &[Evaluator], x: &Elem, fuel: &mut Fuel) -> Eval {
    let mut found: Option<Elem> = None;
    for f in fs {
        match f(x, fuel) {
            Ok(y) => match &found {
                None => found = Some(y),
                Some(prev) if *prev == y => {}
                Some(_) => return Err(Stop::IncompatibleJoin),
            },
            Err(Stop::Undefined) => {}
            Err(stop) => return Err(stop),
        }
    }
    found.ok_or(Stop::Undefined)
}

pub fn inj1(a: ObjDesc, b: ObjDesc) -> Morph {
    Morph::iso(
        a.clone(),
        ObjDesc::sum(a, b),
        |x| Some(Elem::inl(x.clone())),
        |y| y.as_inl().cloned(),
    )
}

pub fn inj2(a: ObjDesc, b: ObjDesc) -> Morph {
    Morph::iso(
        b.clone(),
        ObjDesc::sum(a, b),
        |x| Some(Elem::inr(x.clone())),
        |y| y.as_inr().cloned(),
    )
}

pub fn oplus(f: &Morph, g: &Morph) -> Morph {
    let (f1, g1) = (f.fwd.clone(), g.fwd.clone());
    let (f2, g2) = (f.bwd.clone(), g.bwd.clone());
    Morph::new(
        ObjDesc::sum(f.src.clone(), g.src.clone()),
        ObjDesc::sum(f.tgt.clone(), g.tgt.clone()),
        move |x, fuel| sum_map(&f1, &g1, x, fuel),
        move |y, fuel| sum_map(&f2, &g2, y, fuel),
    )
}

fn sum_map(f: &Evaluator, g: &Evaluator, x: &Elem, fuel: &mut Fuel) -> Eval {
    match x {
        Elem::InL(a) => Ok(Elem::inl(f(a, fuel)?)),
        Elem::InR(b) => Ok(Elem::inr(g(b, fuel)?)),
        _ => Err(Stop::Undefined),
    }
}

pub fn otimes(f: &Morph, g: &Morph) -> Morph {
    let (f1, g1) = (f.fwd.clone(), g.fwd.clone());
    let (f2, g2) = (f.bwd.clone(), g.bwd.clone());
    Morph::new(
        ObjDesc::prod(f.src.clone(), g.src.clone()),
        ObjDesc::prod(f.tgt.clone(), g.tgt.clone()),
        move |x, fuel| prod_map(&f1, &g1, x, fuel),
        move |y, fuel| prod_map(&f2, &g2, y, fuel),
    )
}

fn prod_map(f: &Evaluator, g: &Evaluator, x: &Elem, fuel: &mut Fuel) -> Eval {
    let (a, b) = x.as_pair().ok_or(Stop::Undefined)?;
    let a = f(a, fuel)?;
    let b = g(b, fuel)?;
    Ok(Elem::pair(a, b))
}

/// Diagonal `A → A ⊗ A`; its partial inverse is the equality test.
pub fn delta(a: ObjDesc) -> Morph {
    Morph::iso(
        a.clone(),
        ObjDesc::prod(a.clone(), a),
        |x| Some(Elem::pair(x.clone(), x.clone())),
        |y| {
            let (l, r) = y.as_pair()?;
            (l == r).then(|| l.clone())
        },
    )
}
