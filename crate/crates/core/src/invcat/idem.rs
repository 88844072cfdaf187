use std::sync::Arc;

use super::{expect_eq, CatError, Elem, Fuel, Morph, ObjDesc, Stop};

type Decide = Arc<dyn Fn(&Elem, &mut Fuel) -> Result<bool, Stop> + Send + Sync>;

/// A decidable restriction idempotent: a predicate on an object that
/// answers yes or no wherever it terminates.
#[derive(Clone)]
pub struct DecIdem {
    obj: ObjDesc,
    decide: Decide,
}

impl DecIdem {
    pub fn new(
        obj: ObjDesc,
        decide: impl Fn(&Elem, &mut Fuel) -> Result<bool, Stop> + Send + Sync + 'static,
    ) -> Self {
        DecIdem {
            obj,
            decide: Arc::new(decide),
        }
    }

    /// The domain of definition of `f`, decided by running it.
    pub fn from_restriction(f: &Morph) -> Self {
        let f = f.clone();
        DecIdem::new(f.src().clone(), move |x, fuel| match f.apply(x, fuel) {
            Ok(_) => Ok(true),
            Err(Stop::Undefined) => Ok(false),
            Err(stop) => Err(stop),
        })
    }

    pub fn top(obj: ObjDesc) -> Self {
        DecIdem::new(obj, |_, _| Ok(true))
    }

    pub fn bottom(obj: ObjDesc) -> Self {
        DecIdem::new(obj, |_, _| Ok(false))
    }

    pub fn obj(&self) -> &ObjDesc {
        &self.obj
    }

    pub fn decide(&self, x: &Elem, fuel: &mut Fuel) -> Result<bool, Stop> {
        (self.decide)(x, fuel)
    }

    pub fn complement(&self) -> Self {
        let d = self.decide.clone();
        DecIdem::new(self.obj.clone(), move |x, fuel| d(x, fuel).map(|b| !b))
    }

    pub fn meet(&self, other: &DecIdem) -> Result<Self, CatError> {
        expect_eq("meet", &self.obj, &other.obj)?;
        let (a, b) = (self.decide.clone(), other.decide.clone());
        Ok(DecIdem::new(self.obj.clone(), move |x, fuel| {
            Ok(a(x, fuel)? && b(x, fuel)?)
        }))
    }

    pub fn join(&self, other: &DecIdem) -> Result<Self, CatError> {
        expect_eq("join", &self.obj, &other.obj)?;
        let (a, b) = (self.decide.clone(), other.decide.clone());
        Ok(DecIdem::new(self.obj.clone(), move |x, fuel| {
            Ok(a(x, fuel)? || b(x, fuel)?)
        }))
    }

    /// Disjunction of any number of idempotents; `bottom` when empty.
    pub fn any(obj: ObjDesc, es: &[DecIdem]) -> Result<Self, CatError> {
        es.iter()
            .try_fold(DecIdem::bottom(obj), |acc, e| acc.join(e))
    }

    /// The partial identity on the elements where the predicate holds.
    pub fn as_morph(&self) -> Morph {
        let (d1, d2) = (self.decide.clone(), self.decide.clone());
        let keep = |d: &Decide, x: &Elem, fuel: &mut Fuel| {
            if d(x, fuel)? {
                Ok(x.clone())
            } else {
                Err(Stop::Undefined)
            }
        };
        Morph::new(
            self.obj.clone(),
            self.obj.clone(),
            move |x, fuel| keep(&d1, x, fuel),
            move |x, fuel| keep(&d2, x, fuel),
        )
    }
}

/// Lets through exactly the elements outside `e` going forward. Going
/// backward an element inside `e` is a fault rather than a silent
/// failure: it means the forward direction would have taken another route.
pub fn first_match_guard(e: &DecIdem) -> Morph {
    let (d1, d2) = (e.decide.clone(), e.decide.clone());
    Morph::new(
        e.obj.clone(),
        e.obj.clone(),
        move |x, fuel| match d1(x, fuel)? {
            true => Err(Stop::Undefined),
            false => Ok(x.clone()),
        },
        move |x, fuel| match d2(x, fuel)? {
            true => Err(Stop::GuardViolation),
            false => Ok(x.clone()),
        },
    )
}
