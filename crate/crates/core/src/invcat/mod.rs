//! A join inverse rig category of partial injections.
//!
//! Objects are descriptors built from `0`, `1`, `⊕`, `⊗` and `μ`; morphisms
//! are pairs of mutually inverse partial functions on [`Elem`]s, evaluated
//! with a fuel budget. Evaluation has three outcomes besides a result:
//! undefined (a decidable failure), out of fuel (an approximation of
//! divergence) and a fault (a broken compatibility or guard assumption).

mod elem;
mod idem;
mod morph;
mod obj;
mod recursion;
pub mod sample;
mod structural;

use std::collections::HashSet;

use thiserror::Error;

pub use elem::Elem;
pub use idem::{first_match_guard, DecIdem};
pub use morph::{
    compose, compose_all, dagger, delta, identity, inj1, inj2, join, join_in, oplus, otimes,
    restrict, zero, Morph,
};
pub use obj::ObjDesc;
pub use recursion::{fix, trace};
pub use structural::{
    annihilator_left, annihilator_right, dist_left, dist_right, fold, rewire, sum_assoc,
    sum_swap, sum_unit_left, sum_unit_right, tensor_assoc, tensor_swap, tensor_unit_left,
    tensor_unit_right, unfold, Wiring,
};

use crate::opsem::{RED_ZONE, STACK_SEGMENT};

/// Why an evaluation produced no element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Error)]
pub enum Stop {
    #[error("undefined")]
    Undefined,
    #[error("out of fuel")]
    OutOfFuel,
    /// Two components of a join disagree on a common input.
    #[error("incompatible join")]
    IncompatibleJoin,
    /// A first-match guard was crossed in its assertion direction.
    #[error("guard violation")]
    GuardViolation,
}

pub type Eval = Result<Elem, Stop>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("type mismatch in {op}: {left} vs {right}")]
    TypeMismatch {
        op: &'static str,
        left: ObjDesc,
        right: ObjDesc,
    },
    #[error("{0}")]
    Shape(String),
}

pub(crate) fn expect_eq(op: &'static str, left: &ObjDesc, right: &ObjDesc) -> Result<(), CatError> {
    if left == right {
        Ok(())
    } else {
        Err(CatError::TypeMismatch {
            op,
            left: left.clone(),
            right: right.clone(),
        })
    }
}

/// Recursion budget for fixed points: the number of self-references that
/// may be nested, plus the set of self-references in progress.
#[derive(Debug)]
pub struct Fuel {
    remaining: u64,
    active: HashSet<(u64, bool, Elem)>,
}

impl Fuel {
    pub fn new(n: u64) -> Self {
        Fuel {
            remaining: n,
            active: HashSet::new(),
        }
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    /// Runs `body` one level deeper. Evaluators are deterministic, so
    /// re-entering the same fixed point at the same argument in the same
    /// direction can never return and is reported as out of fuel at once.
    pub(crate) fn nest(
        &mut self,
        key: (u64, bool, &Elem),
        body: impl FnOnce(&mut Fuel) -> Eval,
    ) -> Eval {
        if self.remaining == 0 {
            return Err(Stop::OutOfFuel);
        }
        let key = (key.0, key.1, key.2.clone());
        if !self.active.insert(key.clone()) {
            return Err(Stop::OutOfFuel);
        }
        self.remaining -= 1;
        let out = stacker::maybe_grow(RED_ZONE, STACK_SEGMENT, || body(self));
        self.remaining += 1;
        self.active.remove(&key);
        out
    }
}
