//! Denotational semantics: programs as partial isomorphisms in the model
//! of [`crate::invcat`], with values encoded as rose trees over a symbol
//! object.

mod encode;
mod sem;

use thiserror::Error;

pub use encode::{
    cons, decode_value, encode_value, list_elem, list_obj, nil, node, pack, pack_over, sym_obj,
    symbol_elem, symbol_morphism, tree_obj, unpack, unpack_over, SymbolTable,
};
pub use sem::{dupeq_morphism, sem_def, sem_expr, sem_left, sem_program, summand, SemEnv};

use crate::invcat::{compose_all, dagger, CatError, Morph, Stop};
use crate::opsem::Direction;
use crate::syntax::Program;
use crate::value::Value;

pub const DEFAULT_FUEL: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DenError {
    #[error("constructor `{0}` has no symbol")]
    UnknownSymbol(String),
    #[error("no constructor has symbol {0}")]
    UnknownSymbolIndex(usize),
    #[error("not the encoding of a value: {0}")]
    NotATree(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("bad variable context: {0}")]
    Context(String),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error("{0}")]
    Stopped(Stop),
}

impl DenError {
    /// Status label matching [`crate::opsem::EvalError::status`]: an
    /// undefined result is a failed match and a crossed guard is a
    /// first-match violation.
    pub fn status(&self) -> &'static str {
        match self {
            DenError::Stopped(Stop::Undefined) => "NoMatch",
            DenError::Stopped(Stop::GuardViolation) => "FirstMatchViolation",
            DenError::Stopped(Stop::OutOfFuel) => "OutOfFuel",
            DenError::Stopped(Stop::IncompatibleJoin) => "IncompatibleJoin",
            _ => "Error",
        }
    }
}

/// The meaning of a whole program, with its encoding.
#[derive(Clone)]
pub struct Denotation {
    table: SymbolTable,
    names: Vec<String>,
    whole: Morph,
}

impl Denotation {
    pub fn new(q: &Program) -> Result<Self, DenError> {
        let table = SymbolTable::for_program(q);
        let whole = sem_program(q, &table)?;
        Ok(Denotation {
            table,
            names: q.defs.iter().map(|d| d.name.clone()).collect(),
            whole,
        })
    }

    pub fn table(&self) -> &SymbolTable {
        &self.table
    }

    /// The morphism on `T^⊕n` for the whole program.
    pub fn morphism(&self) -> &Morph {
        &self.whole
    }

    /// `⟦q⟧_f = inj_f† ∘ ⟦q⟧ ∘ inj_f : T → T`.
    pub fn component(&self, f: &str) -> Result<Morph, DenError> {
        let i = self
            .names
            .iter()
            .position(|n| n == f)
            .ok_or_else(|| DenError::UnknownFunction(f.to_string()))?;
        let inj = summand(i, self.names.len());
        Ok(compose_all(&[inj.clone(), self.whole.clone(), dagger(&inj)])?)
    }

    /// Runs `f` on a value. Constructors of `v` unknown to the program get
    /// fresh symbols, so they match no pattern but can pass through.
    pub fn apply(&self, f: &str, v: &Value, dir: Direction, fuel: u64) -> Result<Value, DenError> {
        let mut table = self.table.clone();
        table.intern_value(v);
        let m = self.component(f)?;
        let x = encode_value(v, &table)?;
        let y = match dir {
            Direction::Forward => m.run(&x, fuel),
            Direction::Backward => m.run_back(&x, fuel),
        }
        .map_err(DenError::Stopped)?;
        decode_value(&y, &table)
    }
}

/// Forward application through the denotation of `q`.
pub fn apply(q: &Program, f: &str, v: &Value, fuel: u64) -> Result<Value, DenError> {
    Denotation::new(q)?.apply(f, v, Direction::Forward, fuel)
}

pub fn apply_backward(q: &Program, f: &str, v: &Value, fuel: u64) -> Result<Value, DenError> {
    Denotation::new(q)?.apply(f, v, Direction::Backward, fuel)
}
