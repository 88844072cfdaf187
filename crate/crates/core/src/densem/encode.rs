//! Values as elements of `T(S)`, and the morphisms that build and take
//! apart constructor nodes.

use std::collections::HashMap;

use super::DenError;
use crate::invcat::{
    compose_all, dagger, fold, identity, inj1, inj2, otimes, tensor_unit_left, tensor_unit_right,
    Elem, Morph, ObjDesc,
};
use crate::syntax::Program;
use crate::value::{Value, TUPLE};

/// `S`
pub fn sym_obj() -> ObjDesc {
    ObjDesc::nat()
}

/// `T(S)`
pub fn tree_obj() -> ObjDesc {
    ObjDesc::tree(sym_obj())
}

/// `L(T(S))`
pub fn list_obj() -> ObjDesc {
    ObjDesc::list(tree_obj())
}

/// Constructor names numbered from 1, with the tuple constructor first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        let mut t = SymbolTable {
            names: Vec::new(),
            index: HashMap::new(),
        };
        t.intern(TUPLE);
        t
    }
}

impl SymbolTable {
    pub fn new() -> Self {
        SymbolTable::default()
    }

    /// Constructors of `q` in order of first occurrence.
    pub fn for_program(q: &Program) -> Self {
        let mut t = SymbolTable::new();
        for (c, _) in q.constructors() {
            t.intern(c);
        }
        t
    }

    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&k) = self.index.get(name) {
            return k;
        }
        self.names.push(name.to_string());
        let k = self.names.len();
        self.index.insert(name.to_string(), k);
        k
    }

    pub fn intern_value(&mut self, v: &Value) {
        for c in v.constructors() {
            self.intern(c);
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, k: usize) -> Option<&str> {
        self.names.get(k.checked_sub(1)?).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn require(&self, name: &str) -> Result<usize, DenError> {
        self.index(name)
            .ok_or_else(|| DenError::UnknownSymbol(name.to_string()))
    }
}

/// The `k`-th symbol (from 1): `fold ∘ inr` applied `k - 1` times to
/// `fold(inl *)`.
pub fn symbol_elem(k: usize) -> Elem {
    assert!(k >= 1, "symbols are numbered from 1");
    (1..k).fold(Elem::roll(Elem::inl(Elem::Star)), |acc, _| {
        Elem::roll(Elem::inr(acc))
    })
}

fn symbol_index(e: &Elem) -> Option<usize> {
    let mut k = 1;
    let mut cur = e;
    loop {
        match cur.as_roll()? {
            Elem::InL(unit) if **unit == Elem::Star => return Some(k),
            Elem::InR(next) => {
                k += 1;
                cur = next;
            }
            _ => return None,
        }
    }
}

pub fn nil() -> Elem {
    Elem::roll(Elem::inl(Elem::Star))
}

pub fn cons(head: Elem, tail: Elem) -> Elem {
    Elem::roll(Elem::inr(Elem::pair(head, tail)))
}

pub fn list_elem(items: Vec<Elem>) -> Elem {
    items.into_iter().rev().fold(nil(), |acc, x| cons(x, acc))
}

fn list_items(e: &Elem) -> Option<Vec<Elem>> {
    let mut out = Vec::new();
    let mut cur = e;
    loop {
        match cur.as_roll()? {
            Elem::InL(_) => return Some(out),
            Elem::InR(cell) => {
                let (h, t) = cell.as_pair()?;
                out.push(h.clone());
                cur = t;
            }
            _ => return None,
        }
    }
}

/// `c(v1, ..., vn)` becomes the node labelled `c` with children
/// `[v1, ..., vn]`.
pub fn encode_value(v: &Value, tbl: &SymbolTable) -> Result<Elem, DenError> {
    let k = tbl.require(v.ctor())?;
    let children = v
        .args()
        .iter()
        .map(|a| encode_value(a, tbl))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Elem::roll(Elem::pair(symbol_elem(k), list_elem(children))))
}

pub fn decode_value(e: &Elem, tbl: &SymbolTable) -> Result<Value, DenError> {
    let bad = || DenError::NotATree(e.to_string());
    let (sym, list) = e.as_roll().and_then(Elem::as_pair).ok_or_else(bad)?;
    let k = symbol_index(sym).ok_or_else(bad)?;
    let name = tbl.name(k).ok_or(DenError::UnknownSymbolIndex(k))?;
    let args = list_items(list)
        .ok_or_else(bad)?
        .iter()
        .map(|c| decode_value(c, tbl))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Value::new(name, args))
}

/// `1 → S` picking out the symbol of `name`; its dagger is the assertion
/// that a symbol is that one.
pub fn symbol_morphism(name: &str, tbl: &SymbolTable) -> Result<Morph, DenError> {
    let s = symbol_elem(tbl.require(name)?);
    let s2 = s.clone();
    Ok(Morph::iso(
        ObjDesc::One,
        sym_obj(),
        move |_| Some(s.clone()),
        move |y| (*y == s2).then_some(Elem::Star),
    ))
}

/// `T^⊗n → L(T)`, built as `pack_0 = nil`, `pack_{n+1} = cons ∘ (id ⊗ pack_n)`.
pub fn pack(n: usize) -> Result<Morph, DenError> {
    pack_over(&tree_obj(), n)
}

/// `L(T) → T^⊗n`, defined exactly on lists of length `n`.
pub fn unpack(n: usize) -> Result<Morph, DenError> {
    Ok(dagger(&pack(n)?))
}

/// [`pack`] for lists over any object `a`.
pub fn pack_over(a: &ObjDesc, n: usize) -> Result<Morph, DenError> {
    let l = ObjDesc::list(a.clone());
    let cell = ObjDesc::prod(a.clone(), l.clone());
    let nil_m = compose_all(&[inj1(ObjDesc::One, cell.clone()), fold(&l)?])?;
    let cons_m = compose_all(&[inj2(ObjDesc::One, cell), fold(&l)?])?;
    Ok(match n {
        0 => nil_m,
        1 => compose_all(&[
            dagger(&tensor_unit_right(a)),
            otimes(&identity(a.clone()), &nil_m),
            cons_m,
        ])?,
        _ => compose_all(&[otimes(&identity(a.clone()), &pack_over(a, n - 1)?), cons_m])?,
    })
}

pub fn unpack_over(a: &ObjDesc, n: usize) -> Result<Morph, DenError> {
    Ok(dagger(&pack_over(a, n)?))
}

/// `L(T) → T`: a node labelled `name` over the given children.
pub fn node(name: &str, tbl: &SymbolTable) -> Result<Morph, DenError> {
    let l = list_obj();
    Ok(compose_all(&[
        dagger(&tensor_unit_left(&l)),
        otimes(&symbol_morphism(name, tbl)?, &identity(l)),
        fold(&tree_obj())?,
    ])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invcat::{sample::enumerate_bounded, Stop};
    use crate::syntax::parse_program;

    fn val(s: &str) -> Value {
        s.parse().unwrap()
    }

    fn table(names: &[&str]) -> SymbolTable {
        let mut t = SymbolTable::new();
        for n in names {
            t.intern(n);
        }
        t
    }

    #[test]
    fn tuple_is_symbol_one() {
        assert_eq!(SymbolTable::new().index(TUPLE), Some(1));
        let q = parse_program(include_str!("../../programs/fib.rfun")).unwrap();
        let t = SymbolTable::for_program(&q);
        assert_eq!(t.index(TUPLE), Some(1));
        assert_eq!(t.index("Z"), Some(2));
        assert_eq!(t.index("S"), Some(3));
    }

    #[test]
    fn symbol_chain() {
        let s2 = symbol_elem(2);
        assert_eq!(s2.as_roll(), Some(&Elem::inr(symbol_elem(1))));
        for k in 1..10 {
            assert!(symbol_elem(k).has_type(&sym_obj()));
            assert_eq!(symbol_index(&symbol_elem(k)), Some(k));
        }
    }

    #[test]
    fn encoding_of_leaf_and_example_tree() {
        let t = table(&["Z", "b", "c"]);
        assert_eq!(
            encode_value(&val("Z"), &t).unwrap(),
            Elem::roll(Elem::pair(symbol_elem(2), nil()))
        );
        let bc = encode_value(&val("b(c)"), &t).unwrap();
        let c = Elem::roll(Elem::pair(symbol_elem(4), nil()));
        assert_eq!(bc, Elem::roll(Elem::pair(symbol_elem(3), list_elem(vec![c]))));
        assert!(bc.has_type(&tree_obj()));
    }

    #[test]
    fn encoding_round_trips() {
        let t = table(&["Z", "S"]);
        let v = Value::tuple(vec![Value::nat(5), Value::nat(8)]);
        assert_eq!(decode_value(&encode_value(&v, &t).unwrap(), &t).unwrap(), v);
        assert_eq!(encode_value(&val("Q"), &t), Err(DenError::UnknownSymbol("Q".into())));
    }

    #[test]
    fn symbol_morphisms() {
        let t = table(&["a", "b"]);
        let a = symbol_morphism("a", &t).unwrap();
        let b = symbol_morphism("b", &t).unwrap();
        assert_eq!(a.then(&a.dagger()).unwrap().run(&Elem::Star, 1), Ok(Elem::Star));
        assert_eq!(b.then(&a.dagger()).unwrap().run(&Elem::Star, 1), Err(Stop::Undefined));
        assert_eq!(a.restrict().run(&Elem::Star, 1), Ok(Elem::Star));
    }

    #[test]
    fn pack_builds_lists() {
        let t = table(&["Z"]);
        let z = encode_value(&val("Z"), &t).unwrap();
        assert_eq!(pack(0).unwrap().run(&Elem::Star, 1), Ok(nil()));
        for n in 1..5 {
            let items = vec![z.clone(); n];
            let packed = pack(n).unwrap().run(&Elem::tuple(items.clone()), 1).unwrap();
            assert_eq!(packed, list_elem(items.clone()));
            assert_eq!(unpack(n).unwrap().run(&packed, 1), Ok(Elem::tuple(items)));
        }
    }

    #[test]
    fn unpack_is_defined_on_one_length_only() {
        let lists = enumerate_bounded(&list_obj(), 0);
        assert!(lists.is_empty());
        let t = table(&["Z"]);
        let z = encode_value(&val("Z"), &t).unwrap();
        for len in 0..5 {
            let l = list_elem(vec![z.clone(); len]);
            for n in 0..5 {
                assert_eq!(unpack(n).unwrap().run(&l, 1).is_ok(), n == len);
            }
        }
    }
}
