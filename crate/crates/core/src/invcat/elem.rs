use std::fmt;
use std::sync::Arc;

use super::ObjDesc;

/// Elements of the carrier sets. Children are shared so that copying a
/// large tree is cheap.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Star,
    Pair(Arc<Elem>, Arc<Elem>),
    InL(Arc<Elem>),
    InR(Arc<Elem>),
    Roll(Arc<Elem>),
}

impl Elem {
    pub fn pair(a: Elem, b: Elem) -> Self {
        Elem::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn inl(a: Elem) -> Self {
        Elem::InL(Arc::new(a))
    }

    pub fn inr(a: Elem) -> Self {
        Elem::InR(Arc::new(a))
    }

    pub fn roll(a: Elem) -> Self {
        Elem::Roll(Arc::new(a))
    }

    pub fn as_pair(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_inl(&self) -> Option<&Elem> {
        match self {
            Elem::InL(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_inr(&self) -> Option<&Elem> {
        match self {
            Elem::InR(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_roll(&self) -> Option<&Elem> {
        match self {
            Elem::Roll(a) => Some(a),
            _ => None,
        }
    }

    /// Whether this element inhabits the closed object `obj`.
    pub fn has_type(&self, obj: &ObjDesc) -> bool {
        match (self, obj) {
            (Elem::Star, ObjDesc::One) => true,
            (Elem::Pair(a, b), ObjDesc::Prod(x, y)) => a.has_type(x) && b.has_type(y),
            (Elem::InL(a), ObjDesc::Sum(x, _)) => a.has_type(x),
            (Elem::InR(b), ObjDesc::Sum(_, y)) => b.has_type(y),
            (Elem::Roll(a), ObjDesc::Mu(_)) => obj.unfold().is_some_and(|u| a.has_type(&u)),
            _ => false,
        }
    }

    /// `InR^k(InL(x))`: injection into the `k`-th summand of a right-nested
    /// sum of `n` objects.
    pub fn inject(k: usize, n: usize, x: Elem) -> Elem {
        if n <= 1 {
            return x;
        }
        if k == 0 {
            Elem::inl(x)
        } else {
            Elem::inr(Elem::inject(k - 1, n - 1, x))
        }
    }

    /// Inverse of [`Elem::inject`]: the summand index and the payload.
    pub fn project(&self, n: usize) -> Option<(usize, &Elem)> {
        if n <= 1 {
            return (n == 1).then_some((0, self));
        }
        match self {
            Elem::InL(x) => Some((0, x)),
            Elem::InR(y) => y.project(n - 1).map(|(k, x)| (k + 1, x)),
            _ => None,
        }
    }

    /// Components of a right-nested `n`-fold tensor.
    pub fn unpair(&self, n: usize) -> Option<Vec<Elem>> {
        let mut out = Vec::with_capacity(n);
        let mut cur = self;
        match n {
            0 => return (self == &Elem::Star).then_some(out),
            1 => return Some(vec![self.clone()]),
            _ => {}
        }
        for _ in 0..n - 1 {
            let (a, b) = cur.as_pair()?;
            out.push(a.clone());
            cur = b;
        }
        out.push(cur.clone());
        Some(out)
    }

    /// Right-nested `n`-fold tensor of `items`.
    pub fn tuple(items: Vec<Elem>) -> Elem {
        let mut it = items.into_iter().rev();
        match it.next() {
            None => Elem::Star,
            Some(last) => it.fold(last, |acc, x| Elem::pair(x, acc)),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Star => f.write_str("*"),
            Elem::Pair(a, b) => write!(f, "({a}, {b})"),
            Elem::InL(a) => write!(f, "inl {a}"),
            Elem::InR(a) => write!(f, "inr {a}"),
            Elem::Roll(a) => write!(f, "[{a}]"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
