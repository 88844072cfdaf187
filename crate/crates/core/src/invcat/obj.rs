use std::fmt;

/// Object descriptors. `Mu` binds de Bruijn index 0 in its body.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ObjDesc {
    Zero,
    One,
    Sum(Box<ObjDesc>, Box<ObjDesc>),
    Prod(Box<ObjDesc>, Box<ObjDesc>),
    Mu(Box<ObjDesc>),
    Var(usize),
}

impl ObjDesc {
    pub fn sum(a: ObjDesc, b: ObjDesc) -> Self {
        ObjDesc::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: ObjDesc, b: ObjDesc) -> Self {
        ObjDesc::Prod(Box::new(a), Box::new(b))
    }

    pub fn mu(body: ObjDesc) -> Self {
        ObjDesc::Mu(Box::new(body))
    }

    /// `S = μX. 1 ⊕ X`, the object of symbols.
    pub fn nat() -> Self {
        ObjDesc::mu(ObjDesc::sum(ObjDesc::One, ObjDesc::Var(0)))
    }

    /// `L(A) = μK. 1 ⊕ (A ⊗ K)`.
    pub fn list(a: ObjDesc) -> Self {
        ObjDesc::mu(ObjDesc::sum(
            ObjDesc::One,
            ObjDesc::prod(a.shift(0), ObjDesc::Var(0)),
        ))
    }

    /// `T(A) = μK. A ⊗ L(K)`.
    pub fn tree(a: ObjDesc) -> Self {
        ObjDesc::mu(ObjDesc::prod(a.shift(0), ObjDesc::list(ObjDesc::Var(0))))
    }

    /// `A ⊗ (A ⊗ (... ⊗ A))` with `n` factors; `1` for `n = 0`.
    pub fn tensor_pow(a: &ObjDesc, n: usize) -> Self {
        match n {
            0 => ObjDesc::One,
            1 => a.clone(),
            _ => ObjDesc::prod(a.clone(), ObjDesc::tensor_pow(a, n - 1)),
        }
    }

    /// `A ⊕ (A ⊕ (... ⊕ A))` with `n` summands; `0` for `n = 0`.
    pub fn sum_pow(a: &ObjDesc, n: usize) -> Self {
        match n {
            0 => ObjDesc::Zero,
            1 => a.clone(),
            _ => ObjDesc::sum(a.clone(), ObjDesc::sum_pow(a, n - 1)),
        }
    }

    /// Increments free indices at or above `cutoff`.
    fn shift(&self, cutoff: usize) -> Self {
        match self {
            ObjDesc::Var(i) if *i >= cutoff => ObjDesc::Var(i + 1),
            ObjDesc::Zero | ObjDesc::One | ObjDesc::Var(_) => self.clone(),
            ObjDesc::Sum(a, b) => ObjDesc::sum(a.shift(cutoff), b.shift(cutoff)),
            ObjDesc::Prod(a, b) => ObjDesc::prod(a.shift(cutoff), b.shift(cutoff)),
            ObjDesc::Mu(b) => ObjDesc::mu(b.shift(cutoff + 1)),
        }
    }

    /// Substitutes the closed object `r` for index `k`.
    fn subst(&self, k: usize, r: &ObjDesc) -> Self {
        match self {
            ObjDesc::Var(i) if *i == k => r.clone(),
            ObjDesc::Var(i) if *i > k => ObjDesc::Var(i - 1),
            ObjDesc::Zero | ObjDesc::One | ObjDesc::Var(_) => self.clone(),
            ObjDesc::Sum(a, b) => ObjDesc::sum(a.subst(k, r), b.subst(k, r)),
            ObjDesc::Prod(a, b) => ObjDesc::prod(a.subst(k, r), b.subst(k, r)),
            ObjDesc::Mu(b) => ObjDesc::mu(b.subst(k + 1, r)),
        }
    }

    /// One step of unrolling: `μX.F` becomes `F(μX.F)`.
    pub fn unfold(&self) -> Option<ObjDesc> {
        match self {
            ObjDesc::Mu(body) if self.is_closed() => Some(body.subst(0, self)),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.closed_above(0)
    }

    fn closed_above(&self, depth: usize) -> bool {
        match self {
            ObjDesc::Var(i) => *i < depth,
            ObjDesc::Zero | ObjDesc::One => true,
            ObjDesc::Sum(a, b) | ObjDesc::Prod(a, b) => a.closed_above(depth) && b.closed_above(depth),
            ObjDesc::Mu(b) => b.closed_above(depth + 1),
        }
    }

    pub fn has_mu(&self) -> bool {
        match self {
            ObjDesc::Mu(_) => true,
            ObjDesc::Sum(a, b) | ObjDesc::Prod(a, b) => a.has_mu() || b.has_mu(),
            _ => false,
        }
    }

    /// Number of elements of a `Mu`-free closed object.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            ObjDesc::Zero => Some(0),
            ObjDesc::One => Some(1),
            ObjDesc::Sum(a, b) => a.cardinality()?.checked_add(b.cardinality()?),
            ObjDesc::Prod(a, b) => a.cardinality()?.checked_mul(b.cardinality()?),
            ObjDesc::Mu(_) | ObjDesc::Var(_) => None,
        }
    }
}

impl fmt::Display for ObjDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjDesc::Zero => f.write_str("0"),
            ObjDesc::One => f.write_str("1"),
            ObjDesc::Sum(a, b) => write!(f, "({a} ⊕ {b})"),
            ObjDesc::Prod(a, b) => write!(f, "({a} ⊗ {b})"),
            ObjDesc::Mu(b) => write!(f, "μ.{b}"),
            ObjDesc::Var(i) => write!(f, "#{i}"),
        }
    }
}

impl fmt::Debug for ObjDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nat_unfolds_to_one_plus_nat() {
        let s = ObjDesc::nat();
        assert_eq!(s.unfold(), Some(ObjDesc::sum(ObjDesc::One, s.clone())));
    }

    #[test]
    fn list_unfolds() {
        let l = ObjDesc::list(ObjDesc::nat());
        assert_eq!(
            l.unfold(),
            Some(ObjDesc::sum(ObjDesc::One, ObjDesc::prod(ObjDesc::nat(), l.clone())))
        );
    }

    #[test]
    fn tree_unfolds_to_label_times_list_of_trees() {
        let t = ObjDesc::tree(ObjDesc::nat());
        assert_eq!(
            t.unfold(),
            Some(ObjDesc::prod(ObjDesc::nat(), ObjDesc::list(t.clone())))
        );
    }

    #[test]
    fn open_objects_do_not_unfold() {
        assert!(!ObjDesc::Var(0).is_closed());
        assert_eq!(ObjDesc::mu(ObjDesc::Var(1)).unfold(), None);
    }

    #[test]
    fn powers_and_cardinality() {
        let two = ObjDesc::sum(ObjDesc::One, ObjDesc::One);
        assert_eq!(ObjDesc::tensor_pow(&two, 3).cardinality(), Some(8));
        assert_eq!(ObjDesc::sum_pow(&two, 3).cardinality(), Some(6));
        assert_eq!(ObjDesc::tensor_pow(&two, 0), ObjDesc::One);
        assert_eq!(ObjDesc::nat().cardinality(), None);
    }
}
