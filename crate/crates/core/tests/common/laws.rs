//! Equational laws of the partial-injection model, checked pointwise on
//! random combinator terms. Every law is an equation `lhs = rhs` between
//! parallel morphisms; an instance is checked forward on elements of the
//! source and backward on elements of the target.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rfun::densem::{dupeq_morphism, encode_value, tree_obj, unpack_over, SymbolTable};
use rfun::invcat::sample::{enumerate, enumerate_bounded, sample, DEFAULT_DEPTH};
use rfun::invcat::{
    compose_all, dagger, delta, dist_left, fix, fold, identity, inj1, inj2, join, oplus, otimes,
    restrict, sum_assoc, sum_swap, tensor_assoc, tensor_swap, tensor_unit_left, tensor_unit_right,
    trace, unfold, DecIdem, Elem, Morph, ObjDesc,
};
use rfun::Value;

pub const FUEL: u64 = 10_000;
pub const MAX_EXHAUSTIVE: u128 = 32;
/// Random instances per law that are checked on every element.
pub const EXHAUSTIVE_TERMS: usize = 40;

pub struct Instance {
    pub lhs: Morph,
    pub rhs: Morph,
}

fn inst(lhs: Morph, rhs: Morph) -> Instance {
    Instance { lhs, rhs }
}

fn comp(fs: &[Morph]) -> Morph {
    compose_all(fs).expect("well-typed term")
}

fn bool_obj() -> ObjDesc {
    ObjDesc::sum(ObjDesc::One, ObjDesc::One)
}

fn card(obj: &ObjDesc) -> Option<u128> {
    if obj.has_mu() {
        None
    } else {
        obj.cardinality()
    }
}

fn is_small(obj: &ObjDesc) -> bool {
    card(obj).is_some_and(|n| (1..=MAX_EXHAUSTIVE).contains(&n))
}

pub struct Gen {
    pub rng: ChaCha8Rng,
    table: SymbolTable,
    pool: Vec<ObjDesc>,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        let b = bool_obj();
        let mut table = SymbolTable::new();
        for c in ["a", "b", "c"] {
            table.intern(c);
        }
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            table,
            pool: vec![
                ObjDesc::One,
                b.clone(),
                ObjDesc::sum(ObjDesc::One, b.clone()),
                ObjDesc::prod(b.clone(), b.clone()),
                ObjDesc::sum(b.clone(), ObjDesc::prod(b.clone(), b)),
            ],
        }
    }

    pub fn finite(&mut self) -> ObjDesc {
        self.pool.choose(&mut self.rng).unwrap().clone()
    }

    /// A finite object, or (when `finite_only` is off) sometimes `nat`.
    pub fn object(&mut self, finite_only: bool) -> ObjDesc {
        if !finite_only && self.rng.gen_bool(0.3) {
            ObjDesc::nat()
        } else {
            self.finite()
        }
    }

    /// An object to pass through between `a` and something else: finite
    /// terms stay finite, and `nat` terms stay on `nat`.
    fn middle(&mut self, a: &ObjDesc) -> ObjDesc {
        if is_small(a) {
            self.finite()
        } else {
            a.clone()
        }
    }

    pub fn elem(&mut self, obj: &ObjDesc) -> Option<Elem> {
        if *obj == tree_obj() {
            return Some(self.tree_elem());
        }
        sample(obj, DEFAULT_DEPTH, &mut self.rng)
    }

    /// Encoded values biased towards the one- and two-tuples `dupeq` acts on.
    fn tree_elem(&mut self) -> Elem {
        let v = self.small_value(2);
        encode_value(&v, &self.table).unwrap()
    }

    fn small_value(&mut self, depth: usize) -> Value {
        let atom = |r: &mut ChaCha8Rng| Value::sym(*["a", "b", "c"].choose(r).unwrap());
        if depth == 0 {
            return atom(&mut self.rng);
        }
        match self.rng.gen_range(0..4) {
            0 => atom(&mut self.rng),
            1 => Value::tuple(vec![self.small_value(depth - 1)]),
            2 => {
                let x = self.small_value(depth - 1);
                let y = if self.rng.gen_bool(0.5) { x.clone() } else { self.small_value(depth - 1) };
                Value::tuple(vec![x, y])
            }
            _ => {
                let n = self.rng.gen_range(0..4);
                Value::tuple((0..n).map(|_| self.small_value(depth - 1)).collect())
            }
        }
    }

    /// Every value built from `a`, `b` and tuples of them with at most
    /// three components and one level of nesting.
    pub fn tree_universe(&self) -> Vec<Elem> {
        let atoms: Vec<Value> = ["a", "b", "c"].iter().map(|c| Value::sym(*c)).collect();
        let mut level: Vec<Value> = atoms.clone();
        for x in &atoms {
            level.push(Value::tuple(vec![x.clone()]));
        }
        let mut all = level.clone();
        all.push(Value::tuple(vec![]));
        for x in &level {
            all.push(Value::tuple(vec![x.clone()]));
            for y in &level {
                all.push(Value::tuple(vec![x.clone(), y.clone()]));
                all.push(Value::tuple(vec![x.clone(), y.clone(), x.clone()]));
            }
        }
        all.iter().map(|v| encode_value(v, &self.table).unwrap()).collect()
    }

    /// A uniformly random partial injection between finite objects.
    pub fn pinj(&mut self, a: &ObjDesc, b: &ObjDesc) -> Morph {
        let xs = enumerate(a).expect("finite");
        let mut ys = enumerate(b).expect("finite");
        ys.shuffle(&mut self.rng);
        let keep = self.rng.gen_range(0.3..1.0);
        let mut fwd = HashMap::new();
        let mut bwd = HashMap::new();
        for (x, y) in xs.into_iter().zip(ys) {
            if self.rng.gen_bool(keep) {
                fwd.insert(x.clone(), y.clone());
                bwd.insert(y, x);
            }
        }
        let (fwd, bwd) = (Arc::new(fwd), Arc::new(bwd));
        Morph::iso(
            a.clone(),
            b.clone(),
            move |x| fwd.get(x).cloned(),
            move |y| bwd.get(y).cloned(),
        )
    }

    fn nat_atom(&mut self) -> Morph {
        let n = ObjDesc::nat();
        let succ = comp(&[inj2(ObjDesc::One, n.clone()), fold(&n).unwrap()]);
        let zero_only = restrict(&dagger(&comp(&[inj1(ObjDesc::One, n.clone()), fold(&n).unwrap()])));
        match self.rng.gen_range(0..6) {
            0 => identity(n),
            1 => succ,
            2 => dagger(&succ),
            3 => zero_only,
            4 => peano_copy(),
            _ => rfun::invcat::zero(n.clone(), n),
        }
    }

    fn atom(&mut self, a: &ObjDesc, b: &ObjDesc) -> Morph {
        if is_small(a) && is_small(b) {
            self.pinj(a, b)
        } else {
            assert!(*a == ObjDesc::nat() && *b == ObjDesc::nat());
            self.nat_atom()
        }
    }

    /// A random term `a → b`. Finite objects use the finite pool; `nat`
    /// terms are endomorphisms of `nat`.
    pub fn term(&mut self, a: &ObjDesc, b: &ObjDesc, depth: usize) -> Morph {
        if depth == 0 {
            return self.atom(a, b);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..8) {
            0 => self.atom(a, b),
            1 => {
                let c = self.middle(a);
                let f = self.term(a, &c, d);
                let g = self.term(&c, b, d);
                comp(&[f, g])
            }
            2 => dagger(&self.term(b, a, d)),
            3 if a == b => {
                let c = self.middle(a);
                restrict(&self.term(a, &c, d))
            }
            4 => {
                let k = self.rng.gen_range(1..=3);
                join(&self.disjoint_family(a, b, k, d)).unwrap()
            }
            5 => match (a, b) {
                (ObjDesc::Sum(a1, a2), ObjDesc::Sum(b1, b2)) => {
                    oplus(&self.term(a1, b1, d), &self.term(a2, b2, d))
                }
                (ObjDesc::Prod(a1, a2), ObjDesc::Prod(b1, b2)) => {
                    otimes(&self.term(a1, b1, d), &self.term(a2, b2, d))
                }
                _ => self.atom(a, b),
            },
            6 if is_small(a) => {
                let cands = structural_from(a);
                let s = cands.choose(&mut self.rng).unwrap().clone();
                let rest = self.term(&s.tgt().clone(), b, d);
                comp(&[s, rest])
            }
            _ => self.atom(a, b),
        }
    }

    /// `k` terms `a → b` with pairwise disjoint domains and ranges.
    pub fn disjoint_family(&mut self, a: &ObjDesc, b: &ObjDesc, k: usize, depth: usize) -> Vec<Morph> {
        let mut out: Vec<Morph> = Vec::new();
        for _ in 0..k {
            let dom = DecIdem::any(
                a.clone(),
                &out.iter().map(DecIdem::from_restriction).collect::<Vec<_>>(),
            )
            .unwrap();
            let ran = DecIdem::any(
                b.clone(),
                &out.iter().map(|s| DecIdem::from_restriction(&dagger(s))).collect::<Vec<_>>(),
            )
            .unwrap();
            let t = self.term(a, b, depth);
            out.push(comp(&[dom.complement().as_morph(), t, ran.complement().as_morph()]));
        }
        out
    }

    /// A morphism the library exports, on objects where it makes sense.
    pub fn exported(&mut self) -> Morph {
        let a = self.finite();
        let b = self.finite();
        let c = self.finite();
        let n = ObjDesc::nat();
        match self.rng.gen_range(0..16) {
            0 => tensor_unit_left(&a),
            1 => tensor_unit_right(&a),
            2 => tensor_assoc(&a, &b, &c),
            3 => tensor_swap(&a, &b),
            4 => sum_assoc(&a, &b, &c),
            5 => sum_swap(&a, &b),
            6 => dist_left(&a, &b, &c),
            7 => rfun::invcat::dist_right(&a, &b, &c),
            8 => delta(a),
            9 => inj1(a, b),
            10 => inj2(a, b),
            11 => fold(&n).unwrap(),
            12 => unfold(&ObjDesc::list(b)).unwrap(),
            13 => dupeq_morphism(&self.table).unwrap(),
            14 => rfun::densem::pack(self.rng.gen_range(0..4)).unwrap(),
            _ => peano_copy(),
        }
    }

    /// A morphism `A ⊕ U → B ⊕ U` on small finite objects.
    pub fn feedback(&mut self) -> Morph {
        let a = self.finite();
        let b = self.finite();
        let u = self.finite();
        let src = ObjDesc::sum(a, u.clone());
        let tgt = ObjDesc::sum(b, u);
        if is_small(&src) && is_small(&tgt) {
            self.term(&src, &tgt, 2)
        } else {
            self.pinj(&src, &tgt)
        }
    }
}

/// The identity on `nat`, computed by recursion so that it spends fuel.
pub fn peano_copy() -> Morph {
    let s = ObjDesc::nat();
    let one = ObjDesc::One;
    fix(s.clone(), s.clone(), |h| {
        let base = compose_all(&[
            unfold(&s)?,
            dagger(&inj1(one.clone(), s.clone())),
            inj1(one.clone(), s.clone()),
            fold(&s)?,
        ])?;
        let step = compose_all(&[
            unfold(&s)?,
            dagger(&inj2(one.clone(), s.clone())),
            h.clone(),
            inj2(one.clone(), s.clone()),
            fold(&s)?,
        ])?;
        join(&[base, step])
    })
    .unwrap()
}

/// Structural morphisms out of `a` whose target is still small.
fn structural_from(a: &ObjDesc) -> Vec<Morph> {
    let mut c = vec![
        identity(a.clone()),
        dagger(&tensor_unit_left(a)),
        dagger(&tensor_unit_right(a)),
        delta(a.clone()),
        inj1(a.clone(), ObjDesc::One),
        inj2(ObjDesc::One, a.clone()),
    ];
    match a {
        ObjDesc::Prod(x, y) => {
            c.push(tensor_swap(x, y));
            if **x == ObjDesc::One {
                c.push(tensor_unit_left(y));
            }
            if **y == ObjDesc::One {
                c.push(tensor_unit_right(x));
            }
            if let ObjDesc::Prod(y1, y2) = &**y {
                c.push(tensor_assoc(x, y1, y2));
            }
            if let ObjDesc::Prod(x1, x2) = &**x {
                c.push(dagger(&tensor_assoc(x1, x2, y)));
            }
            if let ObjDesc::Sum(y1, y2) = &**y {
                c.push(dist_left(x, y1, y2));
            }
            if let ObjDesc::Sum(x1, x2) = &**x {
                c.push(rfun::invcat::dist_right(x1, x2, y));
            }
        }
        ObjDesc::Sum(x, y) => {
            c.push(sum_swap(x, y));
            if let ObjDesc::Sum(y1, y2) = &**y {
                c.push(sum_assoc(x, y1, y2));
            }
            if let ObjDesc::Sum(x1, x2) = &**x {
                c.push(dagger(&sum_assoc(x1, x2, y)));
            }
        }
        _ => {}
    }
    c.retain(|m| is_small(m.tgt()));
    c
}

pub type LawGen = fn(&mut Gen, bool) -> Instance;

pub fn laws() -> Vec<(&'static str, LawGen)> {
    vec![
        ("restriction (i): f ∘ f̄ = f", |g, fin| {
            let (a, b) = (g.object(fin), g.object(fin));
            let (a, b) = same_world(a, b);
            let f = g.term(&a, &b, 3);
            inst(comp(&[restrict(&f), f.clone()]), f)
        }),
        ("restriction (ii): f̄ ∘ ḡ = ḡ ∘ f̄", |g, fin| {
            let a = g.object(fin);
            let (b, c) = (g.middle(&a), g.middle(&a));
            let f = restrict(&g.term(&a, &b, 3));
            let h = restrict(&g.term(&a, &c, 3));
            inst(comp(&[h.clone(), f.clone()]), comp(&[f, h]))
        }),
        ("restriction (iii): (g ∘ f̄)‾ = ḡ ∘ f̄", |g, fin| {
            let a = g.object(fin);
            let (b, c) = (g.middle(&a), g.middle(&a));
            let f = g.term(&a, &b, 3);
            let h = g.term(&a, &c, 3);
            inst(
                restrict(&comp(&[restrict(&f), h.clone()])),
                comp(&[restrict(&f), restrict(&h)]),
            )
        }),
        ("restriction (iv): ḡ ∘ f = f ∘ (g ∘ f)‾", |g, fin| {
            let a = g.object(fin);
            let (b, c) = (g.middle(&a), g.middle(&a));
            let f = g.term(&a, &b, 3);
            let h = g.term(&b, &c, 3);
            inst(
                comp(&[f.clone(), restrict(&h)]),
                comp(&[restrict(&comp(&[f.clone(), h])), f]),
            )
        }),
        ("lemma (i): f̄ ∘ f̄ = f̄", |g, fin| {
            let a = g.object(fin);
            let b = g.middle(&a);
            let f = restrict(&g.term(&a, &b, 3));
            inst(comp(&[f.clone(), f.clone()]), f)
        }),
        ("lemma (ii): (g ∘ f)‾ = (ḡ ∘ f)‾", |g, fin| {
            let a = g.object(fin);
            let (b, c) = (g.middle(&a), g.middle(&a));
            let f = g.term(&a, &b, 3);
            let h = g.term(&b, &c, 3);
            inst(
                restrict(&comp(&[f.clone(), h.clone()])),
                restrict(&comp(&[f, restrict(&h)])),
            )
        }),
        ("lemma (iii): (ḡ ∘ f̄)‾ = ḡ ∘ f̄", |g, fin| {
            let a = g.object(fin);
            let (b, c) = (g.middle(&a), g.middle(&a));
            let e = comp(&[restrict(&g.term(&a, &b, 3)), restrict(&g.term(&a, &c, 3))]);
            inst(restrict(&e), e)
        }),
        ("lemma (iv): (g ∘ f)‾ ∘ f̄ = (g ∘ f)‾", |g, fin| {
            let a = g.object(fin);
            let (b, c) = (g.middle(&a), g.middle(&a));
            let f = g.term(&a, &b, 3);
            let gf = restrict(&comp(&[f.clone(), g.term(&b, &c, 3)]));
            inst(comp(&[restrict(&f), gf.clone()]), gf)
        }),
        ("partial iso: f† ∘ f = f̄", |g, fin| {
            let a = g.object(fin);
            let b = g.middle(&a);
            let f = g.term(&a, &b, 3);
            inst(comp(&[f.clone(), dagger(&f)]), restrict(&f))
        }),
        ("partial iso: f ∘ f† = (f†)‾", |g, fin| {
            let a = g.object(fin);
            let b = g.middle(&a);
            let f = g.term(&a, &b, 3);
            inst(comp(&[dagger(&f), f.clone()]), restrict(&dagger(&f)))
        }),
        ("partial iso: f†† = f", |g, fin| {
            let a = g.object(fin);
            let b = g.middle(&a);
            let f = g.term(&a, &b, 3);
            inst(dagger(&dagger(&f)), f)
        }),
        ("round trip of exported morphisms", |g, fin| {
            let f = loop {
                let f = g.exported();
                if !fin || (is_small(f.src()) && is_small(f.tgt())) {
                    break f;
                }
            };
            inst(comp(&[f.clone(), dagger(&f)]), restrict(&f))
        }),
        ("join (i): s ≤ ⋁S", |g, fin| {
            let (a, b, s) = family(g, fin);
            let i = g.rng.gen_range(0..s.len());
            inst(comp(&[restrict(&s[i]), join_of(&a, &b, &s)]), s[i].clone())
        }),
        ("join (i): s ≤ t for all s ⇒ ⋁S ≤ t", |g, fin| {
            let (a, b, mut s) = family(g, fin);
            let whole = join_of(&a, &b, &s);
            let extra = g.disjoint_family(&a, &b, s.len() + 1, 2).pop().unwrap();
            let extra = comp(&[
                DecIdem::from_restriction(&whole).complement().as_morph(),
                extra,
                DecIdem::from_restriction(&dagger(&whole)).complement().as_morph(),
            ]);
            s.push(extra);
            let t = join_of(&a, &b, &s);
            inst(comp(&[restrict(&whole), t]), whole)
        }),
        ("join (ii): (⋁S)‾ = ⋁ s̄", |g, fin| {
            let (a, b, s) = family(g, fin);
            let rs: Vec<Morph> = s.iter().map(restrict).collect();
            inst(restrict(&join_of(&a, &b, &s)), join_of(&a, &a, &rs))
        }),
        ("join (iii): f ∘ ⋁S = ⋁(f ∘ s)", |g, fin| {
            let (a, b, s) = family(g, fin);
            let c = g.middle(&b);
            let f = g.term(&b, &c, 2);
            let fs: Vec<Morph> = s.iter().map(|x| comp(&[x.clone(), f.clone()])).collect();
            inst(comp(&[join_of(&a, &b, &s), f]), join_of(&a, &c, &fs))
        }),
        ("join (iv): ⋁S ∘ g = ⋁(s ∘ g)", |g, fin| {
            let (a, b, s) = family(g, fin);
            let c = g.middle(&a);
            let h = g.term(&c, &a, 2);
            let sh: Vec<Morph> = s.iter().map(|x| comp(&[h.clone(), x.clone()])).collect();
            inst(comp(&[h, join_of(&a, &b, &s)]), join_of(&c, &b, &sh))
        }),
        ("Frobenius: (Δ† ⊗ id) ∘ α ∘ (id ⊗ Δ) = Δ ∘ Δ†", |g, fin| {
            let a = tensor_base(g, fin);
            let lhs = comp(&[
                otimes(&identity(a.clone()), &delta(a.clone())),
                tensor_assoc(&a, &a, &a),
                otimes(&dagger(&delta(a.clone())), &identity(a.clone())),
            ]);
            inst(lhs, comp(&[dagger(&delta(a.clone())), delta(a)]))
        }),
        ("speciality: Δ† ∘ Δ = id", |g, fin| {
            let a = g.object(fin);
            inst(comp(&[delta(a.clone()), dagger(&delta(a.clone()))]), identity(a))
        }),
        ("commutativity: γ ∘ Δ = Δ", |g, fin| {
            let a = g.object(fin);
            inst(comp(&[delta(a.clone()), tensor_swap(&a, &a)]), delta(a))
        }),
        ("dupeq is self-adjoint", |g, _| {
            let d = dupeq_morphism(&g.table).unwrap();
            inst(dagger(&d), d)
        }),
        ("unpack_n and unpack_m are disjoint", |g, fin| {
            let a = if fin || g.rng.gen_bool(0.3) { ObjDesc::One } else { tree_obj() };
            let n = g.rng.gen_range(0..=4);
            let m = (n + g.rng.gen_range(1..=4)) % 5;
            let l = ObjDesc::list(a.clone());
            let lhs = comp(&[
                restrict(&unpack_over(&a, m).unwrap()),
                restrict(&unpack_over(&a, n).unwrap()),
            ]);
            inst(lhs, rfun::invcat::zero(l.clone(), l))
        }),
        ("trace: Tr(f)† = Tr(f†)", |g, _| {
            let f = g.feedback();
            let (ObjDesc::Sum(a, _), ObjDesc::Sum(b, _)) = (f.src().clone(), f.tgt().clone()) else {
                unreachable!()
            };
            let tf = trace(&f, &a, &b).unwrap();
            let tfd = trace(&dagger(&f), &b, &a).unwrap();
            inst(dagger(&tf), tfd)
        }),
        ("distributor naturality", |g, _| {
            let (a, b, c) = (g.finite(), g.finite(), g.finite());
            let (a2, b2, c2) = (g.finite(), g.finite(), g.finite());
            let f = g.term(&a, &a2, 1);
            let h1 = g.term(&b, &b2, 1);
            let h2 = g.term(&c, &c2, 1);
            let lhs = comp(&[otimes(&f, &oplus(&h1, &h2)), dist_left(&a2, &b2, &c2)]);
            let rhs = comp(&[dist_left(&a, &b, &c), oplus(&otimes(&f, &h1), &otimes(&f, &h2))]);
            inst(lhs, rhs)
        }),
    ]
}

fn same_world(a: ObjDesc, b: ObjDesc) -> (ObjDesc, ObjDesc) {
    if is_small(&a) && is_small(&b) {
        (a, b)
    } else {
        (ObjDesc::nat(), ObjDesc::nat())
    }
}

fn tensor_base(g: &mut Gen, finite_only: bool) -> ObjDesc {
    loop {
        let a = g.object(finite_only);
        if !is_small(&a) || card(&a).unwrap() <= 5 {
            return a;
        }
    }
}

fn family(g: &mut Gen, finite_only: bool) -> (ObjDesc, ObjDesc, Vec<Morph>) {
    let a = g.object(finite_only);
    let b = g.middle(&a);
    let k = g.rng.gen_range(1..=3);
    let s = g.disjoint_family(&a, &b, k, 2);
    (a, b, s)
}

fn join_of(a: &ObjDesc, b: &ObjDesc, fs: &[Morph]) -> Morph {
    rfun::invcat::join_in(a.clone(), b.clone(), fs).unwrap()
}

/// Elements to check exhaustively, if the object is small enough.
fn all_elements(g: &Gen, obj: &ObjDesc) -> Option<Vec<Elem>> {
    if is_small(obj) {
        return enumerate(obj);
    }
    if *obj == ObjDesc::list(ObjDesc::One) {
        // Lists of length at most 6.
        return Some(enumerate_bounded(obj, 7));
    }
    if *obj == tree_obj() {
        return Some(g.tree_universe());
    }
    None
}

fn check_at(i: &Instance, xs: &[Elem], ys: &[Elem]) -> Result<usize, String> {
    for x in xs {
        let (l, r) = (i.lhs.run(x, FUEL), i.rhs.run(x, FUEL));
        if l != r {
            return Err(format!("forward at {x}: {l:?} vs {r:?}"));
        }
    }
    for y in ys {
        let (l, r) = (i.lhs.run_back(y, FUEL), i.rhs.run_back(y, FUEL));
        if l != r {
            return Err(format!("backward at {y}: {l:?} vs {r:?}"));
        }
    }
    Ok(xs.len() + ys.len())
}

pub struct LawResult {
    pub law: &'static str,
    /// Random (term, element) pairs checked.
    pub sampled: usize,
    /// Elements checked on instances small enough to enumerate.
    pub exhaustive: usize,
    pub violation: Option<String>,
}

/// Checks one law on `samples` random (term, element) pairs, then on every
/// element for [`EXHAUSTIVE_TERMS`] random instances over finite objects.
pub fn check_law(name: &'static str, law: LawGen, seed: u64, samples: usize) -> LawResult {
    let mut g = Gen::new(seed);
    let mut out = LawResult {
        law: name,
        sampled: 0,
        exhaustive: 0,
        violation: None,
    };
    while out.sampled < samples {
        let i = law(&mut g, false);
        let (src, tgt) = (i.lhs.src().clone(), i.lhs.tgt().clone());
        let xs: Vec<Elem> = g.elem(&src).into_iter().collect();
        let ys: Vec<Elem> = g.elem(&tgt).into_iter().collect();
        if xs.is_empty() && ys.is_empty() {
            continue;
        }
        match check_at(&i, &xs, &ys) {
            Ok(_) => out.sampled += 1,
            Err(e) => {
                out.violation = Some(format!("sampled: {e}"));
                return out;
            }
        }
    }
    for _ in 0..EXHAUSTIVE_TERMS {
        let i = law(&mut g, true);
        let (Some(xs), Some(ys)) = (all_elements(&g, i.lhs.src()), all_elements(&g, i.lhs.tgt())) else {
            continue;
        };
        match check_at(&i, &xs, &ys) {
            Ok(n) => out.exhaustive += n,
            Err(e) => {
                out.violation = Some(format!("exhaustive: {e}"));
                return out;
            }
        }
    }
    out
}

pub fn check_all(seed: u64, samples: usize) -> Vec<LawResult> {
    laws()
        .into_iter()
        .enumerate()
        .map(|(k, (name, law))| check_law(name, law, seed.wrapping_add(k as u64), samples))
        .collect()
}
