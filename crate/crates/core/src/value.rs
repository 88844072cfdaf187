//! Operational values: finite constructor trees.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::syntax::{self, ParseError};

/// Constructor name reserved for tuples. `<a, b>` is sugar for `<>(a, b)`.
pub const TUPLE: &str = "<>";

/// A value `c(v1, ..., vn)`. Symbols are constructors with no arguments.
///
/// Nodes are shared, so cloning is constant time, and each node caches a
/// structural hash so that hashing is too.
#[derive(Clone)]
pub struct Value(Arc<Node>);

struct Node {
    ctor: String,
    args: Vec<Value>,
    hash: u64,
}

impl Value {
    pub fn new(ctor: impl Into<String>, args: Vec<Value>) -> Self {
        let ctor = ctor.into();
        let mut h = DefaultHasher::new();
        ctor.hash(&mut h);
        for a in &args {
            h.write_u64(a.0.hash);
        }
        Value(Arc::new(Node {
            ctor,
            args,
            hash: h.finish(),
        }))
    }

    pub fn sym(ctor: impl Into<String>) -> Self {
        Value::new(ctor, Vec::new())
    }

    pub fn tuple(items: Vec<Value>) -> Self {
        Value::new(TUPLE, items)
    }

    /// Peano numeral built from `Z` and `S`.
    pub fn nat(n: u64) -> Self {
        let mut v = Value::sym("Z");
        for _ in 0..n {
            v = Value::new("S", vec![v]);
        }
        v
    }

    /// Reads a Peano numeral back, if this value is one.
    pub fn to_nat(&self) -> Option<u64> {
        let mut n = 0;
        let mut cur = self;
        loop {
            match (cur.ctor(), cur.args()) {
                ("Z", []) => return Some(n),
                ("S", [inner]) => {
                    n += 1;
                    cur = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn ctor(&self) -> &str {
        &self.0.ctor
    }

    pub fn args(&self) -> &[Value] {
        &self.0.args
    }

    pub fn into_parts(self) -> (String, Vec<Value>) {
        match Arc::try_unwrap(self.0) {
            Ok(n) => (n.ctor, n.args),
            Err(shared) => (shared.ctor.clone(), shared.args.clone()),
        }
    }

    pub fn is_tuple(&self) -> bool {
        self.0.ctor == TUPLE
    }

    /// Number of constructor nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Value::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.args().iter().map(Value::depth).max().unwrap_or(0)
    }

    /// Every constructor name in the tree, in pre-order.
    pub fn constructors(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_ctors(&mut out);
        out
    }

    fn collect_ctors<'a>(&'a self, out: &mut Vec<&'a str>) {
        out.push(self.ctor());
        for a in self.args() {
            a.collect_ctors(out);
        }
    }

    /// The duplication/equality operator `|_ . _|`.
    ///
    /// `<x>` becomes `<x, x>`; `<x, y>` becomes `<x>` when `x = y` and stays
    /// `<x, y>` otherwise. Undefined on anything else.
    pub fn dupeq(&self) -> Option<Value> {
        if !self.is_tuple() {
            return None;
        }
        match self.args() {
            [x] => Some(Value::tuple(vec![x.clone(), x.clone()])),
            [x, y] if x == y => Some(Value::tuple(vec![x.clone()])),
            [_, _] => Some(self.clone()),
            _ => None,
        }
    }
}

/// Structural equality; kept as a named operation for symmetry with the
/// categorical equality test.
pub fn value_eq(a: &Value, b: &Value) -> bool {
    a == b
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.ctor == other.0.ctor
                && self.0.args == other.0.args)
    }
}

impl Eq for Value {}

impl Hash for Value {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        (self.ctor(), self.args()).cmp(&(other.ctor(), other.args()))
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_tuple() {
            f.write_str("<")?;
            write_args(f, self.args())?;
            return f.write_str(">");
        }
        f.write_str(self.ctor())?;
        if !self.args().is_empty() {
            f.write_str("(")?;
            write_args(f, self.args())?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Value]) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Value {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        syntax::parse_value(s)
    }
}
