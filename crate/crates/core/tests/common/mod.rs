//! Support shared by the integration tests: the example programs, seeded
//! generators of inputs they can consume, and the categorical law suite.
#![allow(dead_code)]

pub mod laws;

use rand::Rng;
use rfun::{parse_program, Program, Value};

pub const PLUS: &str = include_str!("../../programs/plus.rfun");
pub const PLUS_FLAT: &str = include_str!("../../programs/plus_flat.rfun");
pub const PLUS_INV: &str = include_str!("../../programs/plus_inv.rfun");
pub const FIB: &str = include_str!("../../programs/fib.rfun");
pub const FIB_INV: &str = include_str!("../../programs/fib_inv.rfun");
pub const MIRROR: &str = include_str!("../../programs/mirror.rfun");
pub const EQTEST: &str = include_str!("../../programs/eqtest.rfun");
pub const SUB: &str = include_str!("../../programs/sub.rfun");
pub const ID: &str = include_str!("../../programs/id.rfun");
pub const LOOP: &str = include_str!("../../programs/loop.rfun");
pub const VIOLATE: &str = include_str!("../../programs/violate.rfun");

pub fn prog(src: &str) -> Program {
    parse_program(src).expect("example program parses")
}

pub fn pair(a: Value, b: Value) -> Value {
    Value::tuple(vec![a, b])
}

pub fn nat_pair(a: u64, b: u64) -> Value {
    pair(Value::nat(a), Value::nat(b))
}

/// Integer Fibonacci with `fib(1) = fib(2) = 1`.
pub fn fib_int(n: u64) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

pub fn nat(rng: &mut impl Rng, max: u64) -> Value {
    Value::nat(rng.gen_range(0..=max))
}

/// Two naturals, equal about a third of the time.
pub fn nat_pair_biased(rng: &mut impl Rng, max: u64) -> Value {
    let a = rng.gen_range(0..=max);
    let b = if rng.gen_bool(0.35) { a } else { rng.gen_range(0..=max) };
    nat_pair(a, b)
}

/// `<a, a + b>`: in the range of addition.
pub fn sum_pair(rng: &mut impl Rng, max: u64) -> Value {
    let a = rng.gen_range(0..=max);
    let b = rng.gen_range(0..=max);
    nat_pair(a, a + b)
}

/// `<Fib(n+1), Fib(n+2)>` half the time, otherwise an arbitrary pair.
pub fn fib_pair(rng: &mut impl Rng, max: u64) -> Value {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(0..=max);
        nat_pair(fib_int(n + 1), fib_int(n + 2))
    } else {
        nat_pair_biased(rng, 15)
    }
}

pub fn tree(rng: &mut impl Rng, depth: usize) -> Value {
    if depth == 0 || rng.gen_bool(0.3) {
        Value::sym("Leaf")
    } else {
        Value::new(
            "Node",
            vec![tree(rng, depth - 1), nat(rng, 3), tree(rng, depth - 1)],
        )
    }
}

pub fn eq_result(rng: &mut impl Rng) -> Value {
    match rng.gen_range(0..3) {
        0 => Value::new("Eq", vec![nat(rng, 4)]),
        1 => Value::new("Neq", vec![nat(rng, 4), nat(rng, 4)]),
        _ => nat_pair_biased(rng, 4),
    }
}

pub fn one_or_two_tuple(rng: &mut impl Rng) -> Value {
    if rng.gen_bool(0.5) {
        Value::tuple(vec![nat(rng, 4)])
    } else {
        nat_pair_biased(rng, 4)
    }
}

pub type ValueGen = fn(&mut rand_chacha::ChaCha8Rng) -> Value;

/// A function of an example program together with generators of inputs
/// for each direction.
pub struct Subject {
    pub label: &'static str,
    pub src: &'static str,
    pub entry: &'static str,
    pub forward: ValueGen,
    pub backward: ValueGen,
}

pub fn subjects() -> Vec<Subject> {
    vec![
        Subject {
            label: "plus",
            src: PLUS,
            entry: "plus",
            forward: |r| nat_pair_biased(r, 12),
            backward: |r| if r.gen_bool(0.8) { sum_pair(r, 10) } else { nat_pair_biased(r, 12) },
        },
        Subject {
            label: "plus_flat",
            src: PLUS_FLAT,
            entry: "plus",
            forward: |r| nat_pair_biased(r, 12),
            backward: |r| if r.gen_bool(0.8) { sum_pair(r, 10) } else { nat_pair_biased(r, 12) },
        },
        Subject {
            label: "plus_inv",
            src: PLUS_INV,
            entry: "plus_inv",
            forward: |r| if r.gen_bool(0.8) { sum_pair(r, 10) } else { nat_pair_biased(r, 12) },
            backward: |r| nat_pair_biased(r, 12),
        },
        Subject {
            label: "fib",
            src: FIB,
            entry: "fib",
            forward: |r| nat(r, 12),
            backward: |r| fib_pair(r, 12),
        },
        Subject {
            label: "fib_inv",
            src: FIB_INV,
            entry: "fib_inv",
            forward: |r| fib_pair(r, 12),
            backward: |r| nat(r, 12),
        },
        Subject {
            label: "mirror",
            src: MIRROR,
            entry: "mirror",
            forward: |r| tree(r, 5),
            backward: |r| tree(r, 5),
        },
        Subject {
            label: "eqtest",
            src: EQTEST,
            entry: "eqtest",
            forward: |r| nat_pair_biased(r, 4),
            backward: eq_result,
        },
        Subject {
            label: "copy",
            src: EQTEST,
            entry: "copy",
            forward: |r| nat(r, 6),
            backward: one_or_two_tuple,
        },
        Subject {
            label: "sub",
            src: SUB,
            entry: "sub",
            forward: |r| if r.gen_bool(0.8) { sum_pair(r, 10) } else { nat_pair_biased(r, 12) },
            backward: |r| nat_pair_biased(r, 12),
        },
        Subject {
            label: "id",
            src: ID,
            entry: "f",
            forward: |r| tree(r, 3),
            backward: |r| tree(r, 3),
        },
    ]
}
