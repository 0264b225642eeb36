//! Reference arithmetic for tests, written directly on rational endpoint
//! pairs so it shares no code path with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Q = BigRational;
pub type Pair = (Q, Q);

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// All `(lo, hi)` with endpoints `k/m`, `lo <= hi`, in lexicographic order.
pub fn grid(m: i64) -> Vec<Pair> {
    let mut out = Vec::new();
    for a in 0..=m {
        for b in a..=m {
            out.push((q(a, m), q(b, m)));
        }
    }
    out
}

pub fn mul(x: &Pair, y: &Pair) -> Pair {
    (&x.0 * &y.0, &x.1 * &y.1)
}

pub fn one_minus(x: &Pair) -> Pair {
    (q(1, 1) - &x.1, q(1, 1) - &x.0)
}

pub fn psum(x: &Pair, y: &Pair) -> Pair {
    (&x.0 + &y.0 - &x.0 * &y.0, &x.1 + &y.1 - &x.1 * &y.1)
}

pub fn min(x: &Pair, y: &Pair) -> Pair {
    (x.0.clone().min(y.0.clone()), x.1.clone().min(y.1.clone()))
}

pub fn max(x: &Pair, y: &Pair) -> Pair {
    (x.0.clone().max(y.0.clone()), x.1.clone().max(y.1.clone()))
}

pub fn show(x: &Pair) -> (String, String) {
    (x.0.to_string(), x.1.to_string())
}

/// First `(Λ, X, Y)` in lexicographic grid order where
/// `F(Λ·X, Λ·Y) != Λ·F(X, Y)`, with both sides.
pub fn first_p_homogeneity_failure(
    m: i64,
    f: impl Fn(&Pair, &Pair) -> Pair,
) -> Option<(Pair, Pair, Pair, Pair, Pair)> {
    let g = grid(m);
    for l in &g {
        for x in &g {
            for y in &g {
                let lhs = f(&mul(l, x), &mul(l, y));
                let rhs = mul(l, &f(x, y));
                if lhs != rhs {
                    return Some((l.clone(), x.clone(), y.clone(), lhs, rhs));
                }
            }
        }
    }
    None
}
