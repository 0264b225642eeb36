//! Named built-in functions, scalings, and order isomorphisms.

use thiserror::Error;

use crate::endpoint::Endpoint;
use crate::functions::{IvFunction, OrderIso, ScalingFunction};
use crate::interval::Interval;

pub const FUNCTION_NAMES: &[&str] = &["min", "max", "product", "mean", "proj_<k>", "pow_<k>"];
pub const SCALING_NAMES: &[&str] = &["P", "P_NS", "pi2"];
pub const ISO_NAMES: &[&str] = &["identity", "square"];

/// The shipped function instances with their default arities.
pub const STANDARD_FUNCTIONS: [(&str, usize); 7] = [
    ("min", 2),
    ("max", 2),
    ("product", 2),
    ("mean", 2),
    ("proj_1", 2),
    ("proj_2", 2),
    ("pow_2", 1),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown {kind} `{name}`; available: {available}")]
    Unknown {
        kind: &'static str,
        name: String,
        available: String,
    },
    #[error("`{name}` cannot have arity {arity}: {reason}")]
    Arity {
        name: String,
        arity: usize,
        reason: String,
    },
    #[error("`{name}` is unavailable in this numeric mode: {reason}")]
    Unsupported { name: String, reason: String },
}

/// Any object the registry can hand out.
#[derive(Debug, Clone)]
pub enum Entry<T> {
    Function(IvFunction<T>),
    Scaling(ScalingFunction<T>),
    Iso(OrderIso<T>),
}

/// Looks `name` up among functions, then scalings, then isomorphisms.
/// `arity` only matters for functions.
pub fn get<T: Endpoint>(name: &str, arity: usize) -> Result<Entry<T>, RegistryError> {
    if SCALING_NAMES.contains(&name) {
        return scaling(name).map(Entry::Scaling);
    }
    if ISO_NAMES.contains(&name) {
        return order_iso(name).map(Entry::Iso);
    }
    function(name, arity).map(Entry::Function).map_err(|err| match err {
        RegistryError::Unknown { name, .. } => RegistryError::Unknown {
            kind: "name",
            name,
            available: [FUNCTION_NAMES, SCALING_NAMES, ISO_NAMES].concat().join(", "),
        },
        other => other,
    })
}

pub fn function<T: Endpoint>(name: &str, arity: usize) -> Result<IvFunction<T>, RegistryError> {
    if arity == 0 {
        return Err(RegistryError::Arity {
            name: name.to_string(),
            arity,
            reason: "arity must be positive".into(),
        });
    }
    match name {
        "min" => return Ok(min(arity)),
        "max" => return Ok(max(arity)),
        "product" => return Ok(product(arity)),
        "mean" => return Ok(mean(arity)),
        _ => {}
    }
    if let Some(k) = indexed(name, "proj_") {
        if k == 0 || k > arity {
            return Err(RegistryError::Arity {
                name: name.to_string(),
                arity,
                reason: format!("projection index must lie in 1..={arity}"),
            });
        }
        return Ok(projection(k, arity));
    }
    if let Some(k) = indexed(name, "pow_") {
        if arity != 1 {
            return Err(RegistryError::Arity {
                name: name.to_string(),
                arity,
                reason: "powers are unary".into(),
            });
        }
        if k == 0 {
            return Err(RegistryError::Arity {
                name: name.to_string(),
                arity,
                reason: "exponent must be a positive integer".into(),
            });
        }
        return Ok(power(k as u32));
    }
    Err(RegistryError::Unknown {
        kind: "function",
        name: name.to_string(),
        available: FUNCTION_NAMES.join(", "),
    })
}

pub fn scaling<T: Endpoint>(name: &str) -> Result<ScalingFunction<T>, RegistryError> {
    match name {
        "P" => Ok(product_scaling()),
        "P_NS" => Ok(prob_sum_scaling()),
        "pi2" => Ok(projection_scaling()),
        _ => Err(RegistryError::Unknown {
            kind: "scaling function",
            name: name.to_string(),
            available: SCALING_NAMES.join(", "),
        }),
    }
}

pub fn order_iso<T: Endpoint>(name: &str) -> Result<OrderIso<T>, RegistryError> {
    match name {
        "identity" => Ok(OrderIso::identity()),
        "square" => square_iso(),
        _ => Err(RegistryError::Unknown {
            kind: "order isomorphism",
            name: name.to_string(),
            available: ISO_NAMES.join(", "),
        }),
    }
}

fn indexed(name: &str, prefix: &str) -> Option<usize> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn fold_with<T: Endpoint>(
    name: &str,
    arity: usize,
    op: fn(&Interval<T>, &Interval<T>) -> Interval<T>,
) -> IvFunction<T> {
    IvFunction::new(name, arity, move |args| {
        let (first, rest) = args.split_first().expect("positive arity");
        rest.iter().fold(first.clone(), |acc, x| op(&acc, x))
    })
}

/// n-ary meet.
pub fn min<T: Endpoint>(arity: usize) -> IvFunction<T> {
    fold_with("min", arity, Interval::meet)
}

/// n-ary join.
pub fn max<T: Endpoint>(arity: usize) -> IvFunction<T> {
    fold_with("max", arity, Interval::join)
}

pub fn product<T: Endpoint>(arity: usize) -> IvFunction<T> {
    fold_with("product", arity, Interval::product)
}

/// Endpointwise arithmetic mean.
pub fn mean<T: Endpoint>(arity: usize) -> IvFunction<T> {
    IvFunction::new("mean", arity, move |args| {
        let sum = |pick: fn(&Interval<T>) -> &T| {
            args.iter()
                .fold(T::zero(), |acc, x| acc.plus(pick(x)))
                .div_count(args.len())
        };
        Interval::from_endpoints(sum(Interval::lo), sum(Interval::hi))
    })
}

/// `(X1..Xn) -> Xk`, 1-based.
pub fn projection<T: Endpoint>(k: usize, arity: usize) -> IvFunction<T> {
    assert!((1..=arity).contains(&k), "projection index out of range");
    IvFunction::new(format!("proj_{k}"), arity, move |args| args[k - 1].clone())
}

/// `X -> X^k`.
pub fn power<T: Endpoint>(k: u32) -> IvFunction<T> {
    IvFunction::new(format!("pow_{k}"), 1, move |args| args[0].power(k))
}

/// `P(Λ, X) = Λ·X`.
pub fn product_scaling<T: Endpoint>() -> ScalingFunction<T> {
    ScalingFunction::new("P", Interval::product)
}

/// `P_NS(Λ, X)`, computed directly by the endpoint formula `λ + (1 - λ)·x`.
pub fn prob_sum_scaling<T: Endpoint>() -> ScalingFunction<T> {
    ScalingFunction::new("P_NS", Interval::prob_sum)
}

/// `pi2(Λ, X) = X`.
pub fn projection_scaling<T: Endpoint>() -> ScalingFunction<T> {
    ScalingFunction::new("pi2", |_, x| x.clone())
}

/// `Φ(Λ) = Λ·Λ` with endpointwise square-root inverse. Float mode only.
pub fn square_iso<T: Endpoint>() -> Result<OrderIso<T>, RegistryError> {
    if T::EXACT {
        return Err(RegistryError::Unsupported {
            name: "square".into(),
            reason: "its inverse (square root) is irrational on most rationals; use float mode".into(),
        });
    }
    Ok(OrderIso::new(
        "square",
        |x: &Interval<T>| x.product(x),
        |x: &Interval<T>| x.sqrt().expect("float endpoints support sqrt"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endpoint::Rational;

    fn iv(text: &str) -> Interval<Rational> {
        text.parse().unwrap()
    }

    #[test]
    fn projection_scaling_selects_second() {
        let Entry::Scaling(pi2) = get::<Rational>("pi2", 2).unwrap() else {
            panic!("pi2 should be a scaling")
        };
        assert_eq!(pi2.apply(&iv("[0.3,0.4]"), &iv("[0.1,0.9]")), iv("[0.1,0.9]"));
    }

    #[test]
    fn product_scaling_unit() {
        let p = scaling::<Rational>("P").unwrap();
        let x = iv("[2/7,5/7]");
        assert_eq!(p.apply(&Interval::one(), &x), x);
    }

    #[test]
    fn unknown_names_list_alternatives() {
        let err = get::<Rational>("frobnicate", 2).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("frobnicate"));
        assert!(message.contains("min") && message.contains("pi2") && message.contains("square"));
        assert!(matches!(scaling::<f64>("Q"), Err(RegistryError::Unknown { .. })));
        assert!(matches!(order_iso::<f64>("cube"), Err(RegistryError::Unknown { .. })));
        assert!(matches!(function::<f64>("proj_", 2), Err(RegistryError::Unknown { .. })));
    }

    #[test]
    fn arity_rules() {
        assert!(matches!(function::<f64>("proj_3", 2), Err(RegistryError::Arity { .. })));
        assert!(matches!(function::<f64>("proj_0", 2), Err(RegistryError::Arity { .. })));
        assert!(matches!(function::<f64>("pow_2", 2), Err(RegistryError::Arity { .. })));
        assert!(matches!(function::<f64>("pow_0", 1), Err(RegistryError::Arity { .. })));
        assert!(matches!(function::<f64>("min", 0), Err(RegistryError::Arity { .. })));
        assert_eq!(function::<f64>("max", 5).unwrap().arity(), 5);
    }

    #[test]
    fn square_is_float_only() {
        assert!(matches!(order_iso::<Rational>("square"), Err(RegistryError::Unsupported { .. })));
        let sq = order_iso::<f64>("square").unwrap();
        let x = Interval::make(0.5, 0.9).unwrap();
        assert!(sq.invert(&sq.apply(&x)).approx_eq(&x, 1e-15));
    }

    #[test]
    fn nary_builtins() {
        let xs = [iv("[1/2,1]"), iv("[1/4,1/2]"), iv("[0,3/4]")];
        assert_eq!(min(3).eval(&xs), iv("[0,1/2]"));
        assert_eq!(max(3).eval(&xs), iv("[1/2,1]"));
        assert_eq!(product(3).eval(&xs), iv("[0,3/8]"));
        assert_eq!(mean(3).eval(&xs), iv("[1/4,3/4]"));
        assert_eq!(projection(2, 3).eval(&xs), iv("[1/4,1/2]"));
        assert_eq!(power(3).eval(&[iv("[1/2,1]")]), iv("[1/8,1]"));
    }
}
