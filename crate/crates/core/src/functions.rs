//! IV-functions, scaling functions, order isomorphisms, and the operators
//! that build new ones from old (standard-negation duals and sections).

use std::fmt;
use std::sync::Arc;

use crate::endpoint::Endpoint;
use crate::interval::Interval;

type NaryEval<T> = dyn Fn(&[Interval<T>]) -> Interval<T> + Send + Sync;
type BinaryEval<T> = dyn Fn(&Interval<T>, &Interval<T>) -> Interval<T> + Send + Sync;
type UnaryEval<T> = dyn Fn(&Interval<T>) -> Interval<T> + Send + Sync;

/// An n-ary map `I([0,1])^n -> I([0,1])`.
#[derive(Clone)]
pub struct IvFunction<T> {
    name: String,
    arity: usize,
    eval: Arc<NaryEval<T>>,
}

impl<T: Endpoint> IvFunction<T> {
    /// # Panics
    /// If `arity` is zero.
    pub fn new<F>(name: impl Into<String>, arity: usize, eval: F) -> Self
    where
        F: Fn(&[Interval<T>]) -> Interval<T> + Send + Sync + 'static,
    {
        assert!(arity >= 1, "IV-function arity must be positive");
        IvFunction {
            name: name.into(),
            arity,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, args: &[Interval<T>]) -> Interval<T> {
        debug_assert_eq!(args.len(), self.arity, "arity mismatch calling {}", self.name);
        (self.eval)(args)
    }

    /// `F(X, ..., X)`
    pub fn eval_diagonal(&self, x: &Interval<T>) -> Interval<T> {
        let args = vec![x.clone(); self.arity];
        self.eval(&args)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl<T> fmt::Debug for IvFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IvFunction")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .finish_non_exhaustive()
    }
}

/// A binary map `G: I([0,1])^2 -> I([0,1])`, applied as `G(Λ, X)`.
#[derive(Clone)]
pub struct ScalingFunction<T> {
    name: String,
    eval: Arc<BinaryEval<T>>,
}

impl<T: Endpoint> ScalingFunction<T> {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&Interval<T>, &Interval<T>) -> Interval<T> + Send + Sync + 'static,
    {
        ScalingFunction {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, lambda: &Interval<T>, x: &Interval<T>) -> Interval<T> {
        (self.eval)(lambda, x)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl<T> fmt::Debug for ScalingFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalingFunction")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

/// A bijective, order-preserving map on `I([0,1])` together with its inverse.
///
/// Neither property is enforced at construction; see
/// [`crate::homogeneity::check_order_iso`] for the grid certificate.
#[derive(Clone)]
pub struct OrderIso<T> {
    name: String,
    forward: Arc<UnaryEval<T>>,
    inverse: Arc<UnaryEval<T>>,
}

impl<T: Endpoint> OrderIso<T> {
    pub fn new<F, G>(name: impl Into<String>, forward: F, inverse: G) -> Self
    where
        F: Fn(&Interval<T>) -> Interval<T> + Send + Sync + 'static,
        G: Fn(&Interval<T>) -> Interval<T> + Send + Sync + 'static,
    {
        OrderIso {
            name: name.into(),
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
        }
    }

    pub fn identity() -> Self {
        OrderIso::new("identity", Interval::clone, Interval::clone)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, x: &Interval<T>) -> Interval<T> {
        (self.forward)(x)
    }

    pub fn invert(&self, x: &Interval<T>) -> Interval<T> {
        (self.inverse)(x)
    }
}

impl<T> fmt::Debug for OrderIso<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderIso")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

/// `F_NS(X1..Xn) = N_S(F(N_S X1, ..., N_S Xn))`.
pub fn dual_ns<T: Endpoint>(f: &IvFunction<T>) -> IvFunction<T> {
    let inner = f.clone();
    let name = format!("{}_NS", f.name());
    IvFunction::new(name, f.arity(), move |args| {
        let negated: Vec<_> = args.iter().map(Interval::neg_standard).collect();
        inner.eval(&negated).neg_standard()
    })
}

/// `G_NS(X, Y) = N_S(G(N_S X, N_S Y))`. For `G = P` this is the probabilistic sum.
pub fn dual_scaling_ns<T: Endpoint>(g: &ScalingFunction<T>) -> ScalingFunction<T> {
    let inner = g.clone();
    let name = format!("{}_NS", g.name());
    ScalingFunction::new(name, move |x, y| {
        inner.apply(&x.neg_standard(), &y.neg_standard()).neg_standard()
    })
}

/// The unary map `G_A(X) = G(X, A)`.
#[derive(Clone, Debug)]
pub struct Section<T> {
    scaling: ScalingFunction<T>,
    anchor: Interval<T>,
}

impl<T: Endpoint> Section<T> {
    pub fn anchor(&self) -> &Interval<T> {
        &self.anchor
    }

    pub fn scaling(&self) -> &ScalingFunction<T> {
        &self.scaling
    }

    pub fn apply(&self, x: &Interval<T>) -> Interval<T> {
        self.scaling.apply(x, &self.anchor)
    }

    pub fn name(&self) -> String {
        format!("{}_{}", self.scaling.name(), self.anchor)
    }
}

pub fn section<T: Endpoint>(g: &ScalingFunction<T>, anchor: &Interval<T>) -> Section<T> {
    Section {
        scaling: g.clone(),
        anchor: anchor.clone(),
    }
}
