//! A small expression language for user-defined IV-functions, scaling
//! functions, and unary maps.
//!
//! ```text
//! expr  := call | var | const
//! call  := ident "(" expr { "," expr } ")"
//! var   := "L" | "X" digits
//! const := "[" number "," number "]"
//! ident := "min" | "max" | "mul" | "psum" | "neg" | "mean" | "pow" | "proj"
//! ```
//!
//! `pow(e, k)` takes a positive integer literal `k`. `proj(k)` is `Xk`, and
//! `proj(k, e1, ..., em)` selects `ek`. Numbers are decimals or `p/q`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::endpoint::{Endpoint, Rational};
use crate::functions::{IvFunction, OrderIso, ScalingFunction};
use crate::interval::Interval;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Position, message: String },
    #[error("arity error at {at}: {message}")]
    Arity { at: Position, message: String },
    #[error("unknown identifier `{name}` at {at}")]
    UnknownIdentifier { at: Position, name: String },
    #[error("{0}")]
    Compile(String),
}

impl DslError {
    pub fn position(&self) -> Option<Position> {
        match self {
            DslError::Syntax { at, .. } | DslError::Arity { at, .. } | DslError::UnknownIdentifier { at, .. } => {
                Some(*at)
            }
            DslError::Compile(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Min,
    Max,
    Mul,
    Psum,
    Neg,
    Mean,
}

impl Builtin {
    fn name(self) -> &'static str {
        match self {
            Builtin::Min => "min",
            Builtin::Max => "max",
            Builtin::Mul => "mul",
            Builtin::Psum => "psum",
            Builtin::Neg => "neg",
            Builtin::Mean => "mean",
        }
    }
}

/// Parsed expression. Constants are kept exact and converted at compile time.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// `Xk`, 1-based.
    Var(usize),
    /// `L`, the scaling argument.
    Lambda,
    Const(Interval<Rational>),
    Call { op: Builtin, args: Vec<Expr> },
    Pow { base: Box<Expr>, exponent: u32 },
    /// `proj(k, args..)`; with no args, selects `Xk`.
    Proj { index: usize, args: Vec<Expr> },
}

impl Expr {
    /// Number of nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        1 + match self {
            Expr::Var(_) | Expr::Lambda | Expr::Const(_) => 0,
            Expr::Call { args, .. } | Expr::Proj { args, .. } => args.iter().map(Expr::depth).max().unwrap_or(0),
            Expr::Pow { base, .. } => base.depth(),
        }
    }

    fn uses_lambda(&self) -> bool {
        match self {
            Expr::Lambda => true,
            Expr::Var(_) | Expr::Const(_) => false,
            Expr::Call { args, .. } | Expr::Proj { args, .. } => args.iter().any(Expr::uses_lambda),
            Expr::Pow { base, .. } => base.uses_lambda(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |args: &[Expr]| args.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        match self {
            Expr::Var(k) => write!(f, "X{k}"),
            Expr::Lambda => write!(f, "L"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Call { op, args } => write!(f, "{}({})", op.name(), list(args)),
            Expr::Pow { base, exponent } => write!(f, "pow({base},{exponent})"),
            Expr::Proj { index, args } if args.is_empty() => write!(f, "proj({index})"),
            Expr::Proj { index, args } => write!(f, "proj({index},{})", list(args)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Position)>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = Position { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push((tok, at));
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() || c == '.' {
            while i < chars.len() && (chars[i].is_ascii_digit() || matches!(chars[i], '.' | '/')) {
                i += 1;
            }
            Tok::Number(chars[start..i].iter().collect())
        } else {
            return Err(DslError::Syntax {
                at,
                message: format!("unexpected character `{c}`"),
            });
        };
        column += i - start;
        tokens.push((tok, at));
    }
    tokens.push((Tok::End, Position { line, column }));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Tok, Position)>,
    cursor: usize,
    arity: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Position) {
        &self.tokens[self.cursor]
    }

    fn bump(&mut self) -> (Tok, Position) {
        let tok = self.tokens[self.cursor].clone();
        if tok.0 != Tok::End {
            self.cursor += 1;
        }
        tok
    }

    fn expect(&mut self, want: Tok) -> Result<Position, DslError> {
        let (tok, at) = self.bump();
        if tok == want {
            Ok(at)
        } else {
            Err(DslError::Syntax {
                at,
                message: format!("expected {}, found {}", want.describe(), tok.describe()),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::LBracket => self.constant(at),
            Tok::Ident(name) => {
                if self.peek().0 == Tok::LParen {
                    self.call(&name, at)
                } else {
                    self.variable(&name, at)
                }
            }
            other => Err(DslError::Syntax {
                at,
                message: format!("expected an expression, found {}", other.describe()),
            }),
        }
    }

    fn variable(&self, name: &str, at: Position) -> Result<Expr, DslError> {
        if name == "L" {
            return Ok(Expr::Lambda);
        }
        if let Some(digits) = name.strip_prefix('X') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                let k: usize = digits.parse().map_err(|_| DslError::Arity {
                    at,
                    message: format!("variable index `{digits}` is too large"),
                })?;
                return self.check_index(k, at).map(|_| Expr::Var(k));
            }
        }
        Err(DslError::UnknownIdentifier {
            at,
            name: name.to_string(),
        })
    }

    fn check_index(&self, k: usize, at: Position) -> Result<(), DslError> {
        if k == 0 || k > self.arity {
            return Err(DslError::Arity {
                at,
                message: format!("X{k} is out of range for arity {}", self.arity),
            });
        }
        Ok(())
    }

    fn number(&mut self) -> Result<(String, Position), DslError> {
        match self.bump() {
            (Tok::Number(text), at) => Ok((text, at)),
            (other, at) => Err(DslError::Syntax {
                at,
                message: format!("expected a number, found {}", other.describe()),
            }),
        }
    }

    fn integer(&mut self) -> Result<(usize, Position), DslError> {
        let (text, at) = self.number()?;
        let value = text
            .bytes()
            .all(|b| b.is_ascii_digit())
            .then(|| text.parse::<usize>().ok())
            .flatten()
            .filter(|&k| k >= 1)
            .ok_or_else(|| DslError::Syntax {
                at,
                message: format!("expected a positive integer literal, found `{text}`"),
            })?;
        Ok((value, at))
    }

    fn constant(&mut self, open: Position) -> Result<Expr, DslError> {
        let (lo, lo_at) = self.number()?;
        self.expect(Tok::Comma)?;
        let (hi, hi_at) = self.number()?;
        self.expect(Tok::RBracket)?;
        let parse = |text: &str, at| {
            Rational::parse_literal(text).ok_or_else(|| DslError::Syntax {
                at,
                message: format!("malformed number `{text}`"),
            })
        };
        let value = Interval::make(parse(&lo, lo_at)?, parse(&hi, hi_at)?).map_err(|err| DslError::Syntax {
            at: open,
            message: err.to_string(),
        })?;
        Ok(Expr::Const(value))
    }

    fn call(&mut self, name: &str, at: Position) -> Result<Expr, DslError> {
        let op = match name {
            "min" => Some(Builtin::Min),
            "max" => Some(Builtin::Max),
            "mul" => Some(Builtin::Mul),
            "psum" => Some(Builtin::Psum),
            "neg" => Some(Builtin::Neg),
            "mean" => Some(Builtin::Mean),
            "pow" | "proj" => None,
            _ => {
                return Err(DslError::UnknownIdentifier {
                    at,
                    name: name.to_string(),
                })
            }
        };
        self.expect(Tok::LParen)?;
        match (op, name) {
            (Some(op), _) => {
                let args = self.arguments()?;
                if op == Builtin::Neg && args.len() != 1 {
                    return Err(DslError::Arity {
                        at,
                        message: format!("neg takes exactly one argument, got {}", args.len()),
                    });
                }
                Ok(Expr::Call { op, args })
            }
            (None, "pow") => {
                let base = self.expr()?;
                self.expect(Tok::Comma)?;
                let (k, k_at) = self.integer()?;
                self.expect(Tok::RParen)?;
                let exponent = u32::try_from(k).map_err(|_| DslError::Syntax {
                    at: k_at,
                    message: format!("exponent {k} is too large"),
                })?;
                Ok(Expr::Pow {
                    base: Box::new(base),
                    exponent,
                })
            }
            _ => {
                let (index, index_at) = self.integer()?;
                let args = if self.peek().0 == Tok::Comma {
                    self.bump();
                    self.arguments()?
                } else {
                    self.expect(Tok::RParen)?;
                    Vec::new()
                };
                if args.is_empty() {
                    self.check_index(index, index_at)?;
                } else if index > args.len() {
                    return Err(DslError::Arity {
                        at: index_at,
                        message: format!("proj index {index} exceeds its {} arguments", args.len()),
                    });
                }
                Ok(Expr::Proj { index, args })
            }
        }
    }

    /// `expr { "," expr } ")"`
    fn arguments(&mut self) -> Result<Vec<Expr>, DslError> {
        let mut args = vec![self.expr()?];
        loop {
            let (tok, at) = self.bump();
            match tok {
                Tok::Comma => args.push(self.expr()?),
                Tok::RParen => return Ok(args),
                other => {
                    return Err(DslError::Syntax {
                        at,
                        message: format!("expected `,` or `)`, found {}", other.describe()),
                    })
                }
            }
        }
    }
}

/// Parses `src` as an expression over `X1..X{arity}` (and `L`).
pub fn parse_expr(src: &str, arity: usize) -> Result<Expr, DslError> {
    let mut parser = Parser {
        tokens: tokenize(src)?,
        cursor: 0,
        arity,
    };
    let expr = parser.expr()?;
    match parser.bump() {
        (Tok::End, _) => Ok(expr),
        (tok, at) => Err(DslError::Syntax {
            at,
            message: format!("unexpected {} after expression", tok.describe()),
        }),
    }
}

/// Expression tree with constants converted to the target endpoint type.
#[derive(Debug)]
enum Node<T> {
    Var(usize),
    Lambda,
    Const(Interval<T>),
    Call { op: Builtin, args: Vec<Node<T>> },
    Pow { base: Box<Node<T>>, exponent: u32 },
    Proj { index: usize, args: Vec<Node<T>> },
}

impl<T: Endpoint> Node<T> {
    fn lower(expr: &Expr) -> Self {
        let lower_all = |args: &[Expr]| args.iter().map(Node::lower).collect();
        match expr {
            Expr::Var(k) => Node::Var(*k),
            Expr::Lambda => Node::Lambda,
            Expr::Const(c) => {
                Node::Const(Interval::from_endpoints(T::from_rational(c.lo()), T::from_rational(c.hi())))
            }
            Expr::Call { op, args } => Node::Call {
                op: *op,
                args: lower_all(args),
            },
            Expr::Pow { base, exponent } => Node::Pow {
                base: Box::new(Node::lower(base)),
                exponent: *exponent,
            },
            Expr::Proj { index, args } => Node::Proj {
                index: *index,
                args: lower_all(args),
            },
        }
    }

    fn eval(&self, xs: &[Interval<T>], lambda: Option<&Interval<T>>) -> Interval<T> {
        match self {
            Node::Var(k) => xs[k - 1].clone(),
            Node::Lambda => lambda.expect("L is rejected outside scaling expressions").clone(),
            Node::Const(c) => c.clone(),
            Node::Pow { base, exponent } => base.eval(xs, lambda).power(*exponent),
            Node::Proj { index, args } if args.is_empty() => xs[index - 1].clone(),
            Node::Proj { index, args } => args[index - 1].eval(xs, lambda),
            Node::Call { op, args } => {
                let mut values = args.iter().map(|a| a.eval(xs, lambda));
                let first = values.next().expect("calls have at least one argument");
                match op {
                    Builtin::Min => values.fold(first, |a, b| a.meet(&b)),
                    Builtin::Max => values.fold(first, |a, b| a.join(&b)),
                    Builtin::Mul => values.fold(first, |a, b| a.product(&b)),
                    Builtin::Psum => values.fold(first, |a, b| a.prob_sum(&b)),
                    Builtin::Neg => first.neg_standard(),
                    Builtin::Mean => {
                        let all: Vec<_> = std::iter::once(first).chain(values).collect();
                        let sum = |pick: fn(&Interval<T>) -> &T| {
                            all.iter().fold(T::zero(), |acc, x| acc.plus(pick(x))).div_count(all.len())
                        };
                        Interval::from_endpoints(sum(Interval::lo), sum(Interval::hi))
                    }
                }
            }
        }
    }
}

/// Compiles an expression over `X1..X{arity}` into an IV-function.
pub fn compile_function<T: Endpoint>(
    expr: &Expr,
    arity: usize,
    name: impl Into<String>,
) -> Result<IvFunction<T>, DslError> {
    if arity == 0 {
        return Err(DslError::Compile("IV-function arity must be positive".into()));
    }
    if expr.uses_lambda() {
        return Err(DslError::Compile("`L` is only allowed in scaling expressions".into()));
    }
    let node = Arc::new(Node::<T>::lower(expr));
    Ok(IvFunction::new(name, arity, move |xs| node.eval(xs, None)))
}

/// Compiles an expression over `X1..X{arity}` with `L` bound to `lambda`.
pub fn compile_bound<T: Endpoint>(
    expr: &Expr,
    arity: usize,
    lambda: &Interval<T>,
    name: impl Into<String>,
) -> Result<IvFunction<T>, DslError> {
    if arity == 0 {
        return Err(DslError::Compile("IV-function arity must be positive".into()));
    }
    let node = Arc::new(Node::<T>::lower(expr));
    let lambda = lambda.clone();
    Ok(IvFunction::new(name, arity, move |xs| node.eval(xs, Some(&lambda))))
}

/// Compiles an expression over `L` and `X1` into a scaling function
/// `(L, X1) -> expr`.
pub fn compile_scaling<T: Endpoint>(expr: &Expr, name: impl Into<String>) -> Result<ScalingFunction<T>, DslError> {
    max_var(expr).filter(|&k| k > 1).map_or(Ok(()), |k| {
        Err(DslError::Compile(format!("scaling expressions range over L and X1 only, found X{k}")))
    })?;
    let node = Arc::new(Node::<T>::lower(expr));
    Ok(ScalingFunction::new(name, move |lambda, x| {
        node.eval(std::slice::from_ref(x), Some(lambda))
    }))
}

/// Compiles a forward/inverse pair of expressions over `X1` into an order
/// isomorphism. Neither property is verified here.
pub fn compile_order_iso<T: Endpoint>(
    forward: &Expr,
    inverse: &Expr,
    name: impl Into<String>,
) -> Result<OrderIso<T>, DslError> {
    let forward = compile_function::<T>(forward, 1, "forward")?;
    let inverse = compile_function::<T>(inverse, 1, "inverse")?;
    Ok(OrderIso::new(
        name,
        move |x| forward.eval(std::slice::from_ref(x)),
        move |x| inverse.eval(std::slice::from_ref(x)),
    ))
}

fn max_var(expr: &Expr) -> Option<usize> {
    match expr {
        Expr::Var(k) => Some(*k),
        Expr::Proj { index, args } if args.is_empty() => Some(*index),
        Expr::Lambda | Expr::Const(_) => None,
        Expr::Call { args, .. } | Expr::Proj { args, .. } => args.iter().filter_map(max_var).max(),
        Expr::Pow { base, .. } => max_var(base),
    }
}
