use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

/// Upper end of a `sum` range or the length of a `poch` product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Finite(Box<Expr>),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Q,
    X,
    /// A `sum` index.
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    /// `(base)_count = prod_{k=1}^{count} (1 - base q^{k-1})`.
    Poch {
        base: Box<Expr>,
        count: Bound,
    },
    Sum {
        var: String,
        lo: Box<Expr>,
        hi: Bound,
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn int(v: impl Into<BigInt>) -> Expr {
        Expr::Int(v.into())
    }

    /// Whether `x` occurs anywhere in the tree.
    pub fn mentions_x(&self) -> bool {
        match self {
            Expr::X => true,
            Expr::Int(_) | Expr::Q | Expr::Var(_) => false,
            Expr::Neg(e) => e.mentions_x(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.mentions_x() || b.mentions_x()
            }
            Expr::Poch { base, count } => base.mentions_x() || count.mentions_x(),
            Expr::Sum { lo, hi, body, .. } => lo.mentions_x() || hi.mentions_x() || body.mentions_x(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Pow(..) => 3,
            Expr::Neg(_) => 4,
            Expr::Int(v) if v.is_negative() => 0,
            _ => 5,
        }
    }
}

impl Bound {
    fn mentions_x(&self) -> bool {
        match self {
            Bound::Finite(e) => e.mentions_x(),
            Bound::Infinite => false,
        }
    }
}

struct Child<'a>(&'a Expr, u8);

impl fmt::Display for Child<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.precedence() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(e) => write!(f, "{e}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

/// Canonical form: minimal parentheses, spaces around `+`/`-` and after
/// commas, none around `*`, `/`, `^`. Parsing the output yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Q => f.write_str("q"),
            Expr::X => f.write_str("x"),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(e) => write!(f, "-{}", Child(e, 4)),
            Expr::Add(a, b) => write!(f, "{} + {}", Child(a, 1), Child(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", Child(a, 1), Child(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Child(a, 2), Child(b, 3)),
            Expr::Div(a, b) => write!(f, "{}/{}", Child(a, 2), Child(b, 3)),
            Expr::Pow(a, b) => write!(f, "{}^{}", Child(a, 3), Child(b, 4)),
            Expr::Poch { base, count } => write!(f, "poch({base}, {count})"),
            Expr::Sum { var, lo, hi, body } => write!(f, "sum({var}, {lo}, {hi}, {body})"),
        }
    }
}
