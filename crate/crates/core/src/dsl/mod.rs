//! A small expression language for truncated q-series.
//!
//! ```text
//! sum(n, 0, inf, poch(q, inf) - poch(q, n))
//! poch(q, inf)*sum(k, 1, inf, q^k/(1 - q^k))
//! ```
//!
//! `poch(a, n)` is `(a)_n = prod_{k=1}^n (1 - a q^{k-1})` for a monomial `a`,
//! so `poch(q, n)` is `(q)_n` and `poch(x, n)` is `(x)_n`. Division requires
//! a divisor with constant term ±1, which keeps every coefficient an integer.

mod ast;
mod eval;
mod parser;

use num_bigint::BigInt;
use thiserror::Error;

pub use ast::{Bound, Expr};
pub use eval::{eval_expr, EvalOptions};
pub use parser::parse;

use crate::identities::{compare_xq, Mismatch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at line {line}, column {column}: {message}, found {found}")]
    Syntax {
        line: usize,
        column: usize,
        found: String,
        message: String,
    },
    #[error("division by a series with constant term {0}; only 1 and -1 are invertible")]
    NonUnitDivision(BigInt),
    #[error("infinite sum over `{var}` diverges: valuation did not increase for {window} consecutive terms (stopped at {var} = {at})")]
    Divergent { var: String, window: usize, at: u64 },
    #[error("exponent out of range: {0}")]
    ExponentOutOfRange(String),
    #[error("`{0}` is not an integer expression")]
    NotInteger(String),
    #[error("integer division {0}/{1} is not exact")]
    InexactDivision(BigInt, BigInt),
    #[error("poch base `{0}` is not a monomial")]
    NonMonomialBase(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("finite sum has {0} terms, too many to evaluate")]
    SumTooLong(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyStatus {
    Equal,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub status: VerifyStatus,
    pub first_mismatch: Option<Mismatch>,
    pub qorder: usize,
    pub xorder: usize,
}

impl VerifyReport {
    pub fn is_equal(&self) -> bool {
        self.status == VerifyStatus::Equal
    }
}

/// Evaluates both sides at the same orders and compares them
/// coefficientwise, reporting the lowest differing monomial in `(q, x)`
/// order.
pub fn run_verify(
    lhs: &str,
    rhs: &str,
    qorder: usize,
    xorder: usize,
    opts: EvalOptions,
) -> Result<VerifyReport, DslError> {
    let lhs = eval_expr(&parse(lhs)?, qorder, xorder, opts)?;
    let rhs = eval_expr(&parse(rhs)?, qorder, xorder, opts)?;
    let first_mismatch = compare_xq(&lhs, &rhs).err();
    Ok(VerifyReport {
        status: if first_mismatch.is_none() {
            VerifyStatus::Equal
        } else {
            VerifyStatus::Mismatch
        },
        first_mismatch,
        qorder,
        xorder,
    })
}

/// An identity written in the expression language, one side per line.
#[derive(Debug, Clone, Copy)]
pub struct IdentityScript {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

fn split_script(name: &'static str, text: &'static str) -> IdentityScript {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let (Some(lhs), Some(rhs), None) = (lines.next(), lines.next(), lines.next()) else {
        panic!("identity script {name} must have exactly two expression lines");
    };
    IdentityScript { name, lhs, rhs }
}

/// The shipped scripts under `scripts/`.
pub fn identity_scripts() -> Vec<IdentityScript> {
    vec![
        split_script("pentagonal", include_str!("../../scripts/pentagonal.qs")),
        split_script("zagier", include_str!("../../scripts/zagier.qs")),
        split_script("s-series", include_str!("../../scripts/s_series.qs")),
    ]
}
