//! Exact evaluation of expressions to truncated `(x, q)` series.
//!
//! Exponents, `poch` counts and `sum` bounds are evaluated as plain integers;
//! everything else evaluates to an [`XQSeries`] at the requested orders.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ast::{Bound, Expr};
use super::DslError;
use crate::series::XQSeries;

/// Largest exponent accepted for a base whose constant term has absolute
/// value at least 2.
const MAX_GROWING_EXPONENT: u64 = 1 << 16;
/// Largest number of terms in a finite `sum`.
const MAX_FINITE_TERMS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Consecutive terms of an infinite sum whose valuation fails to
    /// increase before the sum is declared divergent. The same number of
    /// consecutive zero terms ends the sum.
    pub guard_window: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { guard_window: 8 }
    }
}

struct Evaluator {
    qorder: usize,
    xorder: usize,
    opts: EvalOptions,
    env: Vec<(String, BigInt)>,
}

pub fn eval_expr(e: &Expr, qorder: usize, xorder: usize, opts: EvalOptions) -> Result<XQSeries, DslError> {
    Evaluator {
        qorder,
        xorder,
        opts: EvalOptions {
            guard_window: opts.guard_window.max(1),
        },
        env: Vec::new(),
    }
    .series(e)
}

fn nonnegative(v: &BigInt, what: &str) -> Result<u64, DslError> {
    v.to_u64()
        .ok_or_else(|| DslError::ExponentOutOfRange(format!("{what} {v} is not a nonnegative 64-bit integer")))
}

impl Evaluator {
    fn constant(&self, c: BigInt) -> XQSeries {
        XQSeries::monomial(c, 0, 0, self.qorder, self.xorder)
    }

    fn lookup(&self, name: &str) -> Result<&BigInt, DslError> {
        self.env
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| DslError::Unbound(name.to_string()))
    }

    fn integer(&mut self, e: &Expr) -> Result<BigInt, DslError> {
        Ok(match e {
            Expr::Int(v) => v.clone(),
            Expr::Var(name) => self.lookup(name)?.clone(),
            Expr::Neg(a) => -self.integer(a)?,
            Expr::Add(a, b) => self.integer(a)? + self.integer(b)?,
            Expr::Sub(a, b) => self.integer(a)? - self.integer(b)?,
            Expr::Mul(a, b) => self.integer(a)? * self.integer(b)?,
            Expr::Div(a, b) => {
                let (n, d) = (self.integer(a)?, self.integer(b)?);
                if d.is_zero() || !(&n % &d).is_zero() {
                    return Err(DslError::InexactDivision(n, d));
                }
                n / d
            }
            Expr::Pow(a, b) => {
                let base = self.integer(a)?;
                let exp = nonnegative(&self.integer(b)?, "exponent")?;
                if base.abs() > BigInt::one() && exp > MAX_GROWING_EXPONENT {
                    return Err(DslError::ExponentOutOfRange(format!("{base}^{exp} is too large")));
                }
                num_traits::pow(base, exp as usize)
            }
            Expr::Q | Expr::X | Expr::Poch { .. } | Expr::Sum { .. } => {
                return Err(DslError::NotInteger(e.to_string()))
            }
        })
    }

    fn series(&mut self, e: &Expr) -> Result<XQSeries, DslError> {
        Ok(match e {
            Expr::Int(v) => self.constant(v.clone()),
            Expr::Q => XQSeries::monomial(1, 0, 1, self.qorder, self.xorder),
            Expr::X => XQSeries::monomial(1, 1, 0, self.qorder, self.xorder),
            Expr::Var(name) => self.constant(self.lookup(name)?.clone()),
            Expr::Neg(a) => -self.series(a)?,
            Expr::Add(a, b) => self.series(a)? + self.series(b)?,
            Expr::Sub(a, b) => self.series(a)? - self.series(b)?,
            Expr::Mul(a, b) => self.series(a)? * self.series(b)?,
            Expr::Div(a, b) => {
                let (n, d) = (self.series(a)?, self.series(b)?);
                n.checked_div(&d)
                    .map_err(|_| DslError::NonUnitDivision(d.coeff(0, 0).clone()))?
            }
            Expr::Pow(a, b) => {
                let base = self.series(a)?;
                let exp = nonnegative(&self.integer(b)?, "exponent")?;
                self.pow(base, exp)?
            }
            Expr::Poch { base, count } => {
                let base = self.series(base)?;
                let count = match count {
                    Bound::Finite(c) => Some(nonnegative(&self.integer(c)?, "poch count")?),
                    Bound::Infinite => None,
                };
                self.poch(&base, count, e)?
            }
            Expr::Sum { var, lo, hi, body } => {
                let lo = nonnegative(&self.integer(lo)?, "sum bound")?;
                let hi = match hi {
                    Bound::Finite(h) => Some(nonnegative(&self.integer(h)?, "sum bound")?),
                    Bound::Infinite => None,
                };
                self.env.push((var.clone(), BigInt::zero()));
                let result = match hi {
                    Some(hi) => self.finite_sum(lo, hi, body),
                    None => self.infinite_sum(var, lo, body),
                };
                self.env.pop();
                result?
            }
        })
    }

    fn pow(&self, base: XQSeries, exp: u64) -> Result<XQSeries, DslError> {
        let c = base.coeff(0, 0);
        if c.is_zero() && exp > (self.qorder + self.xorder) as u64 {
            // every factor raises the total degree by at least one
            return Ok(XQSeries::zero(self.qorder, self.xorder));
        }
        if c.abs() > BigInt::one() && exp > MAX_GROWING_EXPONENT {
            return Err(DslError::ExponentOutOfRange(format!(
                "power {exp} of a series with constant term {c} is too large"
            )));
        }
        let mut result = XQSeries::one(self.qorder, self.xorder);
        let mut square = base;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &square;
            }
            e >>= 1;
            if e > 0 {
                square = &square * &square;
            }
        }
        Ok(result)
    }

    /// `prod_{k=1}^{count} (1 - c x^a q^{b+k-1})` for a monomial base
    /// `c x^a q^b`; factors past the `q` order are the identity.
    fn poch(&self, base: &XQSeries, count: Option<u64>, e: &Expr) -> Result<XQSeries, DslError> {
        let mut terms = base.terms();
        let mut out = XQSeries::one(self.qorder, self.xorder);
        let Some((a, b, c)) = terms.next() else {
            return Ok(out);
        };
        if terms.next().is_some() {
            let Expr::Poch { base: expr, .. } = e else {
                unreachable!()
            };
            return Err(DslError::NonMonomialBase(expr.to_string()));
        }
        let factors = (self.qorder + 1 - b) as u64;
        let factors = count.map_or(factors, |n| n.min(factors));
        for k in 0..factors as usize {
            out.mul_one_minus_monomial(c, a, b + k);
        }
        Ok(out)
    }

    fn bind(&mut self, v: u64) {
        self.env.last_mut().expect("index pushed by caller").1 = BigInt::from(v);
    }

    fn finite_sum(&mut self, lo: u64, hi: u64, body: &Expr) -> Result<XQSeries, DslError> {
        let mut acc = XQSeries::zero(self.qorder, self.xorder);
        if hi < lo {
            return Ok(acc);
        }
        if hi - lo >= MAX_FINITE_TERMS {
            return Err(DslError::SumTooLong(hi - lo + 1));
        }
        for v in lo..=hi {
            self.bind(v);
            acc = &acc + &self.series(body)?;
        }
        Ok(acc)
    }

    /// Adds terms until `guard_window` consecutive terms vanish under
    /// truncation. Nonzero terms must eventually raise the total valuation;
    /// `guard_window` consecutive nonzero terms that do not is divergence.
    fn infinite_sum(&mut self, var: &str, lo: u64, body: &Expr) -> Result<XQSeries, DslError> {
        let window = self.opts.guard_window;
        let mut acc = XQSeries::zero(self.qorder, self.xorder);
        let mut zero_run = 0;
        let mut stalled = 0;
        let mut last_valuation: Option<usize> = None;
        for v in lo.. {
            self.bind(v);
            let term = self.series(body)?;
            let Some(valuation) = term.total_valuation() else {
                zero_run += 1;
                if zero_run >= window {
                    break;
                }
                continue;
            };
            zero_run = 0;
            if last_valuation.is_some_and(|prev| valuation <= prev) {
                stalled += 1;
                if stalled >= window {
                    return Err(DslError::Divergent {
                        var: var.to_string(),
                        window,
                        at: v,
                    });
                }
            } else {
                stalled = 0;
            }
            last_valuation = Some(valuation);
            acc = &acc + &term;
        }
        Ok(acc)
    }
}
