//! Truncated formal power series with exact integer coefficients.
//!
//! [`QSeries`] is univariate in `q`; [`XQSeries`] is bivariate in `(x, q)` with
//! independent truncation orders in each variable. Every binary operation
//! yields a result whose order is the minimum of its operands' orders, so a
//! value that is "exact to order N" stays exact through arbitrary arithmetic.

mod bivariate;
pub(crate) mod builders;

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use bivariate::XQSeries;
pub use builders::{lambert_series, pentagonal_series, pochhammer_q, pochhammer_q_family, xq_pochhammer, Count};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("divisor has constant term {0}, which is not a unit (expected 1 or -1)")]
    NonUnitConstant(BigInt),
}

/// Truncated power series `c0 + c1 q + ... + cN q^N` with `N = order()`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(1, 0, order)
    }

    /// `c q^exp`, or the zero series when `exp` lies beyond `order`.
    pub fn monomial(c: impl Into<BigInt>, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c.into();
        }
        s
    }

    /// Builds a series of the given order from a coefficient list, padding
    /// with zeros or dropping the tail as needed.
    pub fn from_coeffs<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut v: Vec<BigInt> = coeffs.into_iter().take(order + 1).map(Into::into).collect();
        v.resize(order + 1, BigInt::zero());
        QSeries { coeffs: v }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff_mut(&mut self, exp: usize) -> &mut BigInt {
        &mut self.coeffs[exp]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Restriction to a lower order.
    ///
    /// Panics if `order` exceeds the current order: the missing coefficients
    /// are unknown, not zero.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot extend a series of order {} to order {order}",
            self.order()
        );
        QSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// In-place multiplication by `(1 - q^k)`.
    pub fn mul_one_minus_q_pow(&mut self, k: usize) {
        if k == 0 {
            self.coeffs.iter_mut().for_each(|c| c.set_zero());
            return;
        }
        for i in (k..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] -= &lo[i - k];
        }
    }

    /// Exact quotient `self / divisor`; the divisor's constant term must be ±1.
    pub fn checked_div(&self, divisor: &QSeries) -> Result<QSeries, SeriesError> {
        let order = self.order().min(divisor.order());
        let unit = &divisor.coeffs[0];
        if !unit.abs().is_one() {
            return Err(SeriesError::NonUnitConstant(unit.clone()));
        }
        let support: Vec<usize> = (1..=order).filter(|&k| !divisor.coeffs[k].is_zero()).collect();
        let mut out = Self::zero(order);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for &k in support.iter().take_while(|&&k| k <= n) {
                acc -= &divisor.coeffs[k] * &out.coeffs[n - k];
            }
            out.coeffs[n] = acc * unit;
        }
        Ok(out)
    }

    /// Lowest `(exponent, lhs, rhs)` where the two series differ on their
    /// common window.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<(usize, BigInt, BigInt)> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| (i, a.clone(), b.clone()))
    }
}

impl Index<usize> for QSeries {
    type Output = BigInt;

    fn index(&self, exp: usize) -> &BigInt {
        &self.coeffs[exp]
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({} + O(q^{}))", self, self.order() + 1)
    }
}

/// Renders `c0 + c1*q + c2*q^2 + ...`, skipping zero terms.
impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c, 0, k));
        write_terms(f, terms)
    }
}

/// Shared text renderer for both series types. Terms arrive as
/// `(coefficient, x-exponent, q-exponent)` already in output order.
pub(crate) fn write_terms<'a, W, I>(out: &mut W, terms: I) -> fmt::Result
where
    W: fmt::Write,
    I: Iterator<Item = (&'a BigInt, usize, usize)>,
{
    let mut first = true;
    for (c, a, b) in terms {
        let mag = c.abs();
        match (first, c.is_negative()) {
            (true, true) => out.write_str("-")?,
            (true, false) => {}
            (false, true) => out.write_str(" - ")?,
            (false, false) => out.write_str(" + ")?,
        }
        first = false;
        write!(out, "{mag}")?;
        if a > 0 || b > 0 {
            write!(out, "*{}", monomial_text(a, b))?;
        }
    }
    if first {
        out.write_str("0")?;
    }
    Ok(())
}

/// `x^a*q^b` with unit exponents and empty factors elided; `1` for `(0, 0)`.
pub fn monomial_text(a: usize, b: usize) -> String {
    let factor = |v: &str, e: usize| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    let parts: Vec<String> = [factor("x", a), factor("q", b)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let mut out = QSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Neg for &QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $($tr:ident::$method:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;

            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(QSeries, Add::add, Sub::sub, Mul::mul);
pub(crate) use forward_owned_binop;

impl Neg for QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        -&self
    }
}
