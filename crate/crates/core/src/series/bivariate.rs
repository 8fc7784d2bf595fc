use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{forward_owned_binop, write_terms, QSeries, SeriesError};

/// Truncated series in `x` and `q`: the coefficient of `x^a q^b` is stored for
/// `a <= xorder`, `b <= qorder`. Rows are indexed by the `q` exponent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XQSeries {
    rows: Vec<Vec<BigInt>>,
}

impl XQSeries {
    pub fn zero(qorder: usize, xorder: usize) -> Self {
        XQSeries {
            rows: vec![vec![BigInt::zero(); xorder + 1]; qorder + 1],
        }
    }

    pub fn one(qorder: usize, xorder: usize) -> Self {
        Self::monomial(1, 0, 0, qorder, xorder)
    }

    /// `c x^xexp q^qexp`, dropped to zero when outside the window.
    pub fn monomial(c: impl Into<BigInt>, xexp: usize, qexp: usize, qorder: usize, xorder: usize) -> Self {
        let mut s = Self::zero(qorder, xorder);
        if xexp <= xorder && qexp <= qorder {
            s.rows[qexp][xexp] = c.into();
        }
        s
    }

    /// Embeds a univariate series as the `x^0` column.
    pub fn from_q(s: &QSeries, xorder: usize) -> Self {
        let mut out = Self::zero(s.order(), xorder);
        for (row, c) in out.rows.iter_mut().zip(s.coeffs()) {
            row[0] = c.clone();
        }
        out
    }

    /// Builds from integer rows (one per `q` exponent), padding or dropping
    /// entries to fit the window.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>], qorder: usize, xorder: usize) -> Self {
        let mut out = Self::zero(qorder, xorder);
        for (dst, src) in out.rows.iter_mut().zip(rows) {
            for (d, s) in dst.iter_mut().zip(src) {
                *d = s.clone().into();
            }
        }
        out
    }

    pub fn qorder(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn xorder(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn coeff(&self, xexp: usize, qexp: usize) -> &BigInt {
        &self.rows[qexp][xexp]
    }

    pub fn coeff_mut(&mut self, xexp: usize, qexp: usize) -> &mut BigInt {
        &mut self.rows[qexp][xexp]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    /// Nonzero terms as `(x-exponent, q-exponent, coefficient)`, ordered by
    /// `q` exponent then `x` exponent.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.rows.iter().enumerate().flat_map(|(b, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(a, c)| (a, b, c))
        })
    }

    /// Smallest total degree `a + b` among nonzero terms.
    pub fn total_valuation(&self) -> Option<usize> {
        self.terms().map(|(a, b, _)| a + b).min()
    }

    /// Largest `x` exponent with a nonzero coefficient.
    pub fn x_degree(&self) -> Option<usize> {
        self.terms().map(|(a, _, _)| a).max()
    }

    pub fn truncate(&self, qorder: usize, xorder: usize) -> Self {
        assert!(
            qorder <= self.qorder() && xorder <= self.xorder(),
            "cannot extend a series of order (q {}, x {}) to (q {qorder}, x {xorder})",
            self.qorder(),
            self.xorder()
        );
        XQSeries {
            rows: self.rows[..=qorder].iter().map(|r| r[..=xorder].to_vec()).collect(),
        }
    }

    /// The `x^0` column as a univariate series.
    pub fn x0_column(&self) -> QSeries {
        QSeries::from_coeffs(self.rows.iter().map(|r| r[0].clone()), self.qorder())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        XQSeries {
            rows: self.rows.iter().map(|r| r.iter().map(|a| a * c).collect()).collect(),
        }
    }

    /// In-place multiplication by `(1 - x q^shift)`.
    pub fn mul_one_minus_xq(&mut self, shift: usize) {
        self.mul_one_minus_monomial(&BigInt::one(), 1, shift);
    }

    /// In-place multiplication by `(1 - c x^xexp q^qexp)`.
    pub fn mul_one_minus_monomial(&mut self, c: &BigInt, xexp: usize, qexp: usize) {
        let (qorder, xorder) = (self.qorder(), self.xorder());
        if c.is_zero() || xexp > xorder || qexp > qorder {
            return;
        }
        // descending indices read each source entry before it is overwritten
        for b in (qexp..=qorder).rev() {
            for a in (xexp..=xorder).rev() {
                let src = &self.rows[b - qexp][a - xexp];
                if !src.is_zero() {
                    let delta = c * src;
                    self.rows[b][a] -= delta;
                }
            }
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift_x(&self, k: usize) -> Self {
        let xorder = self.xorder();
        let mut out = Self::zero(self.qorder(), xorder);
        if k <= xorder {
            for (dst, src) in out.rows.iter_mut().zip(&self.rows) {
                dst[k..].clone_from_slice(&src[..=xorder - k]);
            }
        }
        out
    }

    /// Formal partial derivative in `x`. The result's `x` order drops by
    /// one; a series with `xorder == 0` differentiates to the zero series of
    /// `xorder` 0.
    pub fn diff_x(&self) -> Self {
        if self.xorder() == 0 {
            return Self::zero(self.qorder(), 0);
        }
        XQSeries {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().enumerate().skip(1).map(|(a, c)| c * BigInt::from(a)).collect())
                .collect(),
        }
    }

    /// Specialization `x = 1` by row sums.
    ///
    /// Exact only when the represented object has no `x` degree above
    /// `xorder` at any `q` exponent up to `qorder`; that is the caller's
    /// obligation.
    pub fn eval_x1(&self) -> QSeries {
        QSeries::from_coeffs(self.rows.iter().map(|r| r.iter().sum::<BigInt>()), self.qorder())
    }

    /// Substitution `x -> q x`: `x^a q^b` becomes `x^a q^(a+b)`, dropping
    /// terms that leave the window.
    pub fn sub_x_to_qx(&self) -> Self {
        let (qorder, xorder) = (self.qorder(), self.xorder());
        let mut out = Self::zero(qorder, xorder);
        for (a, b, c) in self.terms() {
            if a + b <= qorder {
                out.rows[a + b][a] = c.clone();
            }
        }
        out
    }

    /// Exact quotient; the divisor's `x^0 q^0` coefficient must be ±1.
    pub fn checked_div(&self, divisor: &XQSeries) -> Result<XQSeries, SeriesError> {
        let qorder = self.qorder().min(divisor.qorder());
        let xorder = self.xorder().min(divisor.xorder());
        let unit = divisor.coeff(0, 0);
        if !unit.abs().is_one() {
            return Err(SeriesError::NonUnitConstant(unit.clone()));
        }
        let support: Vec<(usize, usize, &BigInt)> = divisor
            .terms()
            .filter(|&(a, b, _)| (a, b) != (0, 0) && a <= xorder && b <= qorder)
            .collect();
        let mut out = Self::zero(qorder, xorder);
        for b in 0..=qorder {
            for a in 0..=xorder {
                let mut acc = self.rows[b][a].clone();
                for &(da, db, dc) in &support {
                    if da <= a && db <= b {
                        let prev = &out.rows[b - db][a - da];
                        if !prev.is_zero() {
                            acc -= dc * prev;
                        }
                    }
                }
                out.rows[b][a] = acc * unit;
            }
        }
        Ok(out)
    }

    /// Lowest `(x-exponent, q-exponent)` in `(q, x)` order where the series
    /// differ on their common window, with both coefficients.
    pub fn first_mismatch(&self, other: &XQSeries) -> Option<(usize, usize, BigInt, BigInt)> {
        let qorder = self.qorder().min(other.qorder());
        let xorder = self.xorder().min(other.xorder());
        (0..=qorder)
            .flat_map(|b| (0..=xorder).map(move |a| (a, b)))
            .find(|&(a, b)| self.coeff(a, b) != other.coeff(a, b))
            .map(|(a, b)| (a, b, self.coeff(a, b).clone(), other.coeff(a, b).clone()))
    }
}

impl fmt::Debug for XQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XQSeries[q {}, x {}]({})", self.qorder(), self.xorder(), self)
    }
}

/// Renders terms `c*x^a*q^b` ordered by `(b, a)`.
impl fmt::Display for XQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(a, b, c)| (c, a, b)))
    }
}

fn zip_rows(lhs: &XQSeries, rhs: &XQSeries, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> XQSeries {
    XQSeries {
        rows: lhs
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| op(a, b)).collect())
            .collect(),
    }
}

impl Add for &XQSeries {
    type Output = XQSeries;

    fn add(self, rhs: &XQSeries) -> XQSeries {
        zip_rows(self, rhs, |a, b| a + b)
    }
}

impl Sub for &XQSeries {
    type Output = XQSeries;

    fn sub(self, rhs: &XQSeries) -> XQSeries {
        zip_rows(self, rhs, |a, b| a - b)
    }
}

impl Mul for &XQSeries {
    type Output = XQSeries;

    fn mul(self, rhs: &XQSeries) -> XQSeries {
        let qorder = self.qorder().min(rhs.qorder());
        let xorder = self.xorder().min(rhs.xorder());
        let mut out = XQSeries::zero(qorder, xorder);
        let rhs_terms: Vec<(usize, usize, &BigInt)> =
            rhs.terms().filter(|&(a, b, _)| a <= xorder && b <= qorder).collect();
        for (a1, b1, c1) in self.terms() {
            if a1 > xorder || b1 > qorder {
                continue;
            }
            for &(a2, b2, c2) in &rhs_terms {
                if a1 + a2 <= xorder && b1 + b2 <= qorder {
                    out.rows[b1 + b2][a1 + a2] += c1 * c2;
                }
            }
        }
        out
    }
}

impl Neg for &XQSeries {
    type Output = XQSeries;

    fn neg(self) -> XQSeries {
        XQSeries {
            rows: self.rows.iter().map(|r| r.iter().map(|c| -c).collect()).collect(),
        }
    }
}

forward_owned_binop!(XQSeries, Add::add, Sub::sub, Mul::mul);

impl Neg for XQSeries {
    type Output = XQSeries;

    fn neg(self) -> XQSeries {
        -&self
    }
}
