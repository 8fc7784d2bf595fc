//! Named series used throughout the identities.
//!
//! "Infinite" products and sums stop by valuation: a factor `1 - c q^k` with
//! `k` past the truncation order is the identity, and a summand whose lowest
//! exponent is past the order is zero.

use std::fmt;

use num_bigint::BigInt;

use super::{QSeries, XQSeries};

/// Length of a Pochhammer product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("inf"),
        }
    }
}

/// `(q)_n = (1 - q)(1 - q^2)...(1 - q^n)` truncated to `order`.
pub fn pochhammer_q(n: Count, order: usize) -> QSeries {
    let last = match n {
        Count::Finite(n) => n.min(order),
        Count::Infinite => order,
    };
    let mut s = QSeries::one(order);
    for k in 1..=last {
        s.mul_one_minus_q_pow(k);
    }
    s
}

/// `[(q)_0, (q)_1, ..., (q)_order]`, each obtained from its predecessor by a
/// single factor. The last entry equals `(q)_inf` to this order.
pub fn pochhammer_q_family(order: usize) -> Vec<QSeries> {
    let mut family = Vec::with_capacity(order + 1);
    let mut current = QSeries::one(order);
    family.push(current.clone());
    for k in 1..=order {
        current.mul_one_minus_q_pow(k);
        family.push(current.clone());
    }
    family
}

/// `sum_{k>=1} q^k / (1 - q^k)`, expanded as `sum_k sum_{j>=1} q^{jk}`.
pub fn lambert_series(order: usize) -> QSeries {
    let mut s = QSeries::zero(order);
    for k in 1..=order {
        for multiple in (k..=order).step_by(k) {
            *s.coeff_mut(multiple) += 1;
        }
    }
    s
}

/// Generalized pentagonal numbers `(r, r(3r-1)/2, r(3r+1)/2)` for `r >= 1`,
/// while the smaller one does not exceed `limit`.
pub(crate) fn pentagonal_pairs(limit: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (1..)
        .map(|r: usize| (r, r * (3 * r - 1) / 2, r * (3 * r + 1) / 2))
        .take_while(move |&(_, lo, _)| lo <= limit)
}

/// `1 + sum_{r>=1} (-1)^r (q^{r(3r-1)/2} + q^{r(3r+1)/2})`.
pub fn pentagonal_series(order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for (r, lo, hi) in pentagonal_pairs(order) {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        *s.coeff_mut(lo) += sign;
        if hi <= order {
            *s.coeff_mut(hi) += sign;
        }
    }
    s
}

/// `prod_{j=shift}^{shift+count-1} (1 - x q^j)`.
///
/// `(x)_{r+1}` is `shift = 0, count = r + 1`; `(xq)_m` is `shift = 1, count = m`.
pub fn xq_pochhammer(shift: usize, count: usize, qorder: usize, xorder: usize) -> XQSeries {
    let mut s = XQSeries::one(qorder, xorder);
    for j in shift..shift + count {
        if j > qorder {
            break;
        }
        s.mul_one_minus_xq(j);
    }
    s
}

/// `(x)_{r+1}` for `r = 0..=last`, built incrementally.
pub(crate) fn x_pochhammer_family(
    shift: usize,
    last: usize,
    qorder: usize,
    xorder: usize,
) -> impl Iterator<Item = XQSeries> {
    let mut current = XQSeries::one(qorder, xorder);
    let mut j = shift;
    std::iter::once(current.clone()).chain((0..last).map(move |_| {
        if j <= qorder {
            current.mul_one_minus_xq(j);
        }
        j += 1;
        current.clone()
    }))
}

pub(crate) fn signed(r: usize, value: usize) -> BigInt {
    let v = BigInt::from(value);
    if r.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(c: &[i64], order: usize) -> QSeries {
        QSeries::from_coeffs(c.iter().copied(), order)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_q(Count::Finite(0), 5), QSeries::one(5));
        assert_eq!(pochhammer_q(Count::Finite(2), 3), qs(&[1, -1, -1, 1], 3));
        assert_eq!(pochhammer_q(Count::Infinite, 7), qs(&[1, -1, -1, 0, 0, 1, 0, 1], 7));
    }

    #[test]
    fn family_matches_direct_products() {
        let family = pochhammer_q_family(12);
        for (n, p) in family.iter().enumerate() {
            assert_eq!(*p, pochhammer_q(Count::Finite(n), 12));
        }
        assert_eq!(family[12], pochhammer_q(Count::Infinite, 12));
    }

    #[test]
    fn lambert_examples() {
        assert_eq!(lambert_series(4), qs(&[0, 1, 2, 2, 3], 4));
        assert!(lambert_series(0).is_zero());
        assert_eq!(lambert_series(12)[12], BigInt::from(6));
    }

    #[test]
    fn pentagonal_examples() {
        assert_eq!(pentagonal_series(7), qs(&[1, -1, -1, 0, 0, 1, 0, 1], 7));
        assert_eq!(pentagonal_series(0), QSeries::one(0));
        assert_eq!(pentagonal_series(12)[12], BigInt::from(-1));
        // r = 1 and r = 2 only; exponent 12 is r = 3
        assert_eq!(pentagonal_series(11)[7], BigInt::from(1));
    }

    #[test]
    fn xq_pochhammer_examples() {
        let one_minus_x = &XQSeries::one(3, 2) - &XQSeries::monomial(1, 1, 0, 3, 2);
        assert_eq!(xq_pochhammer(0, 1, 3, 2), one_minus_x);
        let expected = XQSeries::from_rows(&[vec![1], vec![0, -1], vec![0, -1], vec![0, 0, 1]], 3, 2);
        assert_eq!(xq_pochhammer(1, 2, 3, 2), expected);
        assert_eq!(xq_pochhammer(0, 0, 4, 4), XQSeries::one(4, 4));
    }

    #[test]
    fn x_family_matches_direct() {
        let fam: Vec<_> = x_pochhammer_family(1, 6, 8, 5).collect();
        assert_eq!(fam.len(), 7);
        for (m, p) in fam.iter().enumerate() {
            assert_eq!(*p, xq_pochhammer(1, m, 8, 5));
        }
    }
}
