//! Both sides of each identity, built by two independent engines: series
//! algebra from [`crate::series`] and signed enumeration of distinct-part
//! partitions from [`crate::partition`].

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::partition::{classify_parts, enumerate_distinct, for_each_distinct, FranklinClass, Partition};
use crate::series::builders::{pentagonal_pairs, signed, x_pochhammer_family};
use crate::series::{lambert_series, monomial_text, pochhammer_q, pochhammer_q_family, Count, QSeries, XQSeries};

/// Per-partition weight in a signed sum `sum (-1)^n w(λ) q^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightSelector {
    Unit,
    LargestPart,
    NumParts,
    SumMN,
    XPowerMN,
}

/// Result of [`signed_partition_sum`]; bivariate only for
/// [`WeightSelector::XPowerMN`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignedSum {
    Q(QSeries),
    XQ(XQSeries),
}

impl SignedSum {
    pub fn into_q(self) -> Option<QSeries> {
        match self {
            SignedSum::Q(s) => Some(s),
            SignedSum::XQ(_) => None,
        }
    }

    pub fn into_xq(self) -> Option<XQSeries> {
        match self {
            SignedSum::XQ(s) => Some(s),
            SignedSum::Q(_) => None,
        }
    }
}

fn add_signed(acc: &mut i64, negative: bool, value: usize) {
    let value = i64::try_from(value).expect("partition statistic exceeds i64");
    let delta = if negative { -value } else { value };
    *acc = acc.checked_add(delta).expect("signed partition count overflowed i64");
}

/// `sum_{λ in D, N_λ <= order} (-1)^{n_λ} w(λ) q^{N_λ}` by enumeration.
///
/// The bivariate case uses `xorder = order + 1`, the largest `m + n` at
/// weight `order` (attained by the single part `(order)`).
pub fn signed_partition_sum(order: usize, w: WeightSelector) -> SignedSum {
    if w == WeightSelector::XPowerMN {
        let xorder = order + 1;
        let mut rows = vec![vec![0i64; xorder + 1]; order + 1];
        for_each_distinct(order, |weight, parts| {
            let mn = parts.first().copied().unwrap_or(0) + parts.len();
            add_signed(&mut rows[weight][mn], parts.len() % 2 == 1, 1);
        });
        return SignedSum::XQ(XQSeries::from_rows(&rows, order, xorder));
    }
    let mut coeffs = vec![0i64; order + 1];
    for_each_distinct(order, |weight, parts| {
        let n = parts.len();
        let m = parts.first().copied().unwrap_or(0);
        let value = match w {
            WeightSelector::Unit => 1,
            WeightSelector::LargestPart => m,
            WeightSelector::NumParts => n,
            WeightSelector::SumMN => m + n,
            WeightSelector::XPowerMN => unreachable!(),
        };
        add_signed(&mut coeffs[weight], n % 2 == 1, value);
    });
    SignedSum::Q(QSeries::from_coeffs(coeffs, order))
}

/// `sum_{n>=0} [(q)_inf - (q)_n]`.
///
/// `(q)_n` and `(q)_inf` agree through `q^n`, so every term with
/// `n >= order` vanishes and the outer sum stops at `order - 1`.
pub fn zagier_lhs(order: usize) -> QSeries {
    let family = pochhammer_q_family(order);
    let infinite = &family[order];
    family[..order]
        .iter()
        .fold(QSeries::zero(order), |acc, finite| &acc + &(infinite - finite))
}

/// `sum_{r>=1} (-1)^r [(3r-1) q^{r(3r-1)/2} + 3r q^{r(3r+1)/2}]`.
pub fn weighted_pentagonal_series(order: usize) -> QSeries {
    let mut s = QSeries::zero(order);
    for (r, lo, hi) in pentagonal_pairs(order) {
        *s.coeff_mut(lo) += signed(r, 3 * r - 1);
        if hi <= order {
            *s.coeff_mut(hi) += signed(r, 3 * r);
        }
    }
    s
}

/// `(q)_inf * sum_k q^k/(1-q^k) + sum_r (-1)^r [(3r-1) q^{r(3r-1)/2} + 3r q^{r(3r+1)/2}]`.
pub fn zagier_rhs(order: usize) -> QSeries {
    let product = &pochhammer_q(Count::Infinite, order) * &lambert_series(order);
    &product + &weighted_pentagonal_series(order)
}

/// `-(q)_inf * sum_k q^k/(1-q^k)`.
pub fn nsum_lhs(order: usize) -> QSeries {
    -(&pochhammer_q(Count::Infinite, order) * &lambert_series(order))
}

/// `1 + sum_{r>=1} (-1)^r [x^{3r-1} q^{r(3r-1)/2} + x^{3r} q^{r(3r+1)/2}]`.
pub fn x_identity_rhs(qorder: usize, xorder: usize) -> XQSeries {
    let mut s = XQSeries::one(qorder, xorder);
    for (r, lo, hi) in pentagonal_pairs(qorder) {
        if 3 * r - 1 <= xorder {
            *s.coeff_mut(3 * r - 1, lo) += signed(r, 1);
        }
        if 3 * r <= xorder && hi <= qorder {
            *s.coeff_mut(3 * r, hi) += signed(r, 1);
        }
    }
    s
}

/// The three equivalent expressions for `S(x) = sum_{r>=0} (x)_{r+1} x^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SForm {
    /// `sum_{r>=0} (x)_{r+1} x^r`
    Direct,
    /// `1 + sum_{m>=1} x^m [(xq)_m - (xq)_{m-1}]`
    Telescoped,
    /// `(1 - x) sum_{m>=0} (xq)_m x^m`
    ProductForm,
}

impl SForm {
    pub const ALL: [SForm; 3] = [SForm::Direct, SForm::Telescoped, SForm::ProductForm];
}

/// Every summand carries `x^r` (or `x^m`), so indices past `xorder`
/// contribute nothing.
pub fn s_series(qorder: usize, xorder: usize, form: SForm) -> XQSeries {
    let mut acc = XQSeries::zero(qorder, xorder);
    match form {
        SForm::Direct => {
            for (r, p) in x_pochhammer_family(0, xorder + 1, qorder, xorder).skip(1).enumerate() {
                acc = &acc + &p.shift_x(r);
            }
        }
        SForm::Telescoped => {
            acc = XQSeries::one(qorder, xorder);
            let family: Vec<XQSeries> = x_pochhammer_family(1, xorder, qorder, xorder).collect();
            for m in 1..=xorder {
                acc = &acc + &(&family[m] - &family[m - 1]).shift_x(m);
            }
        }
        SForm::ProductForm => {
            for (m, p) in x_pochhammer_family(1, xorder, qorder, xorder).enumerate() {
                acc = &acc + &p.shift_x(m);
            }
            acc.mul_one_minus_xq(0);
        }
    }
    acc
}

/// `S(x) - [1 - q x^2 - q^2 x^3 S(qx)]`, which vanishes on the whole window.
///
/// A monomial `x^a q^b` of `x^3 q^2 S(qx)` comes from `x^(a-3) q^(b-a+1)`
/// of `S`, which is inside the window whenever `x^a q^b` is.
pub fn recurrence_residual(qorder: usize, xorder: usize) -> XQSeries {
    recurrence_residual_with_power(qorder, xorder, 2)
}

/// [`recurrence_residual`] with `q^k x^3 S(qx)` in place of `q^2 x^3 S(qx)`.
pub fn recurrence_residual_with_power(qorder: usize, xorder: usize, k: usize) -> XQSeries {
    let s = s_series(qorder, xorder, SForm::Direct);
    let shifted = s.sub_x_to_qx();
    let tail = &XQSeries::monomial(1, 3, k, qorder, xorder) * &shifted;
    let rhs = &(&XQSeries::one(qorder, xorder) - &XQSeries::monomial(1, 2, 1, qorder, xorder)) - &tail;
    &s - &rhs
}

/// Differentiates the bivariate enumeration in `x` and sets `x = 1`, giving
/// `sum (-1)^n (m+n) q^N`.
pub fn diff_bridge(order: usize) -> QSeries {
    let bivariate = signed_partition_sum(order, WeightSelector::XPowerMN)
        .into_xq()
        .expect("XPowerMN is bivariate");
    debug_assert_eq!(bivariate.xorder(), order + 1);
    bivariate.diff_x().eval_x1()
}

/// Closed form for `d_e(W) - d_o(W)`.
pub fn pentagonal_prediction(weight: usize) -> i64 {
    if weight == 0 {
        return 1;
    }
    pentagonal_pairs(weight)
        .find(|&(_, lo, hi)| lo == weight || hi == weight)
        .map_or(0, |(r, _, _)| if r % 2 == 0 { 1 } else { -1 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub weight: usize,
    /// `d_e(W) - d_o(W)` by enumeration.
    pub signed_count: i64,
    pub predicted: i64,
    /// Number of exceptional partitions of this weight.
    pub exceptional: usize,
    pub witness: Option<Partition>,
}

impl CensusRow {
    pub fn agrees(&self) -> bool {
        self.signed_count == self.predicted && self.exceptional == usize::from(self.witness.is_some())
    }
}

pub fn pentagonal_census(max_weight: usize) -> Vec<CensusRow> {
    let mut rows: Vec<CensusRow> = (0..=max_weight)
        .map(|weight| CensusRow {
            weight,
            signed_count: 0,
            predicted: pentagonal_prediction(weight),
            exceptional: 0,
            witness: None,
        })
        .collect();
    for_each_distinct(max_weight, |weight, parts| {
        let row = &mut rows[weight];
        add_signed(&mut row.signed_count, parts.len() % 2 == 1, 1);
        if classify_parts(parts).is_exceptional() {
            row.exceptional += 1;
            row.witness = Some(Partition::new(parts.to_vec()).expect("enumeration yields distinct parts"));
        }
    });
    rows
}

/// One line of the involution's orbit listing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitEntry {
    /// `image = franklin(lambda)`, listed once, at whichever partition comes
    /// first in canonical order.
    Pair {
        weight: usize,
        lambda: Partition,
        image: Partition,
    },
    Fixed {
        weight: usize,
        partition: Partition,
        class: FranklinClass,
    },
}

/// Orbits of Franklin's map for weights `0..=max_weight`, ascending by
/// weight and in canonical order within a weight.
pub fn franklin_orbits(max_weight: usize) -> Vec<OrbitEntry> {
    let mut out = Vec::new();
    for weight in 0..=max_weight {
        for lambda in enumerate_distinct(weight) {
            match lambda.franklin() {
                // canonical order is lexicographically decreasing
                Ok(image) if lambda > image => out.push(OrbitEntry::Pair { weight, lambda, image }),
                Ok(_) => {}
                Err(_) => out.push(OrbitEntry::Fixed {
                    weight,
                    class: lambda.classify(),
                    partition: lambda,
                }),
            }
        }
    }
    out
}

/// Per-weight bookkeeping for the pairwise cancellation of
/// `sum (-1)^n (m+n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationRow {
    pub weight: usize,
    pub pairs: usize,
    /// Orbit pairs whose two contributions fail to cancel.
    pub uncancelled_pairs: usize,
    /// Full signed sum over `D_W`.
    pub total: i64,
    /// Contribution of the exceptional partitions alone.
    pub exceptional: i64,
}

fn mn_contribution(p: &Partition) -> i64 {
    let value = (p.largest() + p.len()) as i64;
    if p.len() % 2 == 1 {
        -value
    } else {
        value
    }
}

pub fn cancellation_report(max_weight: usize) -> Vec<CancellationRow> {
    (0..=max_weight)
        .map(|weight| {
            let mut row = CancellationRow {
                weight,
                pairs: 0,
                uncancelled_pairs: 0,
                total: 0,
                exceptional: 0,
            };
            for lambda in enumerate_distinct(weight) {
                row.total += mn_contribution(&lambda);
                match lambda.franklin() {
                    Ok(image) if lambda > image => {
                        row.pairs += 1;
                        if mn_contribution(&lambda) + mn_contribution(&image) != 0 {
                            row.uncancelled_pairs += 1;
                        }
                    }
                    Ok(_) => {}
                    Err(_) => row.exceptional += mn_contribution(&lambda),
                }
            }
            row
        })
        .collect()
}

/// Counters from a sweep over every distinct-part partition up to a weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FranklinSweep {
    pub regular: usize,
    pub exceptional: usize,
}

/// Checks every structural property of the map on all partitions of weight
/// `<= max_weight`; the error names the first violating partition.
pub fn franklin_sweep(max_weight: usize) -> Result<FranklinSweep, String> {
    let mut sweep = FranklinSweep::default();
    for weight in 0..=max_weight {
        for lambda in enumerate_distinct(weight) {
            if lambda.classify().is_exceptional() {
                sweep.exceptional += 1;
                continue;
            }
            sweep.regular += 1;
            let image = lambda.franklin().map_err(|e| e.to_string())?;
            let fail = |what: &str| Err(format!("{what}: {lambda} -> {image}"));
            if Partition::new(image.parts().to_vec()).is_err() {
                return fail("image is not a distinct-part partition");
            }
            if image.weight() != weight {
                return fail("weight changed");
            }
            if image.len().abs_diff(lambda.len()) != 1 {
                return fail("part count did not change by exactly one");
            }
            if image.largest().abs_diff(lambda.largest()) != 1 {
                return fail("largest part did not change by exactly one");
            }
            if image.largest() + image.len() != lambda.largest() + lambda.len() {
                return fail("m + n not preserved");
            }
            match image.franklin() {
                Ok(back) if back == lambda => {}
                Ok(_) => return fail("map is not an involution"),
                Err(_) => return fail("image is exceptional"),
            }
        }
    }
    Ok(sweep)
}

/// The lowest monomial, in `(q, x)` order, where two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub x_exp: usize,
    pub q_exp: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mismatch at {}: lhs {}, rhs {}",
            monomial_text(self.x_exp, self.q_exp),
            self.lhs,
            self.rhs
        )
    }
}

pub fn compare_q(lhs: &QSeries, rhs: &QSeries) -> Result<(), Mismatch> {
    match lhs.first_mismatch(rhs) {
        None => Ok(()),
        Some((q_exp, lhs, rhs)) => Err(Mismatch {
            x_exp: 0,
            q_exp,
            lhs,
            rhs,
        }),
    }
}

pub fn compare_xq(lhs: &XQSeries, rhs: &XQSeries) -> Result<(), Mismatch> {
    match lhs.first_mismatch(rhs) {
        None => Ok(()),
        Some((x_exp, q_exp, lhs, rhs)) => Err(Mismatch { x_exp, q_exp, lhs, rhs }),
    }
}

/// Fails with the first nonzero monomial.
pub fn expect_zero(s: &XQSeries) -> Result<(), Mismatch> {
    compare_xq(s, &XQSeries::zero(s.qorder(), s.xorder()))
}
