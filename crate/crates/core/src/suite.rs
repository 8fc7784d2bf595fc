//! The built-in identity checks behind the `suite` command.
//!
//! Series-algebra checks run at the requested orders. Checks that enumerate
//! partitions run at the requested `q` order capped per check, since the
//! number of distinct-part partitions grows exponentially in the square root
//! of the weight.

use std::thread;

use crate::dsl::{identity_scripts, run_verify, EvalOptions};
use crate::identities::{
    cancellation_report, compare_q, compare_xq, diff_bridge, expect_zero, franklin_sweep, nsum_lhs, pentagonal_census,
    recurrence_residual, recurrence_residual_with_power, s_series, signed_partition_sum, weighted_pentagonal_series,
    x_identity_rhs, zagier_lhs, zagier_rhs, SForm, WeightSelector,
};
use crate::partition::{FranklinClass, Partition};
use crate::series::{pentagonal_series, pochhammer_q, Count, QSeries};

/// Cap for the univariate enumeration checks.
pub const ENUMERATION_CAP: usize = 60;
/// Cap for the bivariate enumeration check.
pub const BIVARIATE_ENUMERATION_CAP: usize = 40;
/// Cap for the per-partition Franklin checks.
pub const FRANKLIN_CAP: usize = 45;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = Box<dyn Fn() -> Result<String, String> + Send + Sync>;

fn q_sum(order: usize, w: WeightSelector) -> QSeries {
    signed_partition_sum(order, w).into_q().expect("scalar weight")
}

fn eq_q(lhs: &QSeries, rhs: &QSeries) -> Result<String, String> {
    compare_q(lhs, rhs)
        .map(|()| format!("equal to order {}", lhs.order().min(rhs.order())))
        .map_err(|m| m.to_string())
}

/// The staircase an exceptional class stands for.
pub fn staircase(class: FranklinClass) -> Option<Partition> {
    let parts = match class {
        FranklinClass::ExceptionalEmpty => vec![],
        FranklinClass::ExceptionalFirst(r) => (r..=2 * r - 1).rev().collect(),
        FranklinClass::ExceptionalSecond(r) => (r + 1..=2 * r).rev().collect(),
        FranklinClass::Regular => return None,
    };
    Partition::new(parts).ok()
}

fn checks(qorder: usize, xorder: usize, opts: EvalOptions) -> Vec<(String, CheckFn)> {
    let n = qorder;
    let e = qorder.min(ENUMERATION_CAP);
    let e7 = qorder.min(BIVARIATE_ENUMERATION_CAP);
    let f = qorder.min(FRANKLIN_CAP);
    let mut list: Vec<(&'static str, CheckFn)> = vec![
        (
            "pentagonal theorem",
            Box::new(move || eq_q(&pochhammer_q(Count::Infinite, n), &pentagonal_series(n))),
        ),
        (
            "zagier identity",
            Box::new(move || eq_q(&zagier_lhs(n), &zagier_rhs(n))),
        ),
        (
            "unit-weight enumeration",
            Box::new(move || eq_q(&q_sum(e, WeightSelector::Unit), &pochhammer_q(Count::Infinite, e))),
        ),
        (
            "(m+n)-weight enumeration",
            Box::new(move || eq_q(&q_sum(e, WeightSelector::SumMN), &weighted_pentagonal_series(e))),
        ),
        (
            "largest-part enumeration",
            Box::new(move || eq_q(&q_sum(e, WeightSelector::LargestPart), &zagier_lhs(e))),
        ),
        (
            "part-count enumeration",
            Box::new(move || eq_q(&q_sum(e, WeightSelector::NumParts), &nsum_lhs(e))),
        ),
        (
            "m+n = largest part + part count",
            Box::new(move || {
                let parts = &q_sum(e, WeightSelector::LargestPart) + &q_sum(e, WeightSelector::NumParts);
                eq_q(&q_sum(e, WeightSelector::SumMN), &parts)
            }),
        ),
        (
            "x^(m+n) enumeration",
            Box::new(move || {
                let lhs = signed_partition_sum(e7, WeightSelector::XPowerMN)
                    .into_xq()
                    .expect("bivariate");
                compare_xq(&lhs, &x_identity_rhs(e7, e7 + 1))
                    .map(|()| format!("equal to q order {e7}, x order {}", e7 + 1))
                    .map_err(|m| m.to_string())
            }),
        ),
    ];
    for form in SForm::ALL {
        let name = match form {
            SForm::Direct => "S(x) direct form",
            SForm::Telescoped => "S(x) telescoped form",
            SForm::ProductForm => "S(x) product form",
        };
        list.push((
            name,
            Box::new(move || {
                compare_xq(&s_series(qorder, xorder, form), &x_identity_rhs(qorder, xorder))
                    .map(|()| format!("equal to q order {qorder}, x order {xorder}"))
                    .map_err(|m| m.to_string())
            }),
        ));
    }
    list.push((
        "recurrence residual",
        Box::new(move || {
            expect_zero(&recurrence_residual(qorder, xorder))
                .map(|()| "zero".to_string())
                .map_err(|m| m.to_string())?;
            if qorder >= 3 && xorder >= 3 {
                for k in [1, 3] {
                    if recurrence_residual_with_power(qorder, xorder, k).is_zero() {
                        return Err(format!("residual also vanishes with q^{k}"));
                    }
                }
                Ok("zero with q^2, nonzero with q^1 and q^3".to_string())
            } else {
                Ok("zero".to_string())
            }
        }),
    ));
    list.push((
        "differentiation bridge",
        Box::new(move || {
            let bridged = diff_bridge(e);
            eq_q(&bridged, &q_sum(e, WeightSelector::SumMN))?;
            eq_q(&bridged, &weighted_pentagonal_series(e))
        }),
    ));
    list.push((
        "franklin involution",
        Box::new(move || {
            franklin_sweep(f).map(|s| format!("{} regular, {} exceptional up to weight {f}", s.regular, s.exceptional))
        }),
    ));
    list.push((
        "pentagonal census",
        Box::new(move || {
            for row in pentagonal_census(f) {
                if !row.agrees() {
                    return Err(format!(
                        "weight {}: signed count {}, predicted {}, {} exceptional",
                        row.weight, row.signed_count, row.predicted, row.exceptional
                    ));
                }
                if let Some(w) = &row.witness {
                    if staircase(w.classify()).as_ref() != Some(w) {
                        return Err(format!("weight {}: witness {w} is not a staircase", row.weight));
                    }
                }
            }
            Ok(format!("weights 0..={f}"))
        }),
    ));
    list.push((
        "pairwise cancellation",
        Box::new(move || {
            for row in cancellation_report(f) {
                if row.uncancelled_pairs > 0 || row.total != row.exceptional {
                    return Err(format!(
                        "weight {}: {} uncancelled pairs, total {}, exceptional {}",
                        row.weight, row.uncancelled_pairs, row.total, row.exceptional
                    ));
                }
            }
            Ok(format!("weights 0..={f}"))
        }),
    ));
    let mut scripts: Vec<(String, CheckFn)> = Vec::new();
    for script in identity_scripts() {
        scripts.push((
            format!("dsl script {}", script.name),
            Box::new(move || match run_verify(script.lhs, script.rhs, qorder, xorder, opts) {
                Ok(r) if r.is_equal() => Ok("script verifies".to_string()),
                Ok(r) => Err(r.first_mismatch.map(|m| m.to_string()).unwrap_or_default()),
                Err(err) => Err(err.to_string()),
            }),
        ));
    }
    list.into_iter()
        .map(|(name, f)| (name.to_string(), f))
        .chain(scripts)
        .collect()
}

/// Runs every check, concurrently, returning outcomes in a fixed order.
pub fn run_suite(qorder: usize, xorder: usize, opts: EvalOptions) -> Vec<CheckOutcome> {
    let list = checks(qorder, xorder, opts);
    thread::scope(|scope| {
        let handles: Vec<_> = list
            .iter()
            .map(|(name, check)| (name.clone(), scope.spawn(check)))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| {
                let result = h.join().unwrap_or_else(|_| Err("check panicked".to_string()));
                CheckOutcome {
                    name,
                    passed: result.is_ok(),
                    detail: result.unwrap_or_else(|e| e),
                }
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircases() {
        assert_eq!(
            staircase(FranklinClass::ExceptionalFirst(3)).unwrap().parts(),
            &[5, 4, 3]
        );
        assert_eq!(staircase(FranklinClass::ExceptionalSecond(2)).unwrap().parts(), &[4, 3]);
        assert_eq!(staircase(FranklinClass::ExceptionalEmpty), Some(Partition::empty()));
        assert_eq!(staircase(FranklinClass::Regular), None);
    }

    #[test]
    fn small_suite_passes() {
        let outcomes = run_suite(12, 6, EvalOptions::default());
        for o in &outcomes {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
        assert_eq!(outcomes.len(), 19);
    }

    #[test]
    fn tiny_orders_pass() {
        for (q, x) in [(0, 0), (1, 0), (2, 1), (3, 3)] {
            for o in run_suite(q, x, EvalOptions::default()) {
                assert!(o.passed, "({q}, {x}) {}: {}", o.name, o.detail);
            }
        }
    }
}
