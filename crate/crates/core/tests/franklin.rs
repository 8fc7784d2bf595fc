use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use qfranklin::identities::{pentagonal_census, pentagonal_prediction, signed_partition_sum, WeightSelector};
use qfranklin::partition::{enumerate_distinct, for_each_distinct, FranklinClass, Partition, PartitionError};

/// Franklin's map on a Ferrers diagram, written from scratch: either the
/// bottom row moves onto the ends of the top rows, or the diagonal run at the
/// right edge becomes a new bottom row.
fn franklin_oracle(parts: &[usize]) -> Option<Vec<usize>> {
    if parts.is_empty() {
        return None;
    }
    let n = parts.len();
    let smallest = parts[n - 1];
    let mut slope = 1;
    while slope < n && parts[slope - 1] == parts[slope] + 1 {
        slope += 1;
    }
    let diagonal_hits_bottom = slope == n;
    if smallest <= slope && !(diagonal_hits_bottom && smallest == slope) {
        let mut out = parts[..n - 1].to_vec();
        for part in out.iter_mut().take(smallest) {
            *part += 1;
        }
        Some(out)
    } else if smallest > slope && !(diagonal_hits_bottom && smallest == slope + 1) {
        let mut out = parts.to_vec();
        for part in out.iter_mut().take(slope) {
            *part -= 1;
        }
        out.push(slope);
        Some(out)
    } else {
        None
    }
}

/// Number of partitions of each weight into distinct parts, by the classic
/// 0/1 knapsack recurrence.
fn distinct_partition_counts(max: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max + 1];
    counts[0] = 1;
    for part in 1..=max {
        for w in (part..=max).rev() {
            counts[w] += counts[w - part];
        }
    }
    counts
}

fn sorted_copy(parts: &[usize]) -> Vec<usize> {
    let mut v = parts.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn distinct_parts() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::btree_set(1usize..=24, 0..9).prop_map(|s| s.into_iter().rev().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn map_agrees_with_diagram_oracle(parts in distinct_parts()) {
        let lambda = Partition::new(parts.clone()).unwrap();
        let ours = lambda.franklin().ok().map(|p| p.parts().to_vec());
        prop_assert_eq!(ours, franklin_oracle(&parts));
    }

    #[test]
    fn regular_partitions_pair_off(parts in distinct_parts()) {
        let lambda = Partition::new(parts).unwrap();
        prop_assume!(!lambda.classify().is_exceptional());
        let image = lambda.franklin().unwrap();
        prop_assert_eq!(image.weight(), lambda.weight());
        prop_assert_eq!(image.len() % 2, 1 - lambda.len() % 2);
        prop_assert_eq!(image.largest() + image.len(), lambda.largest() + lambda.len());
        prop_assert_eq!(image.largest().abs_diff(lambda.largest()), 1);
        prop_assert_eq!(image.franklin().unwrap(), lambda);
    }

    #[test]
    fn constructor_accepts_only_strictly_decreasing(parts in prop::collection::vec(0usize..10, 0..6)) {
        let distinct = parts.iter().collect::<BTreeSet<_>>().len() == parts.len();
        let sorted = sorted_copy(&parts);
        let valid = distinct && !parts.contains(&0);
        prop_assert_eq!(Partition::new(sorted.clone()).is_ok(), valid);
        if parts != sorted {
            prop_assert!(Partition::new(parts).is_err());
        }
    }
}

#[test]
fn enumeration_matches_knapsack_counts() {
    let counts = distinct_partition_counts(60);
    for (weight, &count) in counts.iter().enumerate() {
        let all = enumerate_distinct(weight);
        assert_eq!(all.len() as u64, count, "weight {weight}");
        assert!(
            all.windows(2).all(|w| w[0] > w[1]),
            "weight {weight} not in canonical order"
        );
        assert!(all.iter().all(|p| p.weight() == weight));
    }
    let mut seen = vec![0u64; 61];
    for_each_distinct(60, |w, _| seen[w] += 1);
    assert_eq!(seen, counts);
}

#[test]
fn every_partition_up_to_45_agrees_with_the_oracle() {
    for_each_distinct(45, |_, parts| {
        let ours = Partition::new(parts.to_vec())
            .unwrap()
            .franklin()
            .ok()
            .map(|p| p.parts().to_vec());
        assert_eq!(ours, franklin_oracle(parts), "{parts:?}");
    });
}

#[test]
fn exceptional_partitions_are_the_staircases() {
    let mut found = Vec::new();
    for_each_distinct(45, |_, parts| {
        let p = Partition::new(parts.to_vec()).unwrap();
        if p.classify().is_exceptional() {
            found.push(p);
        }
    });
    let mut expected = vec![Partition::empty()];
    for r in 1.. {
        let first: Vec<usize> = (r..2 * r).rev().collect();
        let second: Vec<usize> = (r + 1..=2 * r).rev().collect();
        if first.iter().sum::<usize>() > 45 {
            break;
        }
        expected.push(Partition::new(first).unwrap());
        if second.iter().sum::<usize>() <= 45 {
            expected.push(Partition::new(second).unwrap());
        }
    }
    found.sort_by_key(|p| (p.weight(), p.len()));
    expected.sort_by_key(|p| (p.weight(), p.len()));
    assert_eq!(found, expected);
}

#[test]
fn staircase_classes() {
    let p = |v: Vec<usize>| Partition::new(v).unwrap();
    assert_eq!(p(vec![3, 2]).classify(), FranklinClass::ExceptionalFirst(2));
    assert_eq!(p(vec![4, 3]).classify(), FranklinClass::ExceptionalSecond(2));
    assert_eq!(p(vec![5, 4, 3]).classify(), FranklinClass::ExceptionalFirst(3));
    assert_eq!(p(vec![6, 5, 4]).classify(), FranklinClass::ExceptionalSecond(3));
    assert_eq!(Partition::empty().classify(), FranklinClass::ExceptionalEmpty);
    assert_eq!(p(vec![1]).classify(), FranklinClass::ExceptionalFirst(1));
    assert_eq!(p(vec![2]).classify(), FranklinClass::ExceptionalSecond(1));
    assert!(matches!(
        p(vec![5, 4, 3]).franklin(),
        Err(PartitionError::Exceptional { .. })
    ));
    assert_eq!(p(vec![4, 3, 1]).franklin().unwrap(), p(vec![5, 3]));
    assert_eq!(p(vec![5, 3]).franklin().unwrap(), p(vec![4, 3, 1]));
}

#[test]
fn census_matches_enumerated_signs() {
    let counts = distinct_partition_counts(45);
    for row in pentagonal_census(45) {
        let mut even = 0i64;
        let mut odd = 0i64;
        for p in enumerate_distinct(row.weight) {
            if p.len() % 2 == 0 {
                even += 1;
            } else {
                odd += 1;
            }
        }
        assert_eq!((even + odd) as u64, counts[row.weight]);
        assert_eq!(row.signed_count, even - odd, "weight {}", row.weight);
        assert!(row.agrees(), "weight {}", row.weight);
    }
}

#[test]
fn pentagonal_predictions() {
    let nonzero: Vec<(usize, i64)> = (0..=40)
        .map(|w| (w, pentagonal_prediction(w)))
        .filter(|&(_, v)| v != 0)
        .collect();
    assert_eq!(
        nonzero,
        vec![
            (0, 1),
            (1, -1),
            (2, -1),
            (5, 1),
            (7, 1),
            (12, -1),
            (15, -1),
            (22, 1),
            (26, 1),
            (35, -1),
            (40, -1)
        ]
    );
}

/// Signed sums by brute force over subsets of `{1..=order}`.
fn subset_oracle(order: usize) -> [Vec<i64>; 4] {
    let mut sums: [Vec<i64>; 4] = std::array::from_fn(|_| vec![0; order + 1]);
    for mask in 0u32..(1 << order) {
        let parts: Vec<usize> = (1..=order).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        let weight: usize = parts.iter().sum();
        if weight > order {
            continue;
        }
        let sign = if parts.len().is_multiple_of(2) { 1 } else { -1 };
        let m = parts.iter().max().copied().unwrap_or(0) as i64;
        let n = parts.len() as i64;
        sums[0][weight] += sign;
        sums[1][weight] += sign * m;
        sums[2][weight] += sign * n;
        sums[3][weight] += sign * (m + n);
    }
    sums
}

#[test]
fn signed_sums_match_subset_oracle() {
    let order = 18;
    let oracle = subset_oracle(order);
    let selectors = [
        WeightSelector::Unit,
        WeightSelector::LargestPart,
        WeightSelector::NumParts,
        WeightSelector::SumMN,
    ];
    for (selector, expected) in selectors.into_iter().zip(oracle) {
        let ours = signed_partition_sum(order, selector).into_q().unwrap();
        let expected: Vec<BigInt> = expected.into_iter().map(BigInt::from).collect();
        assert_eq!(ours.coeffs(), &expected[..], "{selector:?}");
    }
}

#[test]
fn bivariate_sum_matches_subset_oracle() {
    let order = 16;
    let xq = signed_partition_sum(order, WeightSelector::XPowerMN).into_xq().unwrap();
    assert_eq!(xq.xorder(), order + 1);
    let mut expected = vec![vec![0i64; order + 2]; order + 1];
    for mask in 0u32..(1 << order) {
        let parts: Vec<usize> = (1..=order).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        let weight: usize = parts.iter().sum();
        if weight <= order {
            let mn = parts.iter().max().copied().unwrap_or(0) + parts.len();
            expected[weight][mn] += if parts.len().is_multiple_of(2) { 1 } else { -1 };
        }
    }
    for (b, row) in expected.iter().enumerate() {
        for (a, &c) in row.iter().enumerate() {
            assert_eq!(xq.coeff(a, b), &BigInt::from(c), "x^{a} q^{b}");
        }
    }
}
