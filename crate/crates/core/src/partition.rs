//! Partitions into distinct parts and Franklin's parity-reversing map.
//!
//! Parts are stored largest first, `parts[0] > parts[1] > ... > 0`. For a
//! nonempty partition, `a` is the smallest part and `b` the length of the
//! initial run of consecutive integers `parts[0], parts[0] - 1, ...`.
//!
//! The map is defined everywhere except on the empty partition and on the
//! two staircase families `(2r-1, ..., r)` and `(2r, ..., r+1)`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts {0:?} are not strictly decreasing positive integers")]
    NotDistinct(Vec<usize>),
    #[error("the empty partition has no smallest part or initial run")]
    Empty,
    #[error("Franklin's map is undefined on exceptional partition {partition} ({class})")]
    Exceptional { partition: Partition, class: FranklinClass },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        let decreasing = parts.windows(2).all(|w| w[0] > w[1]);
        if !decreasing || parts.last() == Some(&0) {
            return Err(PartitionError::NotDistinct(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats::of(&self.parts)
    }

    pub fn classify(&self) -> FranklinClass {
        classify_parts(&self.parts)
    }

    /// Franklin's map. Fails on exceptional partitions.
    pub fn franklin(&self) -> Result<Partition, PartitionError> {
        let class = self.classify();
        if class != FranklinClass::Regular {
            return Err(PartitionError::Exceptional {
                partition: self.clone(),
                class,
            });
        }
        let n = self.parts.len();
        let a = self.parts[n - 1];
        let b = initial_run(&self.parts);
        let mut parts = self.parts.clone();
        if a <= b {
            parts.pop();
            for p in &mut parts[..a] {
                *p += 1;
            }
        } else {
            for p in &mut parts[..b] {
                *p -= 1;
            }
            parts.push(b);
        }
        debug_assert!(parts.windows(2).all(|w| w[0] > w[1]));
        Ok(Partition { parts })
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// `N`, `n`, `m`, `a`, `b` of a partition. `a` and `b` do not exist for the
/// empty partition and their accessors return [`PartitionError::Empty`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionStats {
    pub weight: usize,
    pub count: usize,
    pub largest: usize,
    smallest: Option<usize>,
    run: Option<usize>,
}

impl PartitionStats {
    fn of(parts: &[usize]) -> Self {
        PartitionStats {
            weight: parts.iter().sum(),
            count: parts.len(),
            largest: parts.first().copied().unwrap_or(0),
            smallest: parts.last().copied(),
            run: (!parts.is_empty()).then(|| initial_run(parts)),
        }
    }

    pub fn smallest(&self) -> Result<usize, PartitionError> {
        self.smallest.ok_or(PartitionError::Empty)
    }

    pub fn run(&self) -> Result<usize, PartitionError> {
        self.run.ok_or(PartitionError::Empty)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FranklinClass {
    Regular,
    ExceptionalEmpty,
    /// `(2r-1, 2r-2, ..., r)`, weight `r(3r-1)/2`.
    ExceptionalFirst(usize),
    /// `(2r, 2r-1, ..., r+1)`, weight `r(3r+1)/2`.
    ExceptionalSecond(usize),
}

impl FranklinClass {
    pub fn is_exceptional(self) -> bool {
        self != FranklinClass::Regular
    }
}

impl fmt::Display for FranklinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FranklinClass::Regular => f.write_str("regular"),
            FranklinClass::ExceptionalEmpty => f.write_str("exceptional-empty"),
            FranklinClass::ExceptionalFirst(r) => write!(f, "exceptional-first r={r}"),
            FranklinClass::ExceptionalSecond(r) => write!(f, "exceptional-second r={r}"),
        }
    }
}

fn initial_run(parts: &[usize]) -> usize {
    let top = parts[0];
    parts.iter().enumerate().take_while(|&(i, &p)| p + i == top).count()
}

/// Classification on a raw part slice, which must already be distinct.
pub(crate) fn classify_parts(parts: &[usize]) -> FranklinClass {
    let Some(&a) = parts.last() else {
        return FranklinClass::ExceptionalEmpty;
    };
    let n = parts.len();
    let b = initial_run(parts);
    match (n == b, a) {
        (true, a) if a == b => FranklinClass::ExceptionalFirst(n),
        (true, a) if a == b + 1 => FranklinClass::ExceptionalSecond(n),
        _ => FranklinClass::Regular,
    }
}

/// Visits every distinct-part partition of every weight `0..=max_weight`
/// exactly once, as `(weight, parts)`. Within a weight the order is
/// lexicographically decreasing, but weights are interleaved.
pub fn for_each_distinct(max_weight: usize, mut visit: impl FnMut(usize, &[usize])) {
    fn descend(parts: &mut Vec<usize>, weight: usize, max_weight: usize, visit: &mut impl FnMut(usize, &[usize])) {
        visit(weight, parts);
        let bound = parts.last().map_or(max_weight, |&p| p - 1);
        for next in (1..=bound.min(max_weight - weight)).rev() {
            parts.push(next);
            descend(parts, weight + next, max_weight, visit);
            parts.pop();
        }
    }
    descend(&mut Vec::new(), 0, max_weight, &mut visit);
}

/// All partitions of `weight` into distinct parts, lexicographically
/// decreasing: `(3)` before `(2,1)`.
pub fn enumerate_distinct(weight: usize) -> Vec<Partition> {
    fn descend(parts: &mut Vec<usize>, remaining: usize, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: parts.clone() });
            return;
        }
        let bound = parts.last().map_or(remaining, |&p| (p - 1).min(remaining));
        for next in (1..=bound).rev() {
            // parts below `next` are distinct and smaller, so at most
            // next*(next-1)/2 more can be added
            if next + next * (next - 1) / 2 < remaining {
                break;
            }
            parts.push(next);
            descend(parts, remaining - next, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    descend(&mut Vec::new(), weight, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_distinct() {
        assert!(Partition::new(vec![3, 3]).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(enumerate_distinct(0), vec![Partition::empty()]);
        assert_eq!(enumerate_distinct(3), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(
            enumerate_distinct(6),
            vec![p(&[6]), p(&[5, 1]), p(&[4, 2]), p(&[3, 2, 1])]
        );
    }

    #[test]
    fn enumeration_count_matches_subset_sums() {
        // subsets of {1..w} summing to w
        for w in 0..=16usize {
            let brute = (0u32..1 << w)
                .filter(|mask| (0..w).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum::<usize>() == w)
                .count();
            assert_eq!(enumerate_distinct(w).len(), brute, "weight {w}");
        }
        assert_eq!(enumerate_distinct(10).len(), 10);
    }

    #[test]
    fn for_each_agrees_with_enumeration() {
        let mut by_weight: Vec<Vec<Partition>> = vec![Vec::new(); 13];
        for_each_distinct(12, |w, parts| by_weight[w].push(p(parts)));
        for (w, list) in by_weight.into_iter().enumerate() {
            assert_eq!(list, enumerate_distinct(w));
        }
    }

    #[test]
    fn stats_examples() {
        let s = p(&[7, 6, 5, 2]).stats();
        assert_eq!((s.weight, s.count, s.largest), (20, 4, 7));
        assert_eq!((s.smallest().unwrap(), s.run().unwrap()), (2, 3));
        let s = p(&[5, 3]).stats();
        assert_eq!((s.weight, s.count, s.largest), (8, 2, 5));
        assert_eq!((s.smallest().unwrap(), s.run().unwrap()), (3, 1));
        let s = Partition::empty().stats();
        assert_eq!((s.weight, s.count, s.largest), (0, 0, 0));
        assert_eq!(s.smallest(), Err(PartitionError::Empty));
        assert_eq!(s.run(), Err(PartitionError::Empty));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(Partition::empty().classify(), FranklinClass::ExceptionalEmpty);
        assert_eq!(p(&[1]).classify(), FranklinClass::ExceptionalFirst(1));
        assert_eq!(p(&[2]).classify(), FranklinClass::ExceptionalSecond(1));
        assert_eq!(p(&[3, 2]).classify(), FranklinClass::ExceptionalFirst(2));
        assert_eq!(p(&[4, 3]).classify(), FranklinClass::ExceptionalSecond(2));
        assert_eq!(p(&[2, 1]).classify(), FranklinClass::Regular);
        assert_eq!(p(&[5, 4, 3]).classify(), FranklinClass::ExceptionalFirst(3));
    }

    #[test]
    fn map_examples() {
        assert_eq!(p(&[2, 1]).franklin().unwrap(), p(&[3]));
        assert_eq!(p(&[5, 3]).franklin().unwrap(), p(&[4, 3, 1]));
        assert_eq!(p(&[4, 3, 1]).franklin().unwrap(), p(&[5, 3]));
    }

    #[test]
    fn map_rejects_exceptional() {
        let err = p(&[3, 2]).franklin().unwrap_err();
        assert_eq!(
            err,
            PartitionError::Exceptional {
                partition: p(&[3, 2]),
                class: FranklinClass::ExceptionalFirst(2)
            }
        );
        assert!(matches!(
            Partition::empty().franklin(),
            Err(PartitionError::Exceptional {
                class: FranklinClass::ExceptionalEmpty,
                ..
            })
        ));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[4, 3, 1]).to_string(), "(4,3,1)");
        assert_eq!(Partition::empty().to_string(), "()");
    }
}
