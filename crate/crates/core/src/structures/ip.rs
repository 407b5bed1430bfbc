//! Checking that a relation is interval-preserving.
//!
//! `R` is interval-preserving when the image of every interval is an interval
//! of `R(A)`, and likewise for `R⁻¹`. On a finite chain it is enough to look
//! at intervals `[a1, a2]`: if `R([a1, a2])` has a gap at some `b ∈ R(A)`,
//! the gap already lies between points of `R(a)` and `R(a')` for two sources
//! `a <= a'` inside the interval, so the pair `(a, a')` exposes it.

use std::fmt;

use serde::Serialize;

use super::{Interval, PointSet, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Gap in the image of `[a1, a2]` under `R`.
    Forward,
    /// Gap in the image of `[a1, a2]` under `R⁻¹`.
    Backward,
}

/// `b` lies between images of `a1` and `a2` and has a preimage, but none of
/// its preimages lies in `[a1, a2]`. For `Backward` the roles of `R` and
/// `R⁻¹` are swapped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IpWitness {
    pub a1: usize,
    pub a2: usize,
    pub b: usize,
    pub direction: Direction,
}

impl fmt::Display for IpWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        };
        write!(f, "a1={}, a2={}, b={}, {dir}", self.a1, self.a2, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IpVerdict {
    Ok,
    Counterexample(IpWitness),
}

impl IpVerdict {
    pub fn is_ok(self) -> bool {
        self == IpVerdict::Ok
    }
}

fn one_direction(r: &Relation, direction: Direction) -> Option<IpWitness> {
    let n = r.size();
    let range = r.range();
    for a1 in 0..n {
        let mut reached = PointSet::EMPTY;
        for a2 in a1..n {
            reached = reached.union(r.row(a2));
            let span = r.row(a1).union(r.row(a2)).hull();
            if let Some(b) = span.inter(range).minus(reached).min() {
                return Some(IpWitness {
                    a1,
                    a2,
                    b,
                    direction,
                });
            }
        }
    }
    None
}

/// Pairwise check; the witness is the first one in the order
/// `(direction, a1, a2, b)` with forward before backward.
pub fn is_interval_preserving(r: &Relation) -> IpVerdict {
    one_direction(r, Direction::Forward)
        .or_else(|| one_direction(&r.converse(), Direction::Backward))
        .map_or(IpVerdict::Ok, IpVerdict::Counterexample)
}

/// Direct transcription of the definition over every interval, for
/// cross-checking the pairwise reduction.
pub fn is_interval_preserving_naive(r: &Relation) -> bool {
    let image_ok = |r: &Relation| {
        let range = r.range();
        Interval::all(r.size()).into_iter().all(|i| {
            let img = r.image(i.points());
            img.hull().inter(range) == img
        })
    };
    image_ok(r) && image_ok(&r.converse())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let ok = Relation::from_pairs(4, [(0, 2), (1, 2), (1, 3)]);
        assert!(is_interval_preserving(&ok).is_ok());
        let bad = Relation::from_pairs(3, [(0, 0), (1, 2), (2, 1)]);
        assert_eq!(
            is_interval_preserving(&bad),
            IpVerdict::Counterexample(IpWitness {
                a1: 0,
                a2: 1,
                b: 1,
                direction: Direction::Forward
            })
        );
        assert!(is_interval_preserving(&Relation::empty(5)).is_ok());
        assert!(!is_interval_preserving_naive(&bad));
    }

    #[test]
    fn pairwise_matches_naive_up_to_three() {
        for n in 0..=3 {
            for mask in 0u32..(1 << (n * n)) {
                let r = Relation::from_pairs(
                    n,
                    (0..n * n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| (i / n, i % n)),
                );
                assert_eq!(
                    is_interval_preserving(&r).is_ok(),
                    is_interval_preserving_naive(&r),
                    "{r:?}"
                );
            }
        }
    }
}
