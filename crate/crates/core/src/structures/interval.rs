use std::fmt;

use super::PointSet;

/// A closed interval `[lo, hi]` of a finite chain, or the empty interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval(Option<(usize, usize)>);

impl Interval {
    pub const EMPTY: Interval = Interval(None);

    /// `[lo, hi]`; empty when `lo > hi`.
    pub fn new(lo: usize, hi: usize) -> Self {
        if lo <= hi {
            Interval(Some((lo, hi)))
        } else {
            Interval::EMPTY
        }
    }

    pub fn bounds(self) -> Option<(usize, usize)> {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0.is_none()
    }

    pub fn contains(self, p: usize) -> bool {
        matches!(self.0, Some((lo, hi)) if lo <= p && p <= hi)
    }

    pub fn intersect(self, other: Interval) -> Interval {
        match (self.0, other.0) {
            (Some((a, b)), Some((c, d))) => Interval::new(a.max(c), b.min(d)),
            _ => Interval::EMPTY,
        }
    }

    pub fn points(self) -> PointSet {
        match self.0 {
            Some((lo, hi)) => PointSet::range(lo, hi),
            None => PointSet::EMPTY,
        }
    }

    /// Every interval over `{0, ..., n-1}`, the empty one first.
    pub fn all(n: usize) -> Vec<Interval> {
        let mut out = vec![Interval::EMPTY];
        for lo in 0..n {
            for hi in lo..n {
                out.push(Interval::new(lo, hi));
            }
        }
        out
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some((lo, hi)) => write!(f, "[{lo},{hi}]"),
            None => f.write_str("[]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersections() {
        assert_eq!(
            Interval::new(0, 2).intersect(Interval::new(1, 3)),
            Interval::new(1, 2)
        );
        assert!(Interval::new(0, 1)
            .intersect(Interval::new(2, 3))
            .is_empty());
        assert!(Interval::new(3, 1).is_empty());
        assert_eq!(Interval::all(3).len(), 7);
    }
}
