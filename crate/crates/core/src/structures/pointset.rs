use std::fmt;

/// Largest supported domain size.
pub const MAX_SIZE: usize = 128;

/// A set of domain points, one bit per point.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u128);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_bits(bits: u128) -> Self {
        PointSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// `{0, ..., n-1}`
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_SIZE, "domain too large");
        if n == MAX_SIZE {
            PointSet(u128::MAX)
        } else {
            PointSet((1u128 << n) - 1)
        }
    }

    /// `{lo, ..., hi}`, empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return PointSet::EMPTY;
        }
        PointSet(PointSet::full(hi + 1).0 & !PointSet::full(lo).0)
    }

    pub fn singleton(p: usize) -> Self {
        PointSet(1u128 << p)
    }

    pub fn contains(self, p: usize) -> bool {
        p < MAX_SIZE && self.0 >> p & 1 == 1
    }

    pub fn insert(&mut self, p: usize) {
        self.0 |= 1u128 << p;
    }

    pub fn remove(&mut self, p: usize) {
        self.0 &= !(1u128 << p);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn union(self, other: PointSet) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn inter(self, other: PointSet) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn minus(self, other: PointSet) -> Self {
        PointSet(self.0 & !other.0)
    }

    /// Complement within `{0, ..., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest range containing the set.
    pub fn hull(self) -> Self {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => PointSet::range(lo, hi),
            _ => PointSet::EMPTY,
        }
    }

    /// Points strictly below every element; everything if the set is empty.
    pub fn below(self) -> Self {
        match self.min() {
            Some(lo) => PointSet::full(lo),
            None => PointSet(u128::MAX),
        }
    }

    /// Points strictly above every element; everything if the set is empty.
    pub fn above(self) -> Self {
        match self.max() {
            Some(hi) if hi + 1 >= MAX_SIZE => PointSet::EMPTY,
            Some(hi) => PointSet(!PointSet::full(hi + 1).0),
            None => PointSet(u128::MAX),
        }
    }

    pub fn iter(self) -> Points {
        Points(self.0)
    }
}

/// Ascending iterator over the points of a set.
#[derive(Clone, Debug)]
pub struct Points(u128);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }
}

impl IntoIterator for PointSet {
    type Item = usize;
    type IntoIter = Points;

    fn into_iter(self) -> Points {
        self.iter()
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PointSet::EMPTY;
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Space-separated ascending points, e.g. `0 2 3`.
impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let s: PointSet = [1, 3, 4].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert_eq!(s.min(), Some(1));
        assert_eq!(s.max(), Some(4));
        assert_eq!(s.hull(), PointSet::range(1, 4));
        assert_eq!(s.complement(6).iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(s.below().inter(PointSet::full(6)), PointSet::singleton(0));
        assert_eq!(s.above().inter(PointSet::full(6)), PointSet::singleton(5));
        assert_eq!(s.to_string(), "1 3 4");
        assert!(PointSet::range(3, 2).is_empty());
    }

    #[test]
    fn extreme_points() {
        let top = PointSet::singleton(127);
        assert_eq!(top.max(), Some(127));
        assert!(top.above().is_empty());
        assert_eq!(PointSet::full(128).len(), 128);
        assert_eq!(PointSet::range(0, 127), PointSet::full(128));
    }
}
