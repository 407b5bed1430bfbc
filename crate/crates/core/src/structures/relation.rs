use std::fmt;

use super::{PointSet, MAX_SIZE};

/// A binary relation on `{0, ..., n-1}`, stored as one row of successors per
/// point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    size: usize,
    rows: Vec<PointSet>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        assert!(size <= MAX_SIZE, "domain too large");
        Relation {
            size,
            rows: vec![PointSet::EMPTY; size],
        }
    }

    /// # Panics
    /// If a pair lies outside the domain.
    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(size);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn from_rows(rows: Vec<PointSet>) -> Self {
        let size = rows.len();
        assert!(size <= MAX_SIZE, "domain too large");
        let full = PointSet::full(size);
        assert!(rows.iter().all(|r| r.is_subset(full)), "row out of range");
        Relation { size, rows }
    }

    pub fn identity(size: usize) -> Self {
        Relation::from_pairs(size, (0..size).map(|a| (a, a)))
    }

    pub fn full(size: usize) -> Self {
        Relation {
            size,
            rows: vec![PointSet::full(size); size],
        }
    }

    /// The reflexive order `{(a, b) | a <= b}`.
    pub fn le(size: usize) -> Self {
        Relation {
            size,
            rows: (0..size).map(|a| PointSet::range(a, size - 1)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        assert!(
            a < self.size && b < self.size,
            "pair ({a},{b}) outside domain of size {}",
            self.size
        );
        self.rows[a].insert(b);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.rows[a].remove(b);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.size && self.rows[a].contains(b)
    }

    /// `R(a)`
    pub fn row(&self, a: usize) -> PointSet {
        self.rows[a]
    }

    pub fn rows(&self) -> &[PointSet] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, r)| r.iter().map(move |b| (a, b)))
    }

    pub fn domain(&self) -> PointSet {
        (0..self.size)
            .filter(|&a| !self.rows[a].is_empty())
            .collect()
    }

    pub fn range(&self) -> PointSet {
        self.rows
            .iter()
            .fold(PointSet::EMPTY, |acc, r| acc.union(*r))
    }

    /// `R(S)`
    pub fn image(&self, s: PointSet) -> PointSet {
        s.iter()
            .filter(|&a| a < self.size)
            .fold(PointSet::EMPTY, |acc, a| acc.union(self.rows[a]))
    }

    /// `R⁻¹(S)`
    pub fn preimage(&self, s: PointSet) -> PointSet {
        (0..self.size)
            .filter(|&a| !self.rows[a].inter(s).is_empty())
            .collect()
    }

    /// Points related to themselves.
    pub fn diagonal(&self) -> PointSet {
        (0..self.size)
            .filter(|&a| self.rows[a].contains(a))
            .collect()
    }

    pub fn converse(&self) -> Relation {
        let mut out = Relation::empty(self.size);
        for (a, b) in self.pairs() {
            out.rows[b].insert(a);
        }
        out
    }

    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size, "relations over different domains");
        Relation {
            size: self.size,
            rows: self.rows.iter().map(|r| other.image(*r)).collect(),
        }
    }

    pub fn intersect(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size, "relations over different domains");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.inter(*b))
            .collect();
        Relation {
            size: self.size,
            rows,
        }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size, "relations over different domains");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.union(*b))
            .collect();
        Relation {
            size: self.size,
            rows,
        }
    }

    /// Complement relative to the full square.
    pub fn complement(&self) -> Relation {
        let rows = self.rows.iter().map(|r| r.complement(self.size)).collect();
        Relation {
            size: self.size,
            rows,
        }
    }

    /// Restriction to pairs whose source lies in `s`.
    pub fn restrict_source(&self, s: PointSet) -> Relation {
        let rows = (0..self.size)
            .map(|a| {
                if s.contains(a) {
                    self.rows[a]
                } else {
                    PointSet::EMPTY
                }
            })
            .collect();
        Relation {
            size: self.size,
            rows,
        }
    }

    /// Restriction to pairs whose target lies in `s`.
    pub fn restrict_target(&self, s: PointSet) -> Relation {
        Relation {
            size: self.size,
            rows: self.rows.iter().map(|r| r.inter(s)).collect(),
        }
    }

    pub fn is_functional(&self) -> bool {
        self.rows.iter().all(|r| r.len() <= 1)
    }

    /// Removes point `p` and shifts larger indices down by one.
    pub fn drop_point(&self, p: usize) -> Relation {
        let squeeze = |s: PointSet| -> PointSet {
            s.iter()
                .filter(|&b| b != p)
                .map(|b| if b > p { b - 1 } else { b })
                .collect()
        };
        let rows = (0..self.size)
            .filter(|&a| a != p)
            .map(|a| squeeze(self.rows[a]))
            .collect();
        Relation {
            size: self.size - 1,
            rows,
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation[{}]", self.size)?;
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Space-separated pairs, e.g. `(0,2) (1,3)`.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}
