use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{is_interval_preserving, IpVerdict, IpWitness, PointSet, Relation, MAX_SIZE};
use crate::syntax::{Signature, SyntaxError, Var};

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("domain size {0} exceeds the maximum of {MAX_SIZE}")]
    TooLarge(usize),
    #[error("index {index} in `{name}` is outside the domain of size {size}")]
    OutOfRange {
        name: String,
        index: usize,
        size: usize,
    },
    #[error("duplicate entry {entry} in `{name}`")]
    Duplicate { name: String, entry: String },
    #[error("relation `{name}` is not interval-preserving ({witness})")]
    NotIntervalPreserving { name: String, witness: IpWitness },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("invalid model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("exhaustive enumeration is limited to domains of size 3, got {0}")]
    EnumerationTooLarge(usize),
}

/// A finite linear order `0 < 1 < ... < n-1` with monadic predicates and
/// binary relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    size: usize,
    predicates: BTreeMap<String, PointSet>,
    relations: BTreeMap<String, Relation>,
}

/// Values of free variables.
pub type Assignment = BTreeMap<Var, usize>;

impl Structure {
    /// A structure with no symbols.
    pub fn new(size: usize) -> Result<Self, StructureError> {
        if size > MAX_SIZE {
            return Err(StructureError::TooLarge(size));
        }
        Ok(Structure {
            size,
            predicates: BTreeMap::new(),
            relations: BTreeMap::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> PointSet {
        PointSet::full(self.size)
    }

    /// Adds or replaces a predicate.
    pub fn with_predicate(
        mut self,
        name: &str,
        points: impl IntoIterator<Item = usize>,
    ) -> Result<Self, StructureError> {
        let mut set = PointSet::EMPTY;
        for p in points {
            if p >= self.size {
                return Err(StructureError::OutOfRange {
                    name: name.into(),
                    index: p,
                    size: self.size,
                });
            }
            if set.contains(p) {
                return Err(StructureError::Duplicate {
                    name: name.into(),
                    entry: p.to_string(),
                });
            }
            set.insert(p);
        }
        self.set_predicate(name, set)?;
        Ok(self)
    }

    /// Adds or replaces a relation, rejecting it unless it is
    /// interval-preserving.
    pub fn with_relation(
        self,
        name: &str,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, StructureError> {
        let s = self.with_relation_unchecked(name, pairs)?;
        s.check_ip()?;
        Ok(s)
    }

    /// Like [`Structure::with_relation`] but accepts any relation.
    pub fn with_relation_unchecked(
        mut self,
        name: &str,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, StructureError> {
        let mut r = Relation::empty(self.size);
        for (a, b) in pairs {
            for index in [a, b] {
                if index >= self.size {
                    return Err(StructureError::OutOfRange {
                        name: name.into(),
                        index,
                        size: self.size,
                    });
                }
            }
            if r.contains(a, b) {
                return Err(StructureError::Duplicate {
                    name: name.into(),
                    entry: format!("({a},{b})"),
                });
            }
            r.insert(a, b);
        }
        self.set_relation(name, r)?;
        Ok(self)
    }

    pub fn set_predicate(&mut self, name: &str, points: PointSet) -> Result<(), StructureError> {
        if !points.is_subset(self.domain()) {
            let index = points.max().unwrap_or(0);
            return Err(StructureError::OutOfRange {
                name: name.into(),
                index,
                size: self.size,
            });
        }
        Signature::new([name], Vec::<String>::new())?;
        if self.relations.contains_key(name) {
            return Err(SyntaxError::Overlap(name.into()).into());
        }
        self.predicates.insert(name.to_string(), points);
        Ok(())
    }

    /// Adds or replaces a relation without checking interval preservation.
    pub fn set_relation(&mut self, name: &str, r: Relation) -> Result<(), StructureError> {
        assert_eq!(r.size(), self.size, "relation over a different domain");
        Signature::new(Vec::<String>::new(), [name])?;
        if self.predicates.contains_key(name) {
            return Err(SyntaxError::Overlap(name.into()).into());
        }
        self.relations.insert(name.to_string(), r);
        Ok(())
    }

    pub fn predicate(&self, name: &str) -> Option<PointSet> {
        self.predicates.get(name).copied()
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, PointSet)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.relations.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn signature(&self) -> Result<Signature, SyntaxError> {
        Signature::new(
            self.predicates.keys().cloned(),
            self.relations.keys().cloned(),
        )
    }

    /// The first relation (by name) that is not interval-preserving.
    pub fn check_ip(&self) -> Result<(), StructureError> {
        for (name, r) in &self.relations {
            if let IpVerdict::Counterexample(witness) = is_interval_preserving(r) {
                return Err(StructureError::NotIntervalPreserving {
                    name: name.clone(),
                    witness,
                });
            }
        }
        Ok(())
    }

    pub fn is_ip(&self) -> bool {
        self.relations
            .values()
            .all(|r| is_interval_preserving(r).is_ok())
    }

    /// Removes point `p`, shifting larger indices down.
    pub fn drop_point(&self, p: usize) -> Structure {
        let squeeze = |s: PointSet| -> PointSet {
            s.iter()
                .filter(|&b| b != p)
                .map(|b| if b > p { b - 1 } else { b })
                .collect()
        };
        Structure {
            size: self.size - 1,
            predicates: self
                .predicates
                .iter()
                .map(|(k, v)| (k.clone(), squeeze(*v)))
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|(k, v)| (k.clone(), v.drop_point(p)))
                .collect(),
        }
    }

    /// Parses the JSON model format. Relations must be interval-preserving
    /// unless `allow_non_ip` is set.
    pub fn from_json(text: &str, allow_non_ip: bool) -> Result<Self, StructureError> {
        let file: ModelFile = serde_json::from_str(text)?;
        let mut s = Structure::new(file.size)?;
        for (name, points) in file.predicates {
            s = s.with_predicate(&name, points)?;
        }
        for (name, pairs) in file.relations {
            s = s.with_relation_unchecked(&name, pairs.into_iter().map(|[a, b]| (a, b)))?;
        }
        if !allow_non_ip {
            s.check_ip()?;
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            size: self.size,
            predicates: self
                .predicates
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().collect()))
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|(k, r)| (k.clone(), r.pairs().map(|(a, b)| [a, b]).collect()))
                .collect(),
        };
        serde_json::to_string(&file).expect("model serializes")
    }

    /// Names that must be interpreted for `sig` but are missing here.
    pub fn missing_symbols(&self, sig: &Signature) -> BTreeSet<String> {
        sig.predicates()
            .filter(|p| !self.predicates.contains_key(*p))
            .chain(sig.relations().filter(|r| !self.relations.contains_key(*r)))
            .map(str::to_string)
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    size: usize,
    #[serde(default)]
    predicates: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    relations: BTreeMap<String, Vec<[usize; 2]>>,
}
