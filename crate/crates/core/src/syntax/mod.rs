//! Abstract syntax for monadic first-order logic, star-free PDL and positive
//! boolean combinations of path atoms.

mod fo;
mod pbc;
mod pdl;
mod prenex;
mod print;
mod shared;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use fo::{Fo, FoNode};
pub use pbc::{pbc_to_dnf, PAtom, Pbc};
pub use pdl::{dialect_check, COp, Dialect, Path, PathNode, State, StateNode};
pub use prenex::{to_prenex, FreshNames, Prenex, Quantifier};

/// Words that can never be used as predicate, relation or variable names.
pub const RESERVED: &[&str] = &[
    "le", "true", "false", "test", "inv", "comp", "loop", "c1", "c2", "c3", "c4", "exists",
    "forall",
];

pub fn is_reserved(name: &str) -> bool {
    RESERVED.contains(&name)
}

/// Predicate or relation symbol.
pub type Name = Arc<str>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("invalid variable name `{0}`")]
    InvalidVar(String),
    #[error("invalid symbol name `{0}`")]
    InvalidName(String),
    #[error("`{0}` is a reserved word")]
    Reserved(String),
    #[error("`{0}` is declared both as a predicate and as a relation")]
    Overlap(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
}

/// A first-order variable; matches `[a-z][a-zA-Z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Result<Self, SyntaxError> {
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(SyntaxError::InvalidVar(name.to_string()));
        }
        if is_reserved(name) {
            return Err(SyntaxError::Reserved(name.to_string()));
        }
        Ok(Var(name.into()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

/// Shorthand for tests and examples; panics on an invalid name.
pub fn var(name: &str) -> Var {
    Var::new(name).unwrap_or_else(|e| panic!("{e}"))
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn valid_symbol(name: &str) -> Result<(), SyntaxError> {
    let mut chars = name.chars();
    let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok {
        return Err(SyntaxError::InvalidName(name.to_string()));
    }
    if is_reserved(name) {
        return Err(SyntaxError::Reserved(name.to_string()));
    }
    Ok(())
}

/// Monadic predicates and binary relation symbols available to formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    predicates: BTreeSet<String>,
    relations: BTreeSet<String>,
}

impl Signature {
    pub fn new<P, R>(predicates: P, relations: R) -> Result<Self, SyntaxError>
    where
        P: IntoIterator,
        P::Item: Into<String>,
        R: IntoIterator,
        R::Item: Into<String>,
    {
        let predicates: BTreeSet<String> = predicates.into_iter().map(Into::into).collect();
        let relations: BTreeSet<String> = relations.into_iter().map(Into::into).collect();
        for name in predicates.iter().chain(&relations) {
            valid_symbol(name)?;
        }
        if let Some(shared) = predicates.intersection(&relations).next() {
            return Err(SyntaxError::Overlap(shared.clone()));
        }
        Ok(Signature {
            predicates,
            relations,
        })
    }

    pub fn predicates(&self) -> impl Iterator<Item = &str> {
        self.predicates.iter().map(String::as_str)
    }

    pub fn relations(&self) -> impl Iterator<Item = &str> {
        self.relations.iter().map(String::as_str)
    }

    pub fn has_predicate(&self, name: &str) -> bool {
        self.predicates.contains(name)
    }

    pub fn has_relation(&self, name: &str) -> bool {
        self.relations.contains(name)
    }

    /// Union of two signatures; fails if a name changes kind.
    pub fn merge(&self, other: &Signature) -> Result<Signature, SyntaxError> {
        Signature::new(
            self.predicates.iter().chain(&other.predicates).cloned(),
            self.relations.iter().chain(&other.relations).cloned(),
        )
    }

    pub(crate) fn check_predicate(&self, name: &str) -> Result<(), SyntaxError> {
        if self.has_predicate(name) {
            Ok(())
        } else {
            Err(SyntaxError::UnknownPredicate(name.to_string()))
        }
    }

    pub(crate) fn check_relation(&self, name: &str) -> Result<(), SyntaxError> {
        if self.has_relation(name) {
            Ok(())
        } else {
            Err(SyntaxError::UnknownRelation(name.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_names() {
        assert!(Var::new("x").is_ok());
        assert!(Var::new("x_1A").is_ok());
        assert!(Var::new("X").is_err());
        assert!(Var::new("").is_err());
        assert!(Var::new("1x").is_err());
        assert_eq!(Var::new("loop"), Err(SyntaxError::Reserved("loop".into())));
    }

    #[test]
    fn signature_rejects_overlap_and_reserved() {
        assert!(Signature::new(["P", "Q"], ["a"]).is_ok());
        assert_eq!(
            Signature::new(["P"], ["P"]),
            Err(SyntaxError::Overlap("P".into()))
        );
        assert_eq!(
            Signature::new(["le"], Vec::<String>::new()),
            Err(SyntaxError::Reserved("le".into()))
        );
        assert!(Signature::new(["c3"], Vec::<String>::new()).is_err());
    }
}
