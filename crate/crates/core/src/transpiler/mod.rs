//! Translation of first-order formulas into star-free PDL and into
//! three-variable first-order logic.

mod build;
mod complement;
mod derived;
mod exists;
mod fo3;
mod translate;

use thiserror::Error;

use crate::syntax::{Dialect, Var};

pub use complement::{complement_atom, complement_fragment, negate_pbc};
pub use derived::{expand_c, left_c, right_c};
pub use exists::{eliminate_exists, exists_empty_case, ExistsInstance};
pub use fo3::{fo_to_fo3, pdl_path_to_fo3, pdl_state_to_fo3, translate_fo3, Fo3Translation};
pub use translate::{
    fo_to_path, fo_to_path_ordered, fo_to_pbc, fo_to_state, sentence_var, translation_vars,
};

/// Translation switches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Local rewrites that keep formulas small: `test(true)` as a unit of
    /// composition, `π & π = π`, `inv(inv(π)) = π`, flattening and
    /// deduplication of conjunctions and disjunctions, folding of diagonal
    /// atoms into state formulas, and dropping complement pieces that are
    /// empty on every linear order.
    pub simplify: bool,
    /// Emit only the pairs `i <= j` when eliminating an existential.
    pub prune_symmetric: bool,
    /// Translate a sentence `Φ` as `Φ & v = v` for a fresh `v`.
    pub sentences: bool,
    /// Upper bound on the total number of conjunctions produced while
    /// normalizing quantifier bodies; beyond it translation gives up.
    pub max_terms: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            simplify: true,
            prune_symmetric: false,
            sentences: true,
            max_terms: 200_000,
        }
    }
}

impl Options {
    pub fn verbatim() -> Self {
        Options {
            simplify: false,
            ..Options::default()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("path formula `{path}` is outside the {dialect} fragment")]
    Dialect { path: String, dialect: Dialect },
    #[error("existential elimination needs at least one atom")]
    NoAtoms,
    #[error("expected {expected} free variable(s), found {found}")]
    Arity { expected: usize, found: usize },
    #[error("the formula is a sentence and sentence handling is disabled")]
    Sentence,
    #[error("variables {0:?} must be pairwise distinct")]
    NotDistinct(Vec<Var>),
    #[error("translation gave up after {0} normal-form conjunctions")]
    TooLarge(usize),
    #[error("`{0}` is not a free variable of the formula")]
    NotFree(Var),
}
