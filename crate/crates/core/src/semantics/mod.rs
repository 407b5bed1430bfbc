//! Brute-force evaluation over finite structures.

mod fo;
mod pdl;
mod table;

use thiserror::Error;

use crate::structures::Structure;
use crate::syntax::Var;

pub use fo::{all_assignments, eval_fo, fo_equiv_on, Equivalence};
pub use pdl::{eval_path, eval_pbc, eval_state, Evaluator};
pub use table::{FoTableEvaluator, TruthTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("no value assigned to free variable `{0}`")]
    Unbound(Var),
    #[error("predicate `{0}` is not interpreted in the model")]
    UnknownPredicate(String),
    #[error("relation `{0}` is not interpreted in the model")]
    UnknownRelation(String),
    #[error("value {value} of `{var}` is outside the domain of size {size}")]
    OutOfRange { var: Var, value: usize, size: usize },
}

/// Fails on the first name the model does not interpret with the right
/// arity.
fn check_names(
    preds: impl IntoIterator<Item = String>,
    rels: impl IntoIterator<Item = String>,
    m: &Structure,
) -> Result<(), EvalError> {
    for p in preds {
        if m.predicate(&p).is_none() {
            return Err(EvalError::UnknownPredicate(p));
        }
    }
    for r in rels {
        if m.relation(&r).is_none() {
            return Err(EvalError::UnknownRelation(r));
        }
    }
    Ok(())
}
