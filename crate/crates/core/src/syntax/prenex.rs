//! Prenex normal form.

use std::collections::BTreeSet;

use super::{Fo, FoNode, Var};

/// Deterministic supply of fresh variables `v0, v1, ...`, skipping any name
/// already taken.
#[derive(Clone, Debug)]
pub struct FreshNames {
    next: usize,
    taken: BTreeSet<Var>,
}

impl FreshNames {
    pub fn avoiding(taken: impl IntoIterator<Item = Var>) -> Self {
        FreshNames {
            next: 0,
            taken: taken.into_iter().collect(),
        }
    }

    pub fn reserve(&mut self, v: &Var) {
        self.taken.insert(v.clone());
    }

    pub fn fresh(&mut self) -> Var {
        loop {
            let candidate = Var::new(&format!("v{}", self.next)).expect("v<n> is a valid name");
            self.next += 1;
            if self.taken.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }
}

/// A quantifier prefix (outermost first) over a quantifier-free matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prenex {
    pub prefix: Vec<(Quantifier, Var)>,
    pub matrix: Fo,
}

impl Prenex {
    pub fn to_fo(&self) -> Fo {
        self.prefix
            .iter()
            .rev()
            .fold(self.matrix.clone(), |body, (q, x)| match q {
                Quantifier::Exists => Fo::exists(x, &body),
                Quantifier::Forall => Fo::forall(x, &body),
            })
    }

    /// Puts a desugared formula in prenex form, renaming every bound variable
    /// to a fresh `v<n>` in pre-order.
    pub fn of(f: &Fo) -> Prenex {
        let f = if f.is_desugared() {
            f.clone()
        } else {
            f.desugar()
        };
        let mut names = FreshNames::avoiding(f.all_vars());
        let renamed = rename_apart(&f, &mut names);
        pull(&renamed)
    }
}

fn rename_apart(f: &Fo, names: &mut FreshNames) -> Fo {
    match f.node() {
        FoNode::Or(a, b) => {
            let a = rename_apart(a, names);
            a.or(&rename_apart(b, names))
        }
        FoNode::Not(a) => rename_apart(a, names).not(),
        FoNode::Exists(x, body) => {
            let fresh = names.fresh();
            let body = body.rename_free(x, &fresh);
            Fo::exists(&fresh, &rename_apart(&body, names))
        }
        FoNode::And(..) | FoNode::Implies(..) | FoNode::Forall(..) => {
            unreachable!("input is desugared")
        }
        _ => f.clone(),
    }
}

fn pull(f: &Fo) -> Prenex {
    match f.node() {
        FoNode::Not(a) => {
            let inner = pull(a);
            Prenex {
                prefix: inner
                    .prefix
                    .into_iter()
                    .map(|(q, x)| (q.dual(), x))
                    .collect(),
                matrix: inner.matrix.not(),
            }
        }
        FoNode::Or(a, b) => {
            let (l, r) = (pull(a), pull(b));
            Prenex {
                prefix: l.prefix.into_iter().chain(r.prefix).collect(),
                matrix: l.matrix.or(&r.matrix),
            }
        }
        FoNode::Exists(x, body) => {
            let mut inner = pull(body);
            inner.prefix.insert(0, (Quantifier::Exists, x.clone()));
            inner
        }
        _ => Prenex {
            prefix: Vec::new(),
            matrix: f.clone(),
        },
    }
}

/// Prenex normal form of `f` as a formula. Sugar is removed first.
pub fn to_prenex(f: &Fo) -> Fo {
    Prenex::of(f).to_fo()
}
