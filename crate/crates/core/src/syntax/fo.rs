use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use super::shared::{shared_node, Hashed};
use super::{Name, Signature, SyntaxError, Var};

/// A monadic first-order formula. Children are reference counted, so cloning
/// is cheap and translations can share subterms.
#[derive(Clone)]
pub struct Fo(Arc<Hashed<FoNode>>);

shared_node!(Fo, FoNode);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FoNode {
    Pred(Name, Var),
    Le(Var, Var),
    Eq(Var, Var),
    Rel(Name, Var, Var),
    Or(Fo, Fo),
    And(Fo, Fo),
    Not(Fo),
    Implies(Fo, Fo),
    Exists(Var, Fo),
    Forall(Var, Fo),
}

impl Fo {
    pub fn pred(name: &str, x: &Var) -> Self {
        Self::from_node(FoNode::Pred(name.into(), x.clone()))
    }

    pub fn le(x: &Var, y: &Var) -> Self {
        Self::from_node(FoNode::Le(x.clone(), y.clone()))
    }

    pub fn eq(x: &Var, y: &Var) -> Self {
        Self::from_node(FoNode::Eq(x.clone(), y.clone()))
    }

    pub fn rel(name: &str, x: &Var, y: &Var) -> Self {
        Self::from_node(FoNode::Rel(name.into(), x.clone(), y.clone()))
    }

    pub fn or(&self, other: &Fo) -> Self {
        Self::from_node(FoNode::Or(self.clone(), other.clone()))
    }

    pub fn and(&self, other: &Fo) -> Self {
        Self::from_node(FoNode::And(self.clone(), other.clone()))
    }

    pub fn implies(&self, other: &Fo) -> Self {
        Self::from_node(FoNode::Implies(self.clone(), other.clone()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(&self) -> Self {
        Self::from_node(FoNode::Not(self.clone()))
    }

    pub fn exists(x: &Var, body: &Fo) -> Self {
        Self::from_node(FoNode::Exists(x.clone(), body.clone()))
    }

    pub fn forall(x: &Var, body: &Fo) -> Self {
        Self::from_node(FoNode::Forall(x.clone(), body.clone()))
    }

    pub fn is_atom(&self) -> bool {
        matches!(
            self.node(),
            FoNode::Pred(..) | FoNode::Le(..) | FoNode::Eq(..) | FoNode::Rel(..)
        )
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self.node() {
            FoNode::Exists(..) | FoNode::Forall(..) => false,
            FoNode::Not(f) => f.is_quantifier_free(),
            FoNode::Or(a, b) | FoNode::And(a, b) | FoNode::Implies(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            _ => true,
        }
    }

    /// Free variables as a set.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.free_vars_ordered().into_iter().collect()
    }

    /// Free variables in order of first occurrence (left to right).
    pub fn free_vars_ordered(&self) -> Vec<Var> {
        // memoized per shared node; a node's free variables do not depend on
        // the binders above it
        fn go(f: &Fo, memo: &mut HashMap<*const FoNode, Arc<Vec<Var>>>) -> Arc<Vec<Var>> {
            if let Some(v) = memo.get(&f.ptr()) {
                return v.clone();
            }
            let merge = |mut a: Vec<Var>, b: &[Var]| {
                for v in b {
                    if !a.contains(v) {
                        a.push(v.clone());
                    }
                }
                a
            };
            let out = match f.node() {
                FoNode::Pred(_, x) => vec![x.clone()],
                FoNode::Le(x, y) | FoNode::Eq(x, y) | FoNode::Rel(_, x, y) => {
                    merge(vec![x.clone()], std::slice::from_ref(y))
                }
                FoNode::Not(a) => go(a, memo).to_vec(),
                FoNode::Or(a, b) | FoNode::And(a, b) | FoNode::Implies(a, b) => {
                    let left = go(a, memo).to_vec();
                    merge(left, &go(b, memo))
                }
                FoNode::Exists(x, body) | FoNode::Forall(x, body) => {
                    go(body, memo).iter().filter(|v| *v != x).cloned().collect()
                }
            };
            let out = Arc::new(out);
            memo.insert(f.ptr(), out.clone());
            out
        }
        go(self, &mut HashMap::new()).to_vec()
    }

    /// Every variable name occurring in the formula, free or bound.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f.node() {
            FoNode::Pred(_, x) | FoNode::Exists(x, _) | FoNode::Forall(x, _) => {
                out.insert(x.clone());
            }
            FoNode::Le(x, y) | FoNode::Eq(x, y) | FoNode::Rel(_, x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            _ => {}
        });
        out
    }

    /// Number of distinct variable names, counting reuse once.
    pub fn count_vars(&self) -> usize {
        self.all_vars().len()
    }

    /// Number of distinct subformula nodes; a shared subformula counts once.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Calls `f` once on every distinct node, parents before children.
    pub(crate) fn visit(&self, f: &mut impl FnMut(&Fo)) {
        fn go(g: &Fo, seen: &mut HashSet<*const FoNode>, f: &mut impl FnMut(&Fo)) {
            if !seen.insert(g.ptr()) {
                return;
            }
            f(g);
            match g.node() {
                FoNode::Not(a) | FoNode::Exists(_, a) | FoNode::Forall(_, a) => go(a, seen, f),
                FoNode::Or(a, b) | FoNode::And(a, b) | FoNode::Implies(a, b) => {
                    go(a, seen, f);
                    go(b, seen, f);
                }
                _ => {}
            }
        }
        go(self, &mut HashSet::new(), f)
    }

    /// Predicates and relation symbols used by the formula.
    pub fn signature(&self) -> Result<Signature, SyntaxError> {
        let mut preds = BTreeSet::new();
        let mut rels = BTreeSet::new();
        self.visit(&mut |f| match f.node() {
            FoNode::Pred(p, _) => {
                preds.insert(p.to_string());
            }
            FoNode::Rel(r, _, _) => {
                rels.insert(r.to_string());
            }
            _ => {}
        });
        Signature::new(preds, rels)
    }

    pub fn check_signature(&self, sig: &Signature) -> Result<(), SyntaxError> {
        let mut result = Ok(());
        self.visit(&mut |f| {
            if result.is_err() {
                return;
            }
            result = match f.node() {
                FoNode::Pred(p, _) => sig.check_predicate(p),
                FoNode::Rel(r, _, _) => sig.check_relation(r),
                _ => Ok(()),
            };
        });
        result
    }

    /// Removes `And`, `Implies` and `Forall`, leaving only atoms, `Or`, `Not`
    /// and `Exists`.
    pub fn desugar(&self) -> Fo {
        match self.node() {
            FoNode::Pred(..) | FoNode::Le(..) | FoNode::Eq(..) | FoNode::Rel(..) => self.clone(),
            FoNode::Or(a, b) => a.desugar().or(&b.desugar()),
            FoNode::Not(a) => a.desugar().not(),
            FoNode::And(a, b) => a.desugar().not().or(&b.desugar().not()).not(),
            FoNode::Implies(a, b) => a.desugar().not().or(&b.desugar()),
            FoNode::Exists(x, a) => Fo::exists(x, &a.desugar()),
            FoNode::Forall(x, a) => Fo::exists(x, &a.desugar().not()).not(),
        }
    }

    pub fn is_desugared(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            if matches!(
                f.node(),
                FoNode::And(..) | FoNode::Implies(..) | FoNode::Forall(..)
            ) {
                ok = false;
            }
        });
        ok
    }

    /// Renames free occurrences of `from` to `to`. `to` must not be bound
    /// anywhere in the formula.
    pub(crate) fn rename_free(&self, from: &Var, to: &Var) -> Fo {
        let sub = |v: &Var| if v == from { to.clone() } else { v.clone() };
        match self.node() {
            FoNode::Pred(p, x) => Fo::from_node(FoNode::Pred(p.clone(), sub(x))),
            FoNode::Le(x, y) => Fo::from_node(FoNode::Le(sub(x), sub(y))),
            FoNode::Eq(x, y) => Fo::from_node(FoNode::Eq(sub(x), sub(y))),
            FoNode::Rel(r, x, y) => Fo::from_node(FoNode::Rel(r.clone(), sub(x), sub(y))),
            FoNode::Or(a, b) => a.rename_free(from, to).or(&b.rename_free(from, to)),
            FoNode::And(a, b) => a.rename_free(from, to).and(&b.rename_free(from, to)),
            FoNode::Implies(a, b) => a.rename_free(from, to).implies(&b.rename_free(from, to)),
            FoNode::Not(a) => a.rename_free(from, to).not(),
            FoNode::Exists(x, _) | FoNode::Forall(x, _) if x == from => self.clone(),
            FoNode::Exists(x, a) => Fo::exists(x, &a.rename_free(from, to)),
            FoNode::Forall(x, a) => Fo::forall(x, &a.rename_free(from, to)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    fn x() -> Var {
        var("x")
    }
    fn y() -> Var {
        var("y")
    }
    fn z() -> Var {
        var("z")
    }

    #[test]
    fn free_vars_examples() {
        let f = Fo::exists(&y(), &Fo::le(&x(), &y()).and(&Fo::pred("P", &y())));
        assert_eq!(f.free_vars(), [x()].into_iter().collect());
        let g = Fo::pred("P", &x()).or(&Fo::pred("Q", &y()));
        assert_eq!(g.free_vars(), [x(), y()].into_iter().collect());
        let h = Fo::exists(&x(), &Fo::pred("P", &x()));
        assert!(h.free_vars().is_empty());
    }

    #[test]
    fn count_vars_examples() {
        let f = Fo::exists(&z(), &Fo::rel("a", &x(), &z()).and(&Fo::le(&z(), &y())));
        assert_eq!(f.count_vars(), 3);
        let g = Fo::exists(&x(), &Fo::pred("P", &x())).and(&Fo::exists(&x(), &Fo::pred("Q", &x())));
        assert_eq!(g.count_vars(), 1);
        assert_eq!(Fo::le(&x(), &y()).count_vars(), 2);
    }

    #[test]
    fn desugar_leaves_core_grammar() {
        let f = Fo::forall(&y(), &Fo::le(&x(), &y()).implies(&Fo::pred("P", &y())))
            .and(&Fo::pred("Q", &x()));
        let d = f.desugar();
        assert!(d.is_desugared());
        assert!(!f.is_desugared());
        assert_eq!(d.free_vars(), f.free_vars());
        assert_eq!(d.desugar(), d);
    }

    #[test]
    fn ordered_free_vars_follow_first_occurrence() {
        let f = Fo::le(&y(), &x()).or(&Fo::pred("P", &z()));
        assert_eq!(f.free_vars_ordered(), vec![y(), x(), z()]);
    }

    #[test]
    fn rename_respects_binders() {
        let f = Fo::pred("P", &x()).and(&Fo::exists(&x(), &Fo::pred("Q", &x())));
        let g = f.rename_free(&x(), &y());
        assert_eq!(
            g,
            Fo::pred("P", &y()).and(&Fo::exists(&x(), &Fo::pred("Q", &x())))
        );
    }
}
