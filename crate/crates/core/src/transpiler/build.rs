//! Constructors that apply the local rewrites when simplification is on, and
//! a few syntactic facts about path formulas that hold on every linear
//! order.

use crate::syntax::{Path, PathNode, State, StateNode};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Builder {
    pub simplify: bool,
}

fn is_test_true(p: &Path) -> bool {
    matches!(p.node(), PathNode::Test(s) if matches!(s.node(), StateNode::True))
}

impl Builder {
    pub fn then(self, p: &Path, q: &Path) -> Path {
        if self.simplify {
            if is_test_true(p) {
                return q.clone();
            }
            if is_test_true(q) {
                return p.clone();
            }
        }
        p.then(q)
    }

    pub fn inv(self, p: &Path) -> Path {
        if self.simplify {
            match p.node() {
                PathNode::Converse(q) => return q.clone(),
                PathNode::Test(_) => return p.clone(),
                _ => {}
            }
        }
        p.inv()
    }

    pub fn inter(self, p: &Path, q: &Path) -> Path {
        if self.simplify && p == q {
            return p.clone();
        }
        p.inter(q)
    }

    pub fn union(self, p: &Path, q: &Path) -> Path {
        if self.simplify && p == q {
            return p.clone();
        }
        p.union(q)
    }

    pub fn and(self, a: &State, b: &State) -> State {
        if self.simplify {
            if matches!(a.node(), StateNode::True) || a == b {
                return b.clone();
            }
            if matches!(b.node(), StateNode::True) {
                return a.clone();
            }
            if is_false(a) || is_false(b) || complementary(a, b) {
                return State::ff();
            }
        }
        a.and(b)
    }

    pub fn or(self, a: &State, b: &State) -> State {
        if self.simplify {
            if is_false(a) || a == b {
                return b.clone();
            }
            if is_false(b) {
                return a.clone();
            }
            if matches!(a.node(), StateNode::True)
                || matches!(b.node(), StateNode::True)
                || complementary(a, b)
            {
                return State::tt();
            }
        }
        a.or(b)
    }

    /// `<p>s`; a test `<test(φ)>s` becomes `φ & s`, and `<p>true` is `true`
    /// when every point has a `p`-successor.
    pub fn diamond(self, p: &Path, s: &State) -> State {
        if self.simplify {
            if is_false(s) {
                return State::ff();
            }
            if matches!(s.node(), StateNode::True) && serial(p) {
                return State::tt();
            }
            if let PathNode::Test(t) = p.node() {
                return self.and(t, s);
            }
        }
        State::diamond(p, s)
    }

    /// `<p>true`
    pub fn can(self, p: &Path) -> State {
        self.diamond(p, &State::tt())
    }

    /// `<p>true` with tests folded but nothing else, as written in the
    /// middle test of an eliminated existential.
    pub fn reach(self, p: &Path) -> State {
        match p.node() {
            PathNode::Test(t) if self.simplify => t.clone(),
            _ => State::can(p),
        }
    }

    /// Conjunction of a list, folded to the left; `true` when empty.
    pub fn and_all(self, parts: impl IntoIterator<Item = State>) -> State {
        let mut acc: Option<State> = None;
        for s in parts {
            acc = Some(match acc {
                None => s,
                Some(a) => self.and(&a, &s),
            });
        }
        acc.unwrap_or_else(State::tt)
    }

    /// The state formula true at `a` iff `(a, a)` is in `p`. With
    /// simplification, `test(φ)` folds to `φ`, `π . test(φ) . inv(π)` to
    /// `<π>φ` and `π . inv(π)` to `<π>true`.
    pub fn loop_state(self, p: &Path) -> State {
        if !self.simplify {
            return State::loop_of(p);
        }
        match p.node() {
            PathNode::Test(s) => s.clone(),
            PathNode::Compose(head, tail) => {
                if let PathNode::Compose(q, t) = head.node() {
                    if let PathNode::Test(s) = t.node() {
                        if &self.inv(q) == tail {
                            // every b reached through q satisfies <inv(q)>true
                            let reach = State::can(tail);
                            let parts = conjuncts(s).into_iter().filter(|c| c != &reach);
                            return self.diamond(q, &self.and_all(parts));
                        }
                    }
                }
                if &self.inv(head) == tail {
                    return self.can(head);
                }
                State::loop_of(p)
            }
            _ => State::loop_of(p),
        }
    }

    pub fn not(self, s: &State) -> State {
        if self.simplify {
            match s.node() {
                StateNode::Not(inner) => return inner.clone(),
                StateNode::True => return State::ff(),
                StateNode::False => return State::tt(),
                _ => {}
            }
        }
        s.not()
    }
}

fn is_false(s: &State) -> bool {
    matches!(s.node(), StateNode::False)
}

fn complementary(a: &State, b: &State) -> bool {
    matches!(a.node(), StateNode::Not(x) if x == b)
        || matches!(b.node(), StateNode::Not(x) if x == a)
}

pub(crate) fn conjuncts(s: &State) -> Vec<State> {
    match s.node() {
        StateNode::And(a, b) => {
            let mut out = conjuncts(a);
            out.extend(conjuncts(b));
            out
        }
        _ => vec![s.clone()],
    }
}

/// `(a, a)` is in the relation for every `a`.
pub(crate) fn reflexive(p: &Path) -> bool {
    match p.node() {
        PathNode::Le => true,
        PathNode::Test(s) => matches!(s.node(), StateNode::True),
        PathNode::Converse(q) => reflexive(q),
        PathNode::Compose(a, b) | PathNode::Inter(a, b) => reflexive(a) && reflexive(b),
        PathNode::Union(a, b) => reflexive(a) || reflexive(b),
        _ => false,
    }
}

/// Every point has a successor.
pub(crate) fn serial(p: &Path) -> bool {
    reflexive(p)
        || match p.node() {
            PathNode::Converse(q) => surjective(q),
            PathNode::Compose(a, b) => serial(a) && serial(b),
            PathNode::Union(a, b) => serial(a) || serial(b),
            _ => false,
        }
}

/// Every point has a predecessor.
pub(crate) fn surjective(p: &Path) -> bool {
    reflexive(p)
        || match p.node() {
            PathNode::Converse(q) => serial(q),
            PathNode::Compose(a, b) => surjective(a) && surjective(b),
            PathNode::Union(a, b) => surjective(a) || surjective(b),
            _ => false,
        }
}

/// The relation is contained in the identity.
pub(crate) fn subidentity(p: &Path) -> bool {
    match p.node() {
        PathNode::Test(_) => true,
        PathNode::Converse(q) => subidentity(q),
        PathNode::Compose(a, b) => subidentity(a) && subidentity(b),
        PathNode::Inter(a, b) => subidentity(a) || subidentity(b),
        PathNode::Union(a, b) => subidentity(a) && subidentity(b),
        _ => false,
    }
}

/// Every nonempty image of the relation (of its converse when `conv` is set)
/// contains the last point when `top` is set, the first point otherwise.
pub(crate) fn image_reaches(p: &Path, top: bool, conv: bool) -> bool {
    match p.node() {
        PathNode::Le => top != conv,
        PathNode::Converse(q) => image_reaches(q, top, !conv),
        PathNode::Compose(a, b) => {
            if conv {
                image_reaches(a, top, true)
            } else {
                image_reaches(b, top, false)
            }
        }
        PathNode::Union(a, b) => image_reaches(a, top, conv) && image_reaches(b, top, conv),
        _ => false,
    }
}
