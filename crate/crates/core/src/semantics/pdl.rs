use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::{check_names, EvalError};
use crate::structures::{Assignment, PointSet, Relation, Structure};
use crate::syntax::{COp, PAtom, Path, PathNode, Pbc, State, StateNode};

/// Memoizing evaluator for state and path formulas over one structure.
/// Subformulas are cached by node identity, so shared subterms are evaluated
/// once.
pub struct Evaluator<'m> {
    m: &'m Structure,
    le: Rc<Relation>,
    states: HashMap<*const StateNode, (State, PointSet)>,
    paths: HashMap<*const PathNode, (Path, Rc<Relation>)>,
}

impl<'m> Evaluator<'m> {
    pub fn new(m: &'m Structure) -> Self {
        Evaluator {
            m,
            le: Rc::new(Relation::le(m.size())),
            states: HashMap::new(),
            paths: HashMap::new(),
        }
    }

    pub fn structure(&self) -> &'m Structure {
        self.m
    }

    // A cached formula had its names checked when it was first evaluated.
    pub fn state(&mut self, s: &State) -> Result<PointSet, EvalError> {
        if !self.states.contains_key(&s.ptr()) {
            let (mut preds, mut rels) = (BTreeSet::new(), BTreeSet::new());
            s.collect_names(&mut preds, &mut rels);
            check_names(preds, rels, self.m)?;
        }
        Ok(self.eval_state(s))
    }

    pub fn path(&mut self, p: &Path) -> Result<Rc<Relation>, EvalError> {
        if !self.paths.contains_key(&p.ptr()) {
            let (mut preds, mut rels) = (BTreeSet::new(), BTreeSet::new());
            p.collect_names(&mut preds, &mut rels);
            check_names(preds, rels, self.m)?;
        }
        Ok(self.eval_path(p))
    }

    /// Truth of a positive boolean combination under `nu`.
    pub fn pbc(&mut self, p: &Pbc, nu: &Assignment) -> Result<bool, EvalError> {
        for v in p.vars() {
            match nu.get(&v) {
                None => return Err(EvalError::Unbound(v)),
                Some(&value) if value >= self.m.size() => {
                    return Err(EvalError::OutOfRange {
                        var: v,
                        value,
                        size: self.m.size(),
                    })
                }
                Some(_) => {}
            }
        }
        let (mut preds, mut rels) = (BTreeSet::new(), BTreeSet::new());
        for a in p.atoms() {
            if !self.paths.contains_key(&a.path.ptr()) {
                a.path.collect_names(&mut preds, &mut rels);
            }
        }
        check_names(preds, rels, self.m)?;
        Ok(self.pbc_holds(p, nu))
    }

    fn pbc_holds(&mut self, p: &Pbc, nu: &Assignment) -> bool {
        match p {
            Pbc::Atom(PAtom { path, x, y }) => self.eval_path(path).contains(nu[x], nu[y]),
            Pbc::Or(cs) => cs.iter().any(|c| self.pbc_holds(c, nu)),
            Pbc::And(cs) => cs.iter().all(|c| self.pbc_holds(c, nu)),
        }
    }

    fn eval_state(&mut self, s: &State) -> PointSet {
        if let Some((_, v)) = self.states.get(&s.ptr()) {
            return *v;
        }
        let n = self.m.size();
        let v = match s.node() {
            StateNode::Pred(p) => self.m.predicate(p).expect("checked"),
            StateNode::True => PointSet::full(n),
            StateNode::False => PointSet::EMPTY,
            StateNode::Not(a) => self.eval_state(a).complement(n),
            StateNode::Or(a, b) => self.eval_state(a).union(self.eval_state(b)),
            StateNode::And(a, b) => self.eval_state(a).inter(self.eval_state(b)),
            StateNode::Diamond(p, a) => {
                let target = self.eval_state(a);
                self.eval_path(p).preimage(target)
            }
            StateNode::Loop(p) => self.eval_path(p).diagonal(),
        };
        self.states.insert(s.ptr(), (s.clone(), v));
        v
    }

    fn eval_path(&mut self, p: &Path) -> Rc<Relation> {
        if let Some((_, r)) = self.paths.get(&p.ptr()) {
            return r.clone();
        }
        let n = self.m.size();
        let r = match p.node() {
            PathNode::Atom(a) => Rc::new(self.m.relation(a).expect("checked").clone()),
            PathNode::Le => self.le.clone(),
            PathNode::Test(s) => {
                let set = self.eval_state(s);
                Rc::new(Relation::identity(n).restrict_source(set))
            }
            PathNode::Converse(a) => Rc::new(self.eval_path(a).converse()),
            PathNode::Compose(a, b) => Rc::new(self.eval_path(a).compose(&self.eval_path(b))),
            PathNode::Union(a, b) => Rc::new(self.eval_path(a).union(&self.eval_path(b))),
            PathNode::Inter(a, b) => Rc::new(self.eval_path(a).intersect(&self.eval_path(b))),
            PathNode::Complement(a) => Rc::new(self.eval_path(a).complement()),
            PathNode::C(op, a) => Rc::new(c_direct(*op, &self.eval_path(a))),
        };
        self.paths.insert(p.ptr(), (p.clone(), r.clone()));
        r
    }
}

/// `c1..c4` straight from their characterization: `(a, b)` is kept when
/// `R(a)` and `R⁻¹(b)` are nonempty and `b`, resp. `a`, lies strictly on the
/// side of them selected by `op`.
fn c_direct(op: COp, r: &Relation) -> Relation {
    let n = r.size();
    let inv = r.converse();
    let full = PointSet::full(n);
    // points b that lie on the required side of R⁻¹(b) relative to each a
    let rows = (0..n)
        .map(|a| {
            let image = r.row(a);
            if image.is_empty() {
                return PointSet::EMPTY;
            }
            let targets = if op.target_left() {
                image.below()
            } else {
                image.above()
            }
            .inter(full);
            targets
                .iter()
                .filter(|&b| {
                    let pre = inv.row(b);
                    match (pre.min(), pre.max()) {
                        (Some(lo), Some(hi)) => {
                            if op.source_left() {
                                a < lo
                            } else {
                                a > hi
                            }
                        }
                        _ => false,
                    }
                })
                .collect()
        })
        .collect();
    Relation::from_rows(rows)
}

pub fn eval_state(m: &Structure, s: &State) -> Result<PointSet, EvalError> {
    Evaluator::new(m).state(s)
}

pub fn eval_path(m: &Structure, p: &Path) -> Result<Relation, EvalError> {
    Evaluator::new(m).path(p).map(|r| (*r).clone())
}

pub fn eval_pbc(m: &Structure, p: &Pbc, nu: &Assignment) -> Result<bool, EvalError> {
    Evaluator::new(m).pbc(p, nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_path, parse_pbc, parse_state};
    use crate::syntax::var;

    fn m0() -> Structure {
        Structure::new(4)
            .unwrap()
            .with_predicate("P", [1, 3])
            .unwrap()
            .with_predicate("Q", [2])
            .unwrap()
            .with_relation("a", [(0, 2), (1, 2), (1, 3)])
            .unwrap()
    }

    fn m1() -> Structure {
        Structure::new(4)
            .unwrap()
            .with_relation("a", [(1, 2), (2, 3)])
            .unwrap()
    }

    fn path(m: &Structure, text: &str) -> String {
        eval_path(m, &parse_path(text).unwrap())
            .unwrap()
            .to_string()
    }

    fn state(m: &Structure, text: &str) -> String {
        eval_state(m, &parse_state(text).unwrap())
            .unwrap()
            .to_string()
    }

    #[test]
    fn state_examples() {
        let m = m0();
        assert_eq!(state(&m, "<a>Q"), "0 1");
        assert_eq!(state(&m, "loop(le)"), "0 1 2 3");
        assert_eq!(state(&m, "!P"), "0 2");
        assert_eq!(state(&m, "false | P & true"), "1 3");
    }

    #[test]
    fn path_examples() {
        let m = m1();
        assert_eq!(path(&m, "c3(a)"), "(1,3)");
        assert_eq!(path(&m, "c2(a)"), "(2,2)");
        assert_eq!(path(&m, "c1(a)"), "");
        assert_eq!(path(&m, "c4(a)"), "");
        assert_eq!(path(&m, "inv(c2(inv(a)))"), "(1,3)");
        assert_eq!(path(&m0(), "a . le"), "(0,2) (0,3) (1,2) (1,3)");
        assert_eq!(
            eval_path(&m, &parse_path("test(true)").unwrap()).unwrap(),
            Relation::identity(4)
        );
    }

    #[test]
    fn unknown_names() {
        let m = m1();
        assert_eq!(
            eval_state(&m, &parse_state("P").unwrap()),
            Err(EvalError::UnknownPredicate("P".into()))
        );
        assert_eq!(
            eval_path(&m, &parse_path("b").unwrap()),
            Err(EvalError::UnknownRelation("b".into()))
        );
    }

    #[test]
    fn pbc_truth() {
        let m = m0();
        let p = parse_pbc("[a](x,y) & [le](y,y) | [test(Q)](x,x)").unwrap();
        let nu: Assignment = [(var("x"), 1), (var("y"), 3)].into_iter().collect();
        assert!(eval_pbc(&m, &p, &nu).unwrap());
        let nu: Assignment = [(var("x"), 2), (var("y"), 0)].into_iter().collect();
        assert!(eval_pbc(&m, &p, &nu).unwrap());
        let nu: Assignment = [(var("x"), 3), (var("y"), 0)].into_iter().collect();
        assert!(!eval_pbc(&m, &p, &nu).unwrap());
        assert!(eval_pbc(&m, &p, &Assignment::new()).is_err());
    }
}
