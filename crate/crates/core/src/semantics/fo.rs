use std::collections::BTreeSet;

use super::{check_names, EvalError};
use crate::structures::{Assignment, Structure};
use crate::syntax::{Fo, FoNode, Var};

pub(crate) fn check_fo_names(m: &Structure, f: &Fo) -> Result<(), EvalError> {
    let (mut preds, mut rels) = (BTreeSet::new(), BTreeSet::new());
    f.visit(&mut |g| match g.node() {
        FoNode::Pred(p, _) => {
            preds.insert(p.to_string());
        }
        FoNode::Rel(r, _, _) => {
            rels.insert(r.to_string());
        }
        _ => {}
    });
    check_names(preds, rels, m)
}

pub(crate) fn check_assignment(m: &Structure, f: &Fo, nu: &Assignment) -> Result<(), EvalError> {
    let vars: Vec<Var> = f.free_vars().into_iter().collect();
    check_assignment_for(m, &vars, nu)
}

pub(crate) fn check_assignment_for(
    m: &Structure,
    vars: &[Var],
    nu: &Assignment,
) -> Result<(), EvalError> {
    for v in vars {
        match nu.get(v) {
            None => return Err(EvalError::Unbound(v.clone())),
            Some(&value) if value >= m.size() => {
                return Err(EvalError::OutOfRange {
                    var: v.clone(),
                    value,
                    size: m.size(),
                })
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// Tarskian satisfaction `M, ν ⊨ Φ`.
pub fn eval_fo(m: &Structure, f: &Fo, nu: &Assignment) -> Result<bool, EvalError> {
    check_fo_names(m, f)?;
    check_assignment(m, f, nu)?;
    let mut env = nu.clone();
    Ok(holds(m, f, &mut env))
}

fn holds(m: &Structure, f: &Fo, env: &mut Assignment) -> bool {
    match f.node() {
        FoNode::Pred(p, x) => m.predicate(p).expect("checked").contains(env[x]),
        FoNode::Le(x, y) => env[x] <= env[y],
        FoNode::Eq(x, y) => env[x] == env[y],
        FoNode::Rel(r, x, y) => m.relation(r).expect("checked").contains(env[x], env[y]),
        FoNode::Or(a, b) => holds(m, a, env) || holds(m, b, env),
        FoNode::And(a, b) => holds(m, a, env) && holds(m, b, env),
        FoNode::Implies(a, b) => !holds(m, a, env) || holds(m, b, env),
        FoNode::Not(a) => !holds(m, a, env),
        FoNode::Exists(x, body) => quantify(m, x, body, env, true),
        FoNode::Forall(x, body) => quantify(m, x, body, env, false),
    }
}

fn quantify(m: &Structure, x: &Var, body: &Fo, env: &mut Assignment, existential: bool) -> bool {
    let saved = env.get(x).copied();
    let mut result = !existential;
    for v in 0..m.size() {
        env.insert(x.clone(), v);
        if holds(m, body, env) == existential {
            result = existential;
            break;
        }
    }
    match saved {
        Some(v) => env.insert(x.clone(), v),
        None => env.remove(x),
    };
    result
}

/// Every assignment of `vars` over `{0, ..., n-1}`, in lexicographic order
/// with the last variable varying fastest.
pub fn all_assignments(vars: &[Var], n: usize) -> impl Iterator<Item = Assignment> + '_ {
    let total = if vars.is_empty() {
        1
    } else if n == 0 {
        0
    } else {
        n.pow(vars.len() as u32)
    };
    (0..total).map(move |mut code| {
        let mut nu = Assignment::new();
        for v in vars.iter().rev() {
            nu.insert(v.clone(), code % n.max(1));
            code /= n.max(1);
        }
        nu
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// First assignment (in [`all_assignments`] order) on which the formulas
    /// disagree.
    Witness(Assignment),
}

/// Compares two formulas on one structure under every assignment of their
/// joint free variables.
pub fn fo_equiv_on(m: &Structure, f: &Fo, g: &Fo) -> Result<Equivalence, EvalError> {
    let vars: Vec<Var> = f.free_vars().union(&g.free_vars()).cloned().collect();
    check_fo_names(m, f)?;
    check_fo_names(m, g)?;
    for mut nu in all_assignments(&vars, m.size()) {
        if holds(m, f, &mut nu) != holds(m, g, &mut nu) {
            return Ok(Equivalence::Witness(nu));
        }
    }
    Ok(Equivalence::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_fo;
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

    fn at(x: usize) -> Assignment {
        [(var("x"), x)].into_iter().collect()
    }

    #[test]
    fn examples_on_m0() {
        let m = m0();
        let f = parse_fo("exists y. (x <= y & P(y))").unwrap();
        assert!(eval_fo(&m, &f, &at(3)).unwrap());
        assert!(eval_fo(&m, &f, &at(0)).unwrap());
        let g = parse_fo("forall y. x <= y").unwrap();
        assert!(eval_fo(&m, &g, &at(0)).unwrap());
        assert!(!eval_fo(&m, &g, &at(1)).unwrap());
    }

    #[test]
    fn errors() {
        let m = m0();
        let f = parse_fo("P(x) & y <= x").unwrap();
        assert_eq!(eval_fo(&m, &f, &at(0)), Err(EvalError::Unbound(var("y"))));
        let g = parse_fo("R(x)").unwrap();
        assert_eq!(
            eval_fo(&m, &g, &at(0)),
            Err(EvalError::UnknownPredicate("R".into()))
        );
        let h = parse_fo("P(x,x)").unwrap();
        assert_eq!(
            eval_fo(&m, &h, &at(0)),
            Err(EvalError::UnknownRelation("P".into()))
        );
        assert!(matches!(
            eval_fo(&m, &parse_fo("P(x)").unwrap(), &at(9)),
            Err(EvalError::OutOfRange { .. })
        ));
    }

    #[test]
    fn equivalence_witnesses() {
        let m = m0();
        let f = parse_fo("x <= y").unwrap();
        let g = parse_fo("!(y <= x & !y = x)").unwrap();
        assert_eq!(fo_equiv_on(&m, &f, &g).unwrap(), Equivalence::Equal);
        let p = parse_fo("P(x)").unwrap();
        let q = parse_fo("Q(x)").unwrap();
        assert_eq!(
            fo_equiv_on(&m, &p, &q).unwrap(),
            Equivalence::Witness(at(1))
        );
        let s = parse_fo("exists x. P(x)").unwrap();
        assert_eq!(fo_equiv_on(&m, &s, &s).unwrap(), Equivalence::Equal);
    }

    #[test]
    fn assignment_order() {
        let vars = [var("x"), var("y")];
        let all: Vec<_> = all_assignments(&vars, 2).collect();
        assert_eq!(all.len(), 4);
        assert_eq!(all[1][&var("y")], 1);
        assert_eq!(all[1][&var("x")], 0);
        assert_eq!(all_assignments(&[], 3).count(), 1);
    }
}
