//! Greedy counterexample minimization.

use super::{Claim, Witness};
use crate::structures::{Assignment, Relation};
use crate::syntax::{Fo, FoNode};
use crate::transpiler::translation_vars;

/// Formulas obtained by replacing one subformula with one of its children,
/// outermost replacements first.
fn prunings(f: &Fo) -> Vec<Fo> {
    let wrap = |children: Vec<Fo>, rebuild: &dyn Fn(&Fo) -> Fo| -> Vec<Fo> {
        children.iter().map(rebuild).collect()
    };
    match f.node() {
        FoNode::Not(a) => {
            let mut out = vec![a.clone()];
            out.extend(wrap(prunings(a), &|g| g.not()));
            out
        }
        FoNode::Exists(x, a) | FoNode::Forall(x, a) => {
            let universal = matches!(f.node(), FoNode::Forall(..));
            let mut out = vec![a.clone()];
            out.extend(wrap(prunings(a), &|g| {
                if universal {
                    Fo::forall(x, g)
                } else {
                    Fo::exists(x, g)
                }
            }));
            out
        }
        FoNode::Or(a, b) | FoNode::And(a, b) | FoNode::Implies(a, b) => {
            let join = |l: &Fo, r: &Fo| match f.node() {
                FoNode::Or(..) => l.or(r),
                FoNode::And(..) => l.and(r),
                _ => l.implies(r),
            };
            let mut out = vec![a.clone(), b.clone()];
            out.extend(wrap(prunings(a), &|g| join(g, b)));
            out.extend(wrap(prunings(b), &|g| join(a, g)));
            out
        }
        _ => vec![],
    }
}

/// The assignment restricted to the variables `f` needs, unassigned ones
/// set to the first point.
fn fit_assignment(nu: &Assignment, f: &Fo) -> Assignment {
    translation_vars(f)
        .into_iter()
        .map(|v| (v.clone(), nu.get(&v).copied().unwrap_or(0)))
        .collect()
}

fn candidates(w: &Witness) -> Vec<Witness> {
    let mut out = Vec::new();
    if let Claim::Translation(f, opts) = &w.claim {
        for g in prunings(f) {
            out.push(Witness {
                claim: Claim::Translation(g.clone(), *opts),
                assignment: fit_assignment(&w.assignment, &g),
                ..w.clone()
            });
        }
    }
    let m = &w.structure;
    let used: Vec<usize> = w.assignment.values().copied().collect();
    if m.size() > 1 {
        for p in (0..m.size()).rev().filter(|p| !used.contains(p)) {
            let assignment = w
                .assignment
                .iter()
                .map(|(v, &a)| (v.clone(), if a > p { a - 1 } else { a }))
                .collect();
            out.push(Witness {
                structure: m.drop_point(p),
                assignment,
                ..w.clone()
            });
        }
    }
    for (name, r) in m.relations() {
        for (a, b) in r.pairs() {
            let mut smaller: Relation = r.clone();
            smaller.remove(a, b);
            let mut s = m.clone();
            s.set_relation(name, smaller).expect("existing name");
            out.push(Witness {
                structure: s,
                ..w.clone()
            });
        }
    }
    for (name, set) in m.predicates() {
        for p in set.iter() {
            let mut s = m.clone();
            s.set_predicate(name, set.minus(crate::structures::PointSet::singleton(p)))
                .expect("existing name");
            out.push(Witness {
                structure: s,
                ..w.clone()
            });
        }
    }
    out
}

/// Repeatedly applies the first simplification that keeps the failure:
/// pruning the formula, dropping a point, dropping a relation pair, or
/// dropping a point from a predicate. Structures that started out
/// interval-preserving stay so. The result is a fixpoint.
pub fn shrink(w: &Witness) -> Witness {
    let keep_ip = w.structure.is_ip();
    let mut current = w.clone();
    'outer: loop {
        for c in candidates(&current) {
            if (!keep_ip || c.structure.is_ip()) && c.replays() {
                current = c;
                continue 'outer;
            }
        }
        return current;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{exhaustive_equiv, fuzz_equiv, FoWeights, FuzzConfig};
    use crate::parser::parse_fo;
    use crate::syntax::Signature;

    #[test]
    fn minimal_witness_is_a_fixpoint() {
        let v =
            exhaustive_equiv(&parse_fo("P(x)").unwrap(), &parse_fo("Q(x)").unwrap(), 2).unwrap();
        let w = v.witness.unwrap();
        let s = shrink(&w);
        assert_eq!(s.structure, w.structure);
        assert_eq!(s.assignment, w.assignment);
    }

    #[test]
    fn shrinking_keeps_failure_and_never_grows() {
        let cfg = FuzzConfig {
            allow_non_ip: true,
            weights: FoWeights::NEGATION_HEAVY,
            signature: Signature::new(["P"], ["a"]).unwrap(),
            shrink: false,
            ..FuzzConfig::new(11, 300)
        };
        let w = fuzz_equiv(&cfg).unwrap().witness.expect("non-IP run fails");
        let s = shrink(&w);
        assert!(s.replays());
        assert!(s.structure.size() <= w.structure.size());
        assert!(s.claim.left().size() <= w.claim.left().size());
        let again = shrink(&s);
        assert_eq!(again.structure, s.structure);
        assert_eq!(again.claim, s.claim);
    }

    #[test]
    fn shrunk_ip_structures_stay_ip() {
        // a formula and a hand-made wrong translation claim; the shrinker
        // must never leave the interval-preserving world
        let f = parse_fo("exists y. a(x,y) & !P(y)").unwrap();
        let g = parse_fo("exists y. a(x,y)").unwrap();
        let v = exhaustive_equiv(&f, &g, 3).unwrap();
        let s = shrink(&v.witness.unwrap());
        assert!(s.structure.is_ip());
        assert!(s.replays());
    }
}
