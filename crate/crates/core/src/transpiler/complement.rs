use super::build::{image_reaches, reflexive, serial, subidentity, surjective, Builder};
use super::{Options, TranslateError};
use crate::syntax::{COp, Dialect, PAtom, Path, Pbc, State};

pub(crate) fn require(p: &Path, dialect: Dialect) -> Result<(), TranslateError> {
    if p.is_in(dialect) {
        Ok(())
    } else {
        Err(TranslateError::Dialect {
            path: p.to_string(),
            dialect,
        })
    }
}

/// Eight loop-fragment formulas whose union is the complement of `p` on
/// every interval-preserving structure, in this order:
///
/// 1. `test(!<p>true) . le`
/// 2. `test(!<p>true) . inv(le)`
/// 3. `le . test(!<inv(p)>true)`
/// 4. `inv(le) . test(!<inv(p)>true)`
/// 5. to 8. `c1(p)` .. `c4(p)`
pub fn complement_fragment(p: &Path) -> Result<[Path; 8], TranslateError> {
    require(p, Dialect::FragLoop)?;
    let no_succ = Path::test(&State::can(p).not());
    let no_pred = Path::test(&State::can(&p.inv()).not());
    Ok([
        no_succ.then(&Path::le()),
        no_succ.then(&Path::ge()),
        Path::le().then(&no_pred),
        Path::ge().then(&no_pred),
        Path::c(COp::C1, p),
        Path::c(COp::C2, p),
        Path::c(COp::C3, p),
        Path::c(COp::C4, p),
    ])
}

/// Positive atoms whose disjunction is the negation of `atom`.
///
/// Without simplification these are the eight [`complement_fragment`]
/// pieces at `(x, y)`. With it, a diagonal atom is negated inside a test,
/// pieces 1+2 and 3+4 are merged into tests on one variable, and pieces that
/// are empty on every linear order (for reflexive, serial, surjective or
/// test-like paths) are left out.
pub fn complement_atom(atom: &PAtom, opts: &Options) -> Result<Vec<PAtom>, TranslateError> {
    let (p, x, y) = (&atom.path, &atom.x, &atom.y);
    if !opts.simplify {
        let pieces = complement_fragment(p)?;
        return Ok(pieces.into_iter().map(|q| PAtom::new(q, x, y)).collect());
    }
    require(p, Dialect::FragLoop)?;
    let b = Builder { simplify: true };
    if x == y {
        return Ok(vec![PAtom::new(Path::test(&b.not(&b.loop_state(p))), x, x)]);
    }
    let mut out = Vec::with_capacity(6);
    if !serial(p) {
        out.push(PAtom::new(Path::test(&b.not(&b.can(p))), x, x));
    }
    if !surjective(p) {
        out.push(PAtom::new(Path::test(&b.not(&b.can(&b.inv(p)))), y, y));
    }
    // a piece is empty when the image or preimage always reaches the side
    // it asks for, or when the pair would sit on both sides of the diagonal
    let thin = reflexive(p) || subidentity(p);
    for op in COp::ALL {
        let blocked = (thin && matches!(op, COp::C1 | COp::C4))
            || image_reaches(p, !op.target_left(), false)
            || image_reaches(p, !op.source_left(), true);
        if blocked {
            continue;
        }
        out.push(PAtom::new(Path::c(op, p), x, y));
    }
    Ok(out)
}

/// De Morgan dual of a positive combination, with every negated atom
/// replaced by the disjunction of its eight complement pieces.
pub fn negate_pbc(p: &Pbc) -> Result<Pbc, TranslateError> {
    Ok(match p {
        Pbc::Atom(a) => {
            let pieces = complement_fragment(&a.path)?;
            Pbc::Or(
                pieces
                    .into_iter()
                    .map(|q| Pbc::atom(q, &a.x, &a.y))
                    .collect(),
            )
        }
        Pbc::Or(cs) => Pbc::And(cs.iter().map(negate_pbc).collect::<Result<_, _>>()?),
        Pbc::And(cs) => Pbc::Or(cs.iter().map(negate_pbc).collect::<Result<_, _>>()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_path;
    use crate::semantics::{eval_path, Evaluator};
    use crate::structures::{enumerate_ip_relations, Assignment, Relation, Structure};
    use crate::syntax::var;

    fn m1() -> Structure {
        Structure::new(4)
            .unwrap()
            .with_relation("a", [(1, 2), (2, 3)])
            .unwrap()
    }

    fn union_of(m: &Structure, ps: &[Path]) -> Relation {
        ps.iter().fold(Relation::empty(m.size()), |acc, p| {
            acc.union(&eval_path(m, p).unwrap())
        })
    }

    #[test]
    fn union_is_complement_on_m1() {
        let m = m1();
        let pieces = complement_fragment(&Path::atom("a")).unwrap();
        let u = union_of(&m, &pieces);
        assert_eq!(u.len(), 14);
        assert_eq!(u, eval_path(&m, &Path::atom("a")).unwrap().complement());
        // (0,0): 0 has no a-successor
        assert!(eval_path(&m, &pieces[0]).unwrap().contains(0, 0));
    }

    #[test]
    fn empty_relation_branch() {
        let m = Structure::new(3).unwrap().with_relation("a", []).unwrap();
        let pieces = complement_fragment(&Path::atom("a")).unwrap();
        assert_eq!(eval_path(&m, &pieces[0]).unwrap(), Relation::le(3));
        assert_eq!(union_of(&m, &pieces[..2]), Relation::full(3));
    }

    #[test]
    fn rejects_outside_fragment() {
        let p = Path::atom("a").union(&Path::le());
        assert!(matches!(
            complement_fragment(&p),
            Err(TranslateError::Dialect { .. })
        ));
    }

    #[test]
    fn negation_shapes() {
        let (x, y) = (var("x"), var("y"));
        let n = negate_pbc(&Pbc::atom(Path::le(), &x, &y)).unwrap();
        match &n {
            Pbc::Or(cs) => {
                assert_eq!(cs.len(), 8);
                assert_eq!(cs[7], Pbc::atom(Path::c(COp::C4, &Path::le()), &x, &y));
            }
            _ => panic!("expected a disjunction"),
        }
        let both = Pbc::all(vec![
            Pbc::atom(Path::le(), &x, &y),
            Pbc::atom(Path::atom("a"), &y, &x),
        ]);
        assert!(matches!(negate_pbc(&both).unwrap(), Pbc::Or(_)));
    }

    #[test]
    fn simplified_complement_is_exact_on_small_models() {
        let paths = [
            "a",
            "le",
            "inv(le)",
            "test(true)",
            "test(P)",
            "a . le",
            "inv(a) . test(P)",
            "c2(a)",
            "le . a . inv(le)",
            "inv(le) . test(P) . a . le",
            "inv(a . le)",
        ];
        let (x, y) = (var("x"), var("y"));
        for n in 1..=3 {
            for r in enumerate_ip_relations(n).unwrap() {
                for pmask in [0u32, 1, 2, 5] {
                    let m = Structure::new(n)
                        .unwrap()
                        .with_predicate("P", (0..n).filter(|i| pmask >> i & 1 == 1))
                        .unwrap()
                        .with_relation("a", r.pairs())
                        .unwrap();
                    let mut ev = Evaluator::new(&m);
                    for text in paths {
                        let p = parse_path(text).unwrap();
                        for (u, v) in [(&x, &y), (&x, &x)] {
                            let atom = PAtom::new(p.clone(), u, v);
                            let pieces = complement_atom(&atom, &Options::default()).unwrap();
                            let neg = Pbc::any(pieces.into_iter().map(Pbc::Atom).collect());
                            for a in 0..n {
                                for b in 0..n {
                                    let nu: Assignment =
                                        [(x.clone(), a), (y.clone(), b)].into_iter().collect();
                                    let pos = ev.pbc(&Pbc::Atom(atom.clone()), &nu).unwrap();
                                    assert_ne!(
                                        pos,
                                        ev.pbc(&neg, &nu).unwrap(),
                                        "{text} ({u},{v}) {m:?}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
