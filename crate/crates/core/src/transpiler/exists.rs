use super::build::Builder;
use super::complement::require;
use super::{Options, TranslateError};
use crate::syntax::{Dialect, Path, Pbc, State, Var};

/// `∃x. (φ(x) ∧ ⋀ πᵢ(yᵢ, x))`, with every atom oriented so that the
/// quantified variable is its second argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistsInstance {
    pub target: Var,
    pub atoms: Vec<(Path, Var)>,
    pub guard: State,
}

/// Replaces the existential by the conjunction over all ordered pairs
/// `(i, j)` of `(πᵢ . test(ψ) . inv(πⱼ))(yᵢ, yⱼ)`, where
/// `ψ = φ ∧ ⋀ <inv(πᵢ)>true`.
pub fn eliminate_exists(inst: &ExistsInstance, opts: &Options) -> Result<Pbc, TranslateError> {
    eliminate_pairs(inst, opts, false)
}

/// As [`eliminate_exists`]; with `off_diagonal` and at least two atoms the
/// pairs `(i, i)` are left out, since `(i, j)` holds through the same witness.
pub(crate) fn eliminate_pairs(
    inst: &ExistsInstance,
    opts: &Options,
    off_diagonal: bool,
) -> Result<Pbc, TranslateError> {
    if inst.atoms.is_empty() {
        return Err(TranslateError::NoAtoms);
    }
    for (p, _) in &inst.atoms {
        require(p, Dialect::FragLoop)?;
    }
    let b = Builder {
        simplify: opts.simplify,
    };
    let mut atoms: Vec<(Path, Var)> = Vec::with_capacity(inst.atoms.len());
    for a in &inst.atoms {
        if !opts.simplify || !atoms.contains(a) {
            atoms.push(a.clone());
        }
    }
    let mut psi = inst.guard.clone();
    let mut seen: Vec<State> = Vec::new();
    for (p, _) in &atoms {
        let reach = b.reach(&b.inv(p));
        if opts.simplify && seen.contains(&reach) {
            continue;
        }
        psi = b.and(&psi, &reach);
        seen.push(reach);
    }
    let test = Path::test(&psi);
    let heads: Vec<Path> = atoms.iter().map(|(p, _)| b.then(p, &test)).collect();
    let tails: Vec<Path> = atoms.iter().map(|(p, _)| b.inv(p)).collect();
    let mut out = Vec::with_capacity(atoms.len() * atoms.len());
    for (i, (_, yi)) in atoms.iter().enumerate() {
        for (j, (_, yj)) in atoms.iter().enumerate() {
            if (opts.prune_symmetric && j < i) || (off_diagonal && i == j && atoms.len() > 1) {
                continue;
            }
            out.push(Pbc::atom(b.then(&heads[i], &tails[j]), yi, yj));
        }
    }
    Ok(Pbc::all(out))
}

/// `∃x. φ(x)` as `(le . test(φ) . inv(le))(a, a) ∨ (inv(le) . test(φ) . le)(a, a)`
/// for any variable `a`: some point satisfying `φ` lies above or below `a`.
pub fn exists_empty_case(guard: &State, anchor: &Var) -> Pbc {
    let test = Path::test(guard);
    Pbc::any(vec![
        Pbc::atom(Path::le().then(&test).then(&Path::ge()), anchor, anchor),
        Pbc::atom(Path::ge().then(&test).then(&Path::le()), anchor, anchor),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_fo;
    use crate::semantics::{eval_fo, eval_pbc};
    use crate::structures::{Assignment, Structure};
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

    #[test]
    fn single_atom_instance() {
        let x1 = var("x1");
        let inst = ExistsInstance {
            target: var("x"),
            atoms: vec![(Path::le(), x1.clone())],
            guard: State::pred("P"),
        };
        let p = eliminate_exists(&inst, &Options::default()).unwrap();
        assert_eq!(
            p.to_string(),
            "[le . test(P & <inv(le)>true) . inv(le)](x1,x1)"
        );
        let m = m0();
        let fo = parse_fo("exists x. P(x) & x1 <= x").unwrap();
        for v in 0..4 {
            let nu: Assignment = [(x1.clone(), v)].into_iter().collect();
            assert_eq!(
                eval_pbc(&m, &p, &nu).unwrap(),
                eval_fo(&m, &fo, &nu).unwrap()
            );
        }
        let nu: Assignment = [(x1, 0)].into_iter().collect();
        assert!(eval_pbc(&m, &p, &nu).unwrap());
    }

    #[test]
    fn pair_count() {
        let inst = ExistsInstance {
            target: var("x"),
            atoms: vec![(Path::le(), var("y")), (Path::atom("a"), var("z"))],
            guard: State::tt(),
        };
        match eliminate_exists(&inst, &Options::verbatim()).unwrap() {
            Pbc::And(cs) => assert_eq!(cs.len(), 4),
            other => panic!("{other}"),
        }
        let pruned = Options {
            prune_symmetric: true,
            ..Options::default()
        };
        match eliminate_exists(&inst, &pruned).unwrap() {
            Pbc::And(cs) => assert_eq!(cs.len(), 3),
            other => panic!("{other}"),
        }
        let empty = ExistsInstance {
            atoms: vec![],
            ..inst
        };
        assert_eq!(
            eliminate_exists(&empty, &Options::default()),
            Err(TranslateError::NoAtoms)
        );
    }

    #[test]
    fn empty_case_is_anchor_independent() {
        let m = m0();
        let x1 = var("x1");
        let p = exists_empty_case(&State::pred("P"), &x1);
        let f = exists_empty_case(&State::ff(), &x1);
        for v in 0..4 {
            let nu: Assignment = [(x1.clone(), v)].into_iter().collect();
            assert!(eval_pbc(&m, &p, &nu).unwrap());
            assert!(!eval_pbc(&m, &f, &nu).unwrap());
        }
    }
}
