//! Emission of path and state formulas as first-order formulas over three
//! variable names.

use std::collections::HashMap;

use super::derived::expand_c;
use super::translate::fo_to_pbc;
use super::{Options, TranslateError};
use crate::syntax::{Fo, FreshNames, Path, PathNode, Pbc, State, StateNode, Var};

type Key = (usize, Var, Var, Var);

struct Emitter {
    simplify: bool,
    states: HashMap<Key, (State, Fo)>,
    paths: HashMap<Key, (Path, Fo)>,
}

impl Emitter {
    fn new(simplify: bool) -> Self {
        Emitter {
            simplify,
            states: HashMap::new(),
            paths: HashMap::new(),
        }
    }

    /// `φ` at `x`, with `y` and `z` free for reuse.
    fn state(&mut self, s: &State, x: &Var, y: &Var, z: &Var) -> Fo {
        let key = (s.ptr() as usize, x.clone(), y.clone(), z.clone());
        if let Some((_, f)) = self.states.get(&key) {
            return f.clone();
        }
        let f = match s.node() {
            StateNode::Pred(p) => Fo::pred(p, x),
            StateNode::True => Fo::eq(x, x),
            StateNode::False => Fo::eq(x, x).not(),
            StateNode::Not(a) => self.state(a, x, y, z).not(),
            StateNode::Or(a, b) => self.state(a, x, y, z).or(&self.state(b, x, y, z)),
            StateNode::And(a, b) => self.state(a, x, y, z).and(&self.state(b, x, y, z)),
            StateNode::Diamond(p, a) => {
                let step = self.path(p, x, y, z);
                Fo::exists(y, &step.and(&self.state(a, y, x, z)))
            }
            StateNode::Loop(p) => match p.node() {
                PathNode::Test(inner) if self.simplify => self.state(inner, x, y, z),
                _ => Fo::exists(y, &Fo::eq(x, y).and(&self.path(p, x, y, z))),
            },
        };
        self.states.insert(key, (s.clone(), f.clone()));
        f
    }

    /// `π` from `x` to `y`, with `z` free for reuse.
    fn path(&mut self, p: &Path, x: &Var, y: &Var, z: &Var) -> Fo {
        let key = (p.ptr() as usize, x.clone(), y.clone(), z.clone());
        if let Some((_, f)) = self.paths.get(&key) {
            return f.clone();
        }
        let f = match p.node() {
            PathNode::Atom(a) => Fo::rel(a, x, y),
            PathNode::Le => Fo::le(x, y),
            PathNode::Test(s) => {
                if self.simplify && matches!(s.node(), StateNode::True) {
                    Fo::eq(x, y)
                } else {
                    Fo::eq(x, y).and(&self.state(s, x, y, z))
                }
            }
            PathNode::Converse(a) => self.path(a, y, x, z),
            PathNode::Compose(a, b) => {
                let left = self.path(a, x, z, y);
                Fo::exists(z, &left.and(&self.path(b, z, y, x)))
            }
            PathNode::Union(a, b) => self.path(a, x, y, z).or(&self.path(b, x, y, z)),
            PathNode::Inter(a, b) => self.path(a, x, y, z).and(&self.path(b, x, y, z)),
            PathNode::Complement(a) => self.path(a, x, y, z).not(),
            PathNode::C(..) => self.path(&expand_c(p), x, y, z),
        };
        self.paths.insert(key, (p.clone(), f.clone()));
        f
    }
}

fn distinct(vars: &[&Var]) -> Result<(), TranslateError> {
    for (i, a) in vars.iter().enumerate() {
        if vars[..i].contains(a) {
            return Err(TranslateError::NotDistinct(
                vars.iter().map(|v| (*v).clone()).collect(),
            ));
        }
    }
    Ok(())
}

/// A formula with the single free variable `pool[0]` that holds exactly at
/// the points satisfying `s`. Only the three pool names occur in it.
pub fn pdl_state_to_fo3(s: &State, pool: [&Var; 3]) -> Result<Fo, TranslateError> {
    distinct(&pool)?;
    Ok(Emitter::new(false).state(s, pool[0], pool[1], pool[2]))
}

/// A formula in `x` and `y` that holds exactly on the pairs of `p`; `spare`
/// is the only other name used.
pub fn pdl_path_to_fo3(p: &Path, x: &Var, y: &Var, spare: &Var) -> Result<Fo, TranslateError> {
    distinct(&[x, y, spare])?;
    Ok(Emitter::new(false).path(p, x, y, spare))
}

/// A formula translated through path atoms, with the emitted formula for
/// every atom kept alongside.
#[derive(Clone, Debug)]
pub struct Fo3Translation {
    pub pbc: Pbc,
    /// One formula per atom of `pbc`, in the order of [`Pbc::atoms`].
    pub atoms: Vec<Fo>,
    pub formula: Fo,
}

/// Translates `f` into a boolean combination of formulas over at most three
/// variable names each. When `f` has at most three free variables the whole
/// result uses at most three names.
pub fn translate_fo3(f: &Fo, opts: &Options) -> Result<Fo3Translation, TranslateError> {
    let pbc = fo_to_pbc(f, opts)?;
    let mut pool: Vec<Var> = f.free_vars().into_iter().chain(pbc.vars()).collect();
    pool.sort();
    pool.dedup();
    let mut names = FreshNames::avoiding(f.all_vars().into_iter().chain(pool.iter().cloned()));
    while pool.len() < 3 {
        pool.push(names.fresh());
    }
    let mut em = Emitter::new(opts.simplify);
    let mut atoms = Vec::new();
    for a in pbc.atoms() {
        let mut others = pool.iter().filter(|v| **v != a.x && **v != a.y);
        let first = others.next().expect("pool has three names");
        let emitted = if a.x != a.y {
            match a.path.node() {
                PathNode::Test(s) if opts.simplify && matches!(s.node(), StateNode::True) => {
                    Fo::eq(&a.x, &a.y)
                }
                _ => em.path(&a.path, &a.x, &a.y, first),
            }
        } else {
            let second = others.next().expect("pool has three names");
            match a.path.node() {
                PathNode::Test(s) if opts.simplify => em.state(s, &a.x, first, second),
                _ => {
                    let body = Fo::eq(&a.x, first).and(&em.path(&a.path, &a.x, first, second));
                    Fo::exists(first, &body)
                }
            }
        };
        atoms.push(emitted);
    }
    let mut next = 0;
    let formula = assemble(&pbc, &atoms, &mut next);
    Ok(Fo3Translation {
        pbc,
        atoms,
        formula,
    })
}

fn assemble(p: &Pbc, atoms: &[Fo], next: &mut usize) -> Fo {
    match p {
        Pbc::Atom(_) => {
            *next += 1;
            atoms[*next - 1].clone()
        }
        Pbc::And(cs) | Pbc::Or(cs) => {
            let conj = matches!(p, Pbc::And(_));
            let mut parts = cs
                .iter()
                .map(|c| assemble(c, atoms, next))
                .collect::<Vec<_>>()
                .into_iter();
            let first = parts.next().expect("nonempty");
            parts.fold(first, |acc, g| if conj { acc.and(&g) } else { acc.or(&g) })
        }
    }
}

/// [`translate_fo3`] without the intermediate results.
pub fn fo_to_fo3(f: &Fo, opts: &Options) -> Result<Fo, TranslateError> {
    Ok(translate_fo3(f, opts)?.formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_fo, parse_path, parse_state};
    use crate::semantics::{all_assignments, eval_fo, eval_path, eval_state};
    use crate::structures::{enumerate_ip_relations, Assignment, PointSet, Relation, Structure};
    use crate::syntax::var;

    fn xyz() -> (Var, Var, Var) {
        (var("x"), var("y"), var("z"))
    }

    fn m1() -> Structure {
        Structure::new(4)
            .unwrap()
            .with_relation("a", [(1, 2), (2, 3)])
            .unwrap()
    }

    fn path_relation(m: &Structure, f: &Fo, x: &Var, y: &Var) -> Relation {
        let mut r = Relation::empty(m.size());
        for a in 0..m.size() {
            for b in 0..m.size() {
                let nu: Assignment = [(x.clone(), a), (y.clone(), b)].into_iter().collect();
                if eval_fo(m, f, &nu).unwrap() {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    #[test]
    fn unfolding_examples() {
        let (x, y, z) = xyz();
        let s = parse_state("<a . le>P").unwrap();
        assert_eq!(
            pdl_state_to_fo3(&s, [&x, &y, &z]).unwrap().to_string(),
            "exists y. (exists z. a(x,z) & z <= y) & P(y)"
        );
        let p = parse_path("a . le").unwrap();
        assert_eq!(
            pdl_path_to_fo3(&p, &x, &y, &z).unwrap().to_string(),
            "exists z. a(x,z) & z <= y"
        );
        let q = parse_path("inv(a)").unwrap();
        assert_eq!(
            pdl_path_to_fo3(&q, &x, &y, &z).unwrap().to_string(),
            "a(y,x)"
        );
        assert_eq!(
            pdl_state_to_fo3(&State::pred("P"), [&x, &y, &z])
                .unwrap()
                .to_string(),
            "P(x)"
        );
        assert!(matches!(
            pdl_path_to_fo3(&p, &x, &x, &z),
            Err(TranslateError::NotDistinct(_))
        ));
    }

    #[test]
    fn c2_on_m1() {
        let (x, y, z) = xyz();
        let f = pdl_path_to_fo3(&parse_path("c2(a)").unwrap(), &x, &y, &z).unwrap();
        assert!(f.count_vars() <= 3);
        assert_eq!(path_relation(&m1(), &f, &x, &y).to_string(), "(2,2)");
    }

    #[test]
    fn emission_matches_pdl_semantics_on_small_structures() {
        let (x, y, z) = xyz();
        let paths = [
            "a . le",
            "test(loop(a . inv(a))) . le",
            "c1(a) | comp(inv(a))",
            "test(<a>P) . a & le",
            "c4(a . le)",
        ];
        for n in 1..=3 {
            for r in enumerate_ip_relations(n).unwrap() {
                let m = Structure::new(n)
                    .unwrap()
                    .with_predicate("P", PointSet::range(0, n / 2))
                    .unwrap()
                    .with_relation("a", r.pairs())
                    .unwrap();
                for text in paths {
                    let p = parse_path(text).unwrap();
                    let f = pdl_path_to_fo3(&p, &x, &y, &z).unwrap();
                    assert!(f.count_vars() <= 3);
                    assert_eq!(
                        path_relation(&m, &f, &x, &y),
                        eval_path(&m, &p).unwrap(),
                        "{text}"
                    );
                    let s = State::loop_of(&p);
                    let g = pdl_state_to_fo3(&s, [&x, &y, &z]).unwrap();
                    let pts: PointSet = (0..n)
                        .filter(|&v| {
                            eval_fo(&m, &g, &[(x.clone(), v)].into_iter().collect()).unwrap()
                        })
                        .collect();
                    assert_eq!(pts, eval_state(&m, &s).unwrap(), "{text}");
                }
            }
        }
    }

    #[test]
    fn fo3_examples() {
        let d = Options::default();
        assert_eq!(
            fo_to_fo3(&parse_fo("P(x)").unwrap(), &d)
                .unwrap()
                .to_string(),
            "P(x)"
        );
        let f = parse_fo("exists y. exists z. exists w. x <= y & y <= z & z <= w & P(w)").unwrap();
        let t = translate_fo3(&f, &d).unwrap();
        assert!(t.atoms.iter().all(|a| a.count_vars() <= 3));
        assert!(t.formula.count_vars() <= 3);
        for n in 1..=3 {
            for bits in 0..(1u128 << n) {
                let m = Structure::new(n)
                    .unwrap()
                    .with_predicate("P", PointSet::from_bits(bits))
                    .unwrap();
                for nu in all_assignments(&[var("x")], n) {
                    assert_eq!(
                        eval_fo(&m, &f, &nu).unwrap(),
                        eval_fo(&m, &t.formula, &nu).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sentences_stay_within_three_names() {
        let f = parse_fo("exists x. forall y. (a(x,y) | exists z. (z <= y & P(z)))").unwrap();
        let t = translate_fo3(&f, &Options::default()).unwrap();
        assert!(t.formula.count_vars() <= 3);
    }
}
