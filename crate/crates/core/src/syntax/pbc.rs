use std::collections::BTreeSet;

use super::{Dialect, Path, Var};

/// A path formula applied to a pair of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAtom {
    pub path: Path,
    pub x: Var,
    pub y: Var,
}

impl PAtom {
    pub fn new(path: Path, x: &Var, y: &Var) -> Self {
        PAtom {
            path,
            x: x.clone(),
            y: y.clone(),
        }
    }

    pub fn mentions(&self, v: &Var) -> bool {
        &self.x == v || &self.y == v
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == self.y
    }
}

/// Positive boolean combination of path atoms. There is no negation
/// constructor; `Or`/`And` are n-ary and never empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pbc {
    Atom(PAtom),
    Or(Vec<Pbc>),
    And(Vec<Pbc>),
}

impl Pbc {
    pub fn atom(path: Path, x: &Var, y: &Var) -> Self {
        Pbc::Atom(PAtom::new(path, x, y))
    }

    /// Disjunction; a single child is returned unchanged.
    ///
    /// # Panics
    /// On an empty list.
    pub fn any(mut children: Vec<Pbc>) -> Self {
        assert!(!children.is_empty(), "empty disjunction");
        if children.len() == 1 {
            children.pop().unwrap()
        } else {
            Pbc::Or(children)
        }
    }

    /// Conjunction; a single child is returned unchanged.
    ///
    /// # Panics
    /// On an empty list.
    pub fn all(mut children: Vec<Pbc>) -> Self {
        assert!(!children.is_empty(), "empty conjunction");
        if children.len() == 1 {
            children.pop().unwrap()
        } else {
            Pbc::And(children)
        }
    }

    pub fn atoms(&self) -> Vec<&PAtom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a PAtom>) {
        match self {
            Pbc::Atom(a) => out.push(a),
            Pbc::Or(cs) | Pbc::And(cs) => cs.iter().for_each(|c| c.collect_atoms(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.atoms()
            .into_iter()
            .flat_map(|a| [a.x.clone(), a.y.clone()])
            .collect()
    }

    pub fn mentions(&self, v: &Var) -> bool {
        match self {
            Pbc::Atom(a) => a.mentions(v),
            Pbc::Or(cs) | Pbc::And(cs) => cs.iter().any(|c| c.mentions(v)),
        }
    }

    pub fn is_in(&self, dialect: Dialect) -> bool {
        self.atoms().iter().all(|a| a.path.is_in(dialect))
    }

    pub fn map_atoms(&self, f: &mut impl FnMut(&PAtom) -> Pbc) -> Pbc {
        match self {
            Pbc::Atom(a) => f(a),
            Pbc::Or(cs) => Pbc::Or(cs.iter().map(|c| c.map_atoms(f)).collect()),
            Pbc::And(cs) => Pbc::And(cs.iter().map(|c| c.map_atoms(f)).collect()),
        }
    }

    /// Number of atoms plus connectives.
    pub fn size(&self) -> usize {
        match self {
            Pbc::Atom(_) => 1,
            Pbc::Or(cs) | Pbc::And(cs) => 1 + cs.iter().map(Pbc::size).sum::<usize>(),
        }
    }

    /// True when no `Or` occurs below an `And`.
    pub fn is_dnf(&self) -> bool {
        fn conj(p: &Pbc) -> bool {
            match p {
                Pbc::Atom(_) => true,
                Pbc::And(cs) => cs.iter().all(conj),
                Pbc::Or(_) => false,
            }
        }
        match self {
            Pbc::Or(cs) => cs.iter().all(|c| match c {
                Pbc::Or(_) => c.is_dnf(),
                _ => conj(c),
            }),
            _ => conj(self),
        }
    }
}

fn push_unique(conj: &mut Vec<PAtom>, atom: &PAtom) {
    if !conj.contains(atom) {
        conj.push(atom.clone());
    }
}

fn subsumes(small: &[PAtom], big: &[PAtom]) -> bool {
    small.iter().all(|a| big.contains(a))
}

/// Drops repeated conjuncts and conjuncts absorbed by a smaller one.
fn absorb(mut terms: Vec<Vec<PAtom>>) -> Vec<Vec<PAtom>> {
    let mut out: Vec<Vec<PAtom>> = Vec::with_capacity(terms.len());
    terms.sort_by_key(Vec::len);
    for t in terms {
        if !out.iter().any(|kept| subsumes(kept, &t)) {
            out.push(t);
        }
    }
    out
}

/// Disjunctive normal form as a list of conjunctions. Duplicate atoms inside a
/// conjunction and absorbed conjunctions are removed; nothing else is
/// simplified.
pub fn pbc_to_dnf(p: &Pbc) -> Vec<Vec<PAtom>> {
    match p {
        Pbc::Atom(a) => vec![vec![a.clone()]],
        Pbc::Or(cs) => {
            let mut terms = Vec::new();
            for c in cs {
                for t in pbc_to_dnf(c) {
                    if !terms.contains(&t) {
                        terms.push(t);
                    }
                }
            }
            absorb(terms)
        }
        Pbc::And(cs) => {
            let mut acc: Vec<Vec<PAtom>> = vec![Vec::new()];
            for c in cs {
                let rhs = pbc_to_dnf(c);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for left in &acc {
                    for right in &rhs {
                        let mut t = left.clone();
                        right.iter().for_each(|a| push_unique(&mut t, a));
                        next.push(t);
                    }
                }
                acc = absorb(next);
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    fn at(name: &str) -> Pbc {
        Pbc::atom(Path::atom(name), &var("x"), &var("y"))
    }

    fn pa(name: &str) -> PAtom {
        PAtom::new(Path::atom(name), &var("x"), &var("y"))
    }

    #[test]
    fn dnf_examples() {
        assert_eq!(pbc_to_dnf(&at("a")), vec![vec![pa("a")]]);
        let p = Pbc::all(vec![Pbc::any(vec![at("a"), at("b")]), at("c")]);
        assert_eq!(
            pbc_to_dnf(&p),
            vec![vec![pa("a"), pa("c")], vec![pa("b"), pa("c")]]
        );
        let q = Pbc::all(vec![
            Pbc::any(vec![at("a"), at("b")]),
            Pbc::any(vec![at("c"), at("d")]),
        ]);
        assert_eq!(pbc_to_dnf(&q).len(), 4);
    }

    #[test]
    fn dnf_idempotence_and_absorption() {
        let p = Pbc::all(vec![at("a"), at("a")]);
        assert_eq!(pbc_to_dnf(&p), vec![vec![pa("a")]]);
        // a | (a & b) == a
        let q = Pbc::any(vec![at("a"), Pbc::all(vec![at("a"), at("b")])]);
        assert_eq!(pbc_to_dnf(&q), vec![vec![pa("a")]]);
    }

    #[test]
    fn dnf_shape() {
        let q = Pbc::all(vec![
            Pbc::any(vec![
                at("a"),
                Pbc::all(vec![at("b"), Pbc::any(vec![at("c"), at("d")])]),
            ]),
            at("e"),
        ]);
        assert!(!q.is_dnf());
        let flat = Pbc::any(
            pbc_to_dnf(&q)
                .into_iter()
                .map(|t| Pbc::all(t.into_iter().map(Pbc::Atom).collect()))
                .collect(),
        );
        assert!(flat.is_dnf());
    }
}
