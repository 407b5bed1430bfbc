//! The main recursion: prenex form, negation handling, and elimination of
//! quantifiers from the innermost one outwards.

use std::cell::Cell;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::build::{conjuncts, Builder};
use super::complement::complement_atom;
use super::exists::{eliminate_pairs, exists_empty_case, ExistsInstance};
use super::{Options, TranslateError};
use crate::syntax::{
    Fo, FoNode, FreshNames, PAtom, Path, PathNode, Pbc, Prenex, Quantifier, State, StateNode, Var,
};

/// Boolean combination of path literals. Negation stays on the literals
/// until an elimination step or the final output needs positive atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Bc {
    Lit(PAtom, bool),
    And(Vec<Bc>),
    Or(Vec<Bc>),
}

impl Bc {
    fn mentions(&self, x: &Var) -> bool {
        match self {
            Bc::Lit(a, _) => a.mentions(x),
            Bc::And(cs) | Bc::Or(cs) => cs.iter().any(|c| c.mentions(x)),
        }
    }

    /// Every atom is `(x, x)`.
    fn diagonal_at(&self, x: &Var) -> bool {
        match self {
            Bc::Lit(a, _) => &a.x == x && &a.y == x,
            Bc::And(cs) | Bc::Or(cs) => cs.iter().all(|c| c.diagonal_at(x)),
        }
    }

    fn negate(&self) -> Bc {
        match self {
            Bc::Lit(a, pos) => Bc::Lit(a.clone(), !pos),
            Bc::And(cs) => Bc::Or(cs.iter().map(Bc::negate).collect()),
            Bc::Or(cs) => Bc::And(cs.iter().map(Bc::negate).collect()),
        }
    }

    /// The variable `v` when every atom is `(v, v)`.
    fn diagonal_var(&self) -> Option<&Var> {
        match self {
            Bc::Lit(a, _) => (a.x == a.y).then_some(&a.x),
            Bc::And(cs) | Bc::Or(cs) => {
                let v = cs[0].diagonal_var()?;
                cs[1..]
                    .iter()
                    .all(|c| c.diagonal_var() == Some(v))
                    .then_some(v)
            }
        }
    }
}

/// The value of a literal that is true or false at every point.
fn constant(bc: &Bc) -> Option<bool> {
    let Bc::Lit(a, pos) = bc else { return None };
    if a.x != a.y {
        return None;
    }
    let PathNode::Test(s) = a.path.node() else {
        return None;
    };
    match s.node() {
        StateNode::True => Some(*pos),
        StateNode::False => Some(!*pos),
        _ => None,
    }
}

/// Whether the two paths never share a pair: distinct complement pieces of
/// one path, or a piece and the path itself.
fn disjoint(p: &Path, q: &Path) -> bool {
    match (p.node(), q.node()) {
        (PathNode::Converse(a), PathNode::Converse(b)) => disjoint(a, b),
        (PathNode::C(i, a), PathNode::C(j, b)) => (i != j && a == b) || a == q || b == p,
        (PathNode::C(_, a), _) => a == q,
        (_, PathNode::C(_, b)) => b == p,
        _ => false,
    }
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// Keeps the first copy of every item, preserving order.
fn dedup<T: Hash + Eq>(items: Vec<T>) -> Vec<T> {
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for item in items {
        let slot = seen.entry(hash_of(&item)).or_default();
        if slot.iter().any(|&i| out[i] == item) {
            continue;
        }
        slot.push(out.len());
        out.push(item);
    }
    out
}

/// A literal that mentions the variable being eliminated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum XLit {
    /// `π(y, x)`
    Atom(Path, Var),
    /// A state formula at `x`.
    Guard(State),
}

/// One disjunct of the normal form: literals on `x` and an `x`-free rest,
/// all conjoined.
#[derive(Clone, Debug)]
struct Term {
    xs: Vec<XLit>,
    rest: Vec<Bc>,
}

struct Translator<'o> {
    opts: &'o Options,
    /// Conjunctions produced so far, across all quantifiers.
    spent: Cell<usize>,
    b: Builder,
    anchor: Var,
}

impl Translator<'_> {
    fn and(&self, cs: Vec<Bc>) -> Bc {
        self.join(cs, true)
    }

    fn or(&self, cs: Vec<Bc>) -> Bc {
        self.join(cs, false)
    }

    fn join(&self, cs: Vec<Bc>, conj: bool) -> Bc {
        let mut cs = cs;
        if self.opts.simplify {
            let mut flat = Vec::with_capacity(cs.len());
            for c in cs {
                match c {
                    Bc::And(inner) if conj => flat.extend(inner),
                    Bc::Or(inner) if !conj => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            cs = dedup(self.merge_diagonal(flat, conj));
            // a conjunction with a false child is false, true children drop out
            if let Some(i) = cs.iter().position(|c| constant(c) == Some(!conj)) {
                return cs.swap_remove(i);
            }
            if cs.len() > 1 && cs.iter().any(|c| constant(c) != Some(conj)) {
                cs.retain(|c| constant(c) != Some(conj));
            }
        }
        assert!(!cs.is_empty(), "empty connective");
        if cs.len() == 1 {
            cs.pop().unwrap()
        } else if conj {
            Bc::And(cs)
        } else {
            Bc::Or(cs)
        }
    }

    /// Children that only talk about one point `v` are merged into a single
    /// test at `(v, v)`.
    fn merge_diagonal(&self, cs: Vec<Bc>, conj: bool) -> Vec<Bc> {
        let mut groups: Vec<(Var, Vec<Bc>)> = Vec::new();
        let mut slots: Vec<Result<Bc, usize>> = Vec::with_capacity(cs.len());
        for c in cs {
            match c.diagonal_var().cloned() {
                Some(v) => match groups.iter().position(|(w, _)| *w == v) {
                    Some(i) => groups[i].1.push(c),
                    None => {
                        slots.push(Err(groups.len()));
                        groups.push((v, vec![c]));
                    }
                },
                None => slots.push(Ok(c)),
            }
        }
        let mut merged: Vec<Option<Bc>> = groups
            .into_iter()
            .map(|(v, mut g)| {
                Some(if g.len() == 1 {
                    g.pop().unwrap()
                } else {
                    let node = if conj { Bc::And(g) } else { Bc::Or(g) };
                    let state = self.guard_of(&node);
                    Bc::Lit(PAtom::new(Path::test(&state), &v, &v), true)
                })
            })
            .collect();
        slots
            .into_iter()
            .map(|s| match s {
                Ok(c) => c,
                Err(i) => merged[i].take().expect("each group is placed once"),
            })
            .collect()
    }

    fn bc_of_pbc(&self, p: &Pbc) -> Bc {
        match p {
            Pbc::Atom(a) => Bc::Lit(a.clone(), true),
            Pbc::And(cs) => self.and(cs.iter().map(|c| self.bc_of_pbc(c)).collect()),
            Pbc::Or(cs) => self.or(cs.iter().map(|c| self.bc_of_pbc(c)).collect()),
        }
    }

    fn bc_of_matrix(&self, f: &Fo, positive: bool) -> Bc {
        let lit = |path: Path, x: &Var, y: &Var| Bc::Lit(PAtom::new(path, x, y), positive);
        match f.node() {
            FoNode::Pred(p, x) => lit(Path::test(&State::pred(p)), x, x),
            FoNode::Le(x, y) => lit(Path::le(), x, y),
            FoNode::Eq(x, y) => lit(Path::test(&State::tt()), x, y),
            FoNode::Rel(r, x, y) => lit(Path::atom(r), x, y),
            FoNode::Not(a) => self.bc_of_matrix(a, !positive),
            FoNode::Or(a, b) | FoNode::And(a, b) => {
                let parts = vec![
                    self.bc_of_matrix(a, positive),
                    self.bc_of_matrix(b, positive),
                ];
                if matches!(f.node(), FoNode::Or(..)) == positive {
                    self.or(parts)
                } else {
                    self.and(parts)
                }
            }
            FoNode::Implies(a, b) => {
                let parts = vec![
                    self.bc_of_matrix(a, !positive),
                    self.bc_of_matrix(b, positive),
                ];
                if positive {
                    self.or(parts)
                } else {
                    self.and(parts)
                }
            }
            FoNode::Exists(..) | FoNode::Forall(..) => unreachable!("matrix is quantifier-free"),
        }
    }

    fn exists(&self, x: &Var, bc: Bc) -> Result<Bc, TranslateError> {
        if !bc.mentions(x) {
            return Ok(bc);
        }
        match bc {
            Bc::Or(cs) => {
                let parts = cs
                    .into_iter()
                    .map(|c| self.exists(x, c))
                    .collect::<Result<_, _>>()?;
                Ok(self.or(parts))
            }
            Bc::And(cs) => {
                let (mut dep, mut indep): (Vec<Bc>, Vec<Bc>) =
                    cs.into_iter().partition(|c| c.mentions(x));
                let inner = if dep.len() == 1 {
                    self.exists(x, dep.pop().unwrap())?
                } else {
                    self.exists_core(x, Bc::And(dep))?
                };
                indep.push(inner);
                Ok(self.and(indep))
            }
            lit => self.exists_core(x, lit),
        }
    }

    fn forall(&self, x: &Var, bc: Bc) -> Result<Bc, TranslateError> {
        if !bc.mentions(x) {
            return Ok(bc);
        }
        match bc {
            Bc::And(cs) => {
                let parts = cs
                    .into_iter()
                    .map(|c| self.forall(x, c))
                    .collect::<Result<_, _>>()?;
                Ok(self.and(parts))
            }
            Bc::Or(cs) => {
                let (mut dep, mut indep): (Vec<Bc>, Vec<Bc>) =
                    cs.into_iter().partition(|c| c.mentions(x));
                let inner = if dep.len() == 1 {
                    self.forall(x, dep.pop().unwrap())?
                } else {
                    self.exists_core(x, Bc::Or(dep).negate())?.negate()
                };
                indep.push(inner);
                Ok(self.or(indep))
            }
            lit => Ok(self.exists_core(x, lit.negate())?.negate()),
        }
    }

    fn exists_core(&self, x: &Var, bc: Bc) -> Result<Bc, TranslateError> {
        let terms = self.xdnf(x, &bc)?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let mut parts = t.rest;
            if !t.xs.is_empty() {
                parts.push(self.eliminate(x, &t.xs)?);
            }
            out.push(self.and(parts));
        }
        Ok(self.or(out))
    }

    fn xlit(&self, x: &Var, a: &PAtom) -> XLit {
        if &a.x == x && &a.y == x {
            XLit::Guard(self.b.loop_state(&a.path))
        } else if &a.y == x {
            XLit::Atom(a.path.clone(), a.x.clone())
        } else {
            XLit::Atom(self.b.inv(&a.path), a.y.clone())
        }
    }

    fn guard_of(&self, bc: &Bc) -> State {
        match bc {
            Bc::Lit(a, true) => self.b.loop_state(&a.path),
            Bc::Lit(a, false) => self.b.not(&self.b.loop_state(&a.path)),
            Bc::And(cs) => {
                let parts: Vec<State> = cs.iter().map(|c| self.guard_of(c)).collect();
                self.b.and_all(parts)
            }
            Bc::Or(cs) => {
                let mut parts = cs.iter().map(|c| self.guard_of(c));
                let first = parts.next().expect("nonempty");
                parts.fold(first, |acc, s| self.b.or(&acc, &s))
            }
        }
    }

    /// Disjunctive normal form with respect to the literals on `x`; parts
    /// not mentioning `x` are kept intact.
    fn xdnf(&self, x: &Var, bc: &Bc) -> Result<Vec<Term>, TranslateError> {
        if !bc.mentions(x) {
            return Ok(vec![Term {
                xs: vec![],
                rest: vec![bc.clone()],
            }]);
        }
        if self.opts.simplify && bc.diagonal_at(x) {
            return Ok(vec![Term {
                xs: vec![XLit::Guard(self.guard_of(bc))],
                rest: vec![],
            }]);
        }
        let terms = match bc {
            Bc::Lit(a, true) => vec![Term {
                xs: vec![self.xlit(x, a)],
                rest: vec![],
            }],
            Bc::Lit(a, false) => complement_atom(a, self.opts)?
                .into_iter()
                .map(|p| {
                    if p.mentions(x) {
                        Term {
                            xs: vec![self.xlit(x, &p)],
                            rest: vec![],
                        }
                    } else {
                        Term {
                            xs: vec![],
                            rest: vec![Bc::Lit(p, true)],
                        }
                    }
                })
                .collect(),
            Bc::Or(cs) => {
                let mut all = Vec::new();
                for c in cs {
                    all.extend(self.xdnf(x, c)?);
                    self.check_budget(all.len())?;
                }
                all
            }
            Bc::And(cs) => {
                let mut acc = vec![Term {
                    xs: vec![],
                    rest: vec![],
                }];
                for c in cs {
                    let rhs = self.xdnf(x, c)?;
                    self.check_budget(acc.len().saturating_mul(rhs.len()))?;
                    let mut next = Vec::with_capacity(acc.len() * rhs.len());
                    for l in &acc {
                        for r in &rhs {
                            let mut xs = l.xs.clone();
                            for lit in &r.xs {
                                if !xs.contains(lit) {
                                    xs.push(lit.clone());
                                }
                            }
                            let mut rest = l.rest.clone();
                            rest.extend(r.rest.iter().cloned());
                            next.push(Term { xs, rest });
                        }
                    }
                    acc = self.normalize(next);
                }
                acc
            }
        };
        Ok(self.normalize(terms))
    }

    fn check_budget(&self, n: usize) -> Result<(), TranslateError> {
        let spent = self.spent.get().saturating_add(n);
        self.spent.set(spent);
        if spent > self.opts.max_terms {
            Err(TranslateError::TooLarge(self.opts.max_terms))
        } else {
            Ok(())
        }
    }

    /// Merges terms with the same literals on `x` (their rests are joined by
    /// a disjunction) and drops terms absorbed by a term without rest.
    fn normalize(&self, terms: Vec<Term>) -> Vec<Term> {
        if !self.opts.simplify {
            return terms;
        }
        let mut order: Vec<(Vec<XLit>, Option<Vec<Bc>>)> = Vec::new();
        let mut index: HashMap<Vec<XLit>, usize> = HashMap::new();
        for t in terms {
            let mut xs = self.merge_guards(dedup(t.xs));
            if self.contradictory(&xs) {
                continue;
            }
            xs.sort_by_cached_key(hash_of);
            let rest = if t.rest.is_empty() {
                None
            } else {
                Some(self.and(t.rest))
            };
            match index.get(&xs) {
                Some(&i) => {
                    let slot = &mut order[i].1;
                    *slot = match (slot.take(), rest) {
                        (Some(mut alts), Some(r)) => {
                            alts.push(r);
                            Some(alts)
                        }
                        _ => None,
                    };
                }
                None => {
                    index.insert(xs.clone(), order.len());
                    order.push((xs, rest.map(|r| vec![r])));
                }
            }
        }
        let bare: Vec<usize> = (0..order.len()).filter(|&i| order[i].1.is_none()).collect();
        let absorbed = |i: usize| {
            order.len() <= 4096
                && bare.iter().any(|&j| {
                    j != i
                        && order[j].0.len() <= order[i].0.len()
                        && order[j].0.iter().all(|l| order[i].0.contains(l))
                        && (order[j].0.len() < order[i].0.len() || j < i)
                })
        };
        let keep: Vec<bool> = (0..order.len()).map(|i| !absorbed(i)).collect();
        order
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|((xs, rest), _)| Term {
                xs,
                rest: match rest {
                    None => vec![],
                    Some(alts) => vec![self.or(alts)],
                },
            })
            .collect()
    }

    /// Literals on `x` that cannot hold together on any linear order: a
    /// false guard, two different complement pieces of one path (or a piece
    /// and the path itself) from the same point, or an atom `π(y, x)` next to
    /// a guard denying `<inv(π)>true`.
    fn contradictory(&self, xs: &[XLit]) -> bool {
        let guard = xs.iter().find_map(|l| match l {
            XLit::Guard(s) => Some(s),
            XLit::Atom(..) => None,
        });
        if guard.is_some_and(|g| matches!(g.node(), StateNode::False)) {
            return true;
        }
        let denied: Vec<State> = guard.map(conjuncts).unwrap_or_default();
        for (i, l) in xs.iter().enumerate() {
            let XLit::Atom(p, y) = l else { continue };
            if !denied.is_empty() && denied.contains(&self.b.not(&self.b.can(&self.b.inv(p)))) {
                return true;
            }
            for m in &xs[i + 1..] {
                if matches!(m, XLit::Atom(q, w) if w == y && disjoint(p, q)) {
                    return true;
                }
            }
        }
        false
    }

    fn merge_guards(&self, xs: Vec<XLit>) -> Vec<XLit> {
        let (mut guards, mut out): (Vec<XLit>, Vec<XLit>) =
            xs.into_iter().partition(|l| matches!(l, XLit::Guard(_)));
        if guards.len() > 1 {
            guards.sort_by_cached_key(hash_of);
            let states = guards.into_iter().map(|g| match g {
                XLit::Guard(s) => s,
                XLit::Atom(..) => unreachable!(),
            });
            out.push(XLit::Guard(self.b.and_all(states)));
        } else {
            out.extend(guards);
        }
        out
    }

    fn eliminate(&self, x: &Var, xs: &[XLit]) -> Result<Bc, TranslateError> {
        if self.opts.simplify {
            if let Some(bc) = self.substitute(xs) {
                return Ok(bc);
            }
        }
        let mut guards = Vec::new();
        let mut atoms = Vec::new();
        for l in xs {
            match l {
                XLit::Guard(s) => guards.push(s.clone()),
                XLit::Atom(p, y) => atoms.push((p.clone(), y.clone())),
            }
        }
        let guard = self.b.and_all(guards);
        let pbc = if atoms.is_empty() {
            exists_empty_case(&guard, &self.anchor)
        } else {
            // (j, i) is the converse of (i, j), so simplification keeps one
            let opts = Options {
                prune_symmetric: self.opts.prune_symmetric || self.opts.simplify,
                ..*self.opts
            };
            eliminate_pairs(
                &ExistsInstance {
                    target: x.clone(),
                    atoms,
                    guard,
                },
                &opts,
                self.opts.simplify,
            )?
        };
        Ok(self.bc_of_pbc(&pbc))
    }

    /// A literal `test(φ)(y, x)` pins `x` to `y`, so `∃x` is dropped and
    /// every other literal is read at `y`.
    fn substitute(&self, xs: &[XLit]) -> Option<Bc> {
        let (pin, y) = xs.iter().find_map(|l| match l {
            XLit::Atom(p, y) if matches!(p.node(), PathNode::Test(_)) => Some((l, y)),
            _ => None,
        })?;
        let at_y = |l: &XLit| match l {
            XLit::Atom(p, w) => Bc::Lit(PAtom::new(p.clone(), w, y), true),
            XLit::Guard(s) => Bc::Lit(PAtom::new(Path::test(s), y, y), true),
        };
        let parts: Vec<Bc> = std::iter::once(at_y(pin))
            .chain(xs.iter().filter(|l| *l != pin).map(at_y))
            .collect();
        Some(self.and(parts))
    }

    fn to_pbc(&self, bc: &Bc) -> Result<Pbc, TranslateError> {
        Ok(match bc {
            Bc::Lit(a, true) => Pbc::Atom(a.clone()),
            Bc::Lit(a, false) => {
                let pieces = complement_atom(a, self.opts)?;
                self.pbc_join(pieces.into_iter().map(Pbc::Atom).collect(), false)
            }
            Bc::And(cs) => self.pbc_join(
                cs.iter()
                    .map(|c| self.to_pbc(c))
                    .collect::<Result<_, _>>()?,
                true,
            ),
            Bc::Or(cs) => self.pbc_join(
                cs.iter()
                    .map(|c| self.to_pbc(c))
                    .collect::<Result<_, _>>()?,
                false,
            ),
        })
    }

    fn pbc_join(&self, cs: Vec<Pbc>, conj: bool) -> Pbc {
        let mut cs = cs;
        if self.opts.simplify {
            let mut flat = Vec::with_capacity(cs.len());
            for c in cs {
                match c {
                    Pbc::And(inner) if conj => flat.extend(inner),
                    Pbc::Or(inner) if !conj => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            cs = dedup(flat);
        }
        if conj {
            Pbc::all(cs)
        } else {
            Pbc::any(cs)
        }
    }
}

/// Positive boolean combination of loop-fragment path atoms equivalent to
/// `f` on every structure whose relations are interval-preserving.
///
/// Sugar is removed first. A sentence `Φ` is handled as `Φ & v = v` for a
/// fresh variable `v` unless `opts.sentences` is off.
pub fn fo_to_pbc(f: &Fo, opts: &Options) -> Result<Pbc, TranslateError> {
    let f = match sentence_var(f) {
        Some(_) if !opts.sentences => return Err(TranslateError::Sentence),
        Some(v) => f.and(&Fo::eq(&v, &v)),
        None => f.clone(),
    };
    let anchor = f
        .free_vars()
        .into_iter()
        .next()
        .expect("at least one free variable");
    let t = Translator {
        opts,
        spent: Cell::new(0),
        b: Builder {
            simplify: opts.simplify,
        },
        anchor,
    };
    let prenex = Prenex::of(&f);
    let mut bc = t.bc_of_matrix(&prenex.matrix, true);
    for (q, x) in prenex.prefix.iter().rev() {
        bc = match q {
            Quantifier::Exists => t.exists(x, bc)?,
            Quantifier::Forall => t.forall(x, bc)?,
        };
    }
    t.to_pbc(&bc)
}

/// The fresh variable a sentence is paired with, or `None` when `f` has a
/// free variable.
pub fn sentence_var(f: &Fo) -> Option<Var> {
    f.free_vars()
        .is_empty()
        .then(|| FreshNames::avoiding(f.all_vars()).fresh())
}

/// The variables an assignment must cover to evaluate `f` together with its
/// translations, sorted.
pub fn translation_vars(f: &Fo) -> Vec<Var> {
    let mut vars: Vec<Var> = f.free_vars().into_iter().collect();
    vars.extend(sentence_var(f));
    vars
}

fn check_arity(f: &Fo, expected: usize) -> Result<Vec<Var>, TranslateError> {
    let vars: Vec<Var> = f.free_vars().into_iter().collect();
    if vars.len() != expected {
        return Err(TranslateError::Arity {
            expected,
            found: vars.len(),
        });
    }
    Ok(vars)
}

fn state_of(p: &Pbc) -> State {
    match p {
        Pbc::Atom(a) => State::loop_of(&a.path),
        Pbc::And(cs) | Pbc::Or(cs) => {
            let mut parts = cs.iter().map(state_of);
            let first = parts.next().expect("nonempty");
            if matches!(p, Pbc::And(_)) {
                parts.fold(first, |acc, s| acc.and(&s))
            } else {
                parts.fold(first, |acc, s| acc.or(&s))
            }
        }
    }
}

/// State formula equivalent to a formula with one free variable: every atom
/// `π(x, x)` of the translation becomes `loop(π)`.
pub fn fo_to_state(f: &Fo, opts: &Options) -> Result<State, TranslateError> {
    check_arity(f, 1)?;
    Ok(state_of(&fo_to_pbc(f, opts)?))
}

/// Path formula equivalent to a formula with two free variables, taken in
/// sorted order as source and target.
pub fn fo_to_path(f: &Fo, opts: &Options) -> Result<Path, TranslateError> {
    let vars = check_arity(f, 2)?;
    fo_to_path_ordered(f, &vars[0], &vars[1], opts)
}

/// Like [`fo_to_path`] with an explicit choice of source `x` and target `y`.
pub fn fo_to_path_ordered(
    f: &Fo,
    x: &Var,
    y: &Var,
    opts: &Options,
) -> Result<Path, TranslateError> {
    let vars = check_arity(f, 2)?;
    for v in [x, y] {
        if !vars.contains(v) {
            return Err(TranslateError::NotFree(v.clone()));
        }
    }
    if x == y {
        return Err(TranslateError::NotDistinct(vec![x.clone(), y.clone()]));
    }
    let b = Builder {
        simplify: opts.simplify,
    };
    let pbc = fo_to_pbc(f, opts)?;
    Ok(path_of(&pbc, x, b))
}

fn path_of(p: &Pbc, x: &Var, b: Builder) -> Path {
    match p {
        Pbc::Atom(a) => match (&a.x == x, &a.y == x) {
            (true, false) => a.path.clone(),
            (false, true) => b.inv(&a.path),
            (true, true) => {
                let t = Path::test(&b.loop_state(&a.path));
                b.union(&t.then(&Path::le()), &t.then(&Path::ge()))
            }
            (false, false) => {
                let t = Path::test(&b.loop_state(&a.path));
                b.union(&Path::le().then(&t), &Path::ge().then(&t))
            }
        },
        Pbc::And(cs) | Pbc::Or(cs) => {
            let mut parts = cs.iter().map(|c| path_of(c, x, b));
            let first = parts.next().expect("nonempty");
            if matches!(p, Pbc::And(_)) {
                parts.fold(first, |acc, q| b.inter(&acc, &q))
            } else {
                parts.fold(first, |acc, q| b.union(&acc, &q))
            }
        }
    }
}
