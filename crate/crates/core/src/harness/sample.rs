//! Grammar-directed random formulas.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::structures::rng_from_seed;
use crate::syntax::{var, COp, Dialect, Fo, Path, Signature, State, Var};

/// Relative weights of the constructors drawn by [`random_fo`] below the
/// depth bound. At depth zero an atom is always drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FoWeights {
    pub atom: u32,
    pub not: u32,
    pub or: u32,
    pub exists: u32,
}

impl FoWeights {
    pub const DEFAULT: FoWeights = FoWeights {
        atom: 40,
        not: 20,
        or: 20,
        exists: 20,
    };
    /// Favors negation, so that most relation atoms end up complemented.
    pub const NEGATION_HEAVY: FoWeights = FoWeights {
        atom: 25,
        not: 40,
        or: 15,
        exists: 20,
    };
}

impl Default for FoWeights {
    fn default() -> Self {
        FoWeights::DEFAULT
    }
}

/// Variable names used by the samplers.
pub const VARIABLES: [&str; 3] = ["x", "y", "z"];

fn pick_var(rng: &mut impl Rng) -> Var {
    var(VARIABLES.choose(rng).expect("nonempty"))
}

fn names(it: impl Iterator<Item = impl AsRef<str>>) -> Vec<String> {
    it.map(|s| s.as_ref().to_string()).collect()
}

fn random_atom(rng: &mut impl Rng, sig: &Signature) -> Fo {
    let preds = names(sig.predicates());
    let rels = names(sig.relations());
    let (x, y) = (pick_var(rng), pick_var(rng));
    let mut kinds = vec![0];
    if !preds.is_empty() {
        kinds.push(1);
    }
    if !rels.is_empty() {
        kinds.push(2);
    }
    match *kinds.choose(rng).expect("nonempty") {
        1 => Fo::pred(preds.choose(rng).expect("nonempty"), &x),
        2 => Fo::rel(rels.choose(rng).expect("nonempty"), &x, &y),
        _ if rng.gen_bool(0.25) => Fo::eq(&x, &y),
        _ => Fo::le(&x, &y),
    }
}

/// A desugared formula of depth at most `depth` over the variables
/// [`VARIABLES`].
pub fn random_fo(rng: &mut impl Rng, depth: usize, sig: &Signature, w: FoWeights) -> Fo {
    if depth == 0 {
        return random_atom(rng, sig);
    }
    let total = w.atom + w.not + w.or + w.exists;
    let mut roll = rng.gen_range(0..total);
    if roll < w.atom {
        return random_atom(rng, sig);
    }
    roll -= w.atom;
    if roll < w.not {
        return random_fo(rng, depth - 1, sig, w).not();
    }
    roll -= w.not;
    if roll < w.or {
        let a = random_fo(rng, depth - 1, sig, w);
        return a.or(&random_fo(rng, depth - 1, sig, w));
    }
    let x = pick_var(rng);
    Fo::exists(&x, &random_fo(rng, depth - 1, sig, w))
}

/// A formula using every constructor, sugar included.
pub fn random_fo_any(rng: &mut impl Rng, depth: usize, sig: &Signature) -> Fo {
    if depth == 0 {
        return random_atom(rng, sig);
    }
    let mut sub = || random_fo_any(rng, depth - 1, sig);
    let (a, b) = (sub(), sub());
    let x = pick_var(rng);
    match rng.gen_range(0..8) {
        0 => random_atom(rng, sig),
        1 => a.not(),
        2 => a.or(&b),
        3 => a.and(&b),
        4 => a.implies(&b),
        5 => Fo::exists(&x, &a),
        6 => Fo::forall(&x, &a),
        _ => a.and(&b.not()),
    }
}

fn leaf_path(rng: &mut impl Rng, sig: &Signature) -> Path {
    let rels = names(sig.relations());
    if rels.is_empty() || rng.gen_bool(0.3) {
        Path::le()
    } else {
        Path::atom(rels.choose(rng).expect("nonempty"))
    }
}

fn leaf_state(rng: &mut impl Rng, sig: &Signature) -> State {
    let preds = names(sig.predicates());
    match rng.gen_range(0..8) {
        0 => State::tt(),
        1 => State::ff(),
        _ if preds.is_empty() => State::tt(),
        _ => State::pred(preds.choose(rng).expect("nonempty")),
    }
}

/// A state formula over every constructor.
pub fn random_state(rng: &mut impl Rng, depth: usize, sig: &Signature) -> State {
    state_in(rng, depth, sig, Dialect::Full)
}

/// A path formula over every constructor.
pub fn random_path(rng: &mut impl Rng, depth: usize, sig: &Signature) -> Path {
    path_in(rng, depth, sig, Dialect::Full)
}

fn state_in(rng: &mut impl Rng, depth: usize, sig: &Signature, d: Dialect) -> State {
    if depth == 0 {
        return leaf_state(rng, sig);
    }
    match rng.gen_range(0..7) {
        0 => leaf_state(rng, sig),
        1 => state_in(rng, depth - 1, sig, d).not(),
        2 => state_in(rng, depth - 1, sig, d).or(&state_in(rng, depth - 1, sig, d)),
        3 => state_in(rng, depth - 1, sig, d).and(&state_in(rng, depth - 1, sig, d)),
        4 | 5 => State::diamond(
            &path_in(rng, depth - 1, sig, d),
            &state_in(rng, depth - 1, sig, d),
        ),
        _ => State::loop_of(&path_in(rng, depth - 1, sig, d)),
    }
}

/// A path formula whose constructors all lie in `d`.
pub fn path_in(rng: &mut impl Rng, depth: usize, sig: &Signature, d: Dialect) -> Path {
    if depth == 0 {
        return leaf_path(rng, sig);
    }
    let sub = |rng: &mut _| path_in(rng, depth - 1, sig, d);
    let kinds: &[u8] = match d {
        Dialect::Full => &[0, 1, 2, 3, 4, 5, 6, 7],
        Dialect::FragCap => &[0, 1, 2, 3, 4, 5],
        Dialect::FragLoop => &[0, 1, 2, 3, 5],
    };
    match kinds.choose(rng).expect("nonempty") {
        0 => leaf_path(rng, sig),
        1 => Path::test(&state_in(rng, depth - 1, sig, d)),
        2 => sub(rng).inv(),
        3 => sub(rng).then(&sub(rng)),
        4 => sub(rng).inter(&sub(rng)),
        5 => Path::c(*COp::ALL.choose(rng).expect("nonempty"), &sub(rng)),
        6 => sub(rng).union(&sub(rng)),
        _ => sub(rng).comp(),
    }
}

/// A path formula of depth at most `depth` built from relation symbols,
/// `le`, tests, converse, composition, intersection and the four complement
/// pieces.
pub fn random_fragment_path(depth: usize, seed: u64, sig: &Signature) -> Path {
    path_in(&mut rng_from_seed(seed), depth, sig, Dialect::FragCap)
}

/// Quantifier prefixes of length at most two over `y` then `z`, in a fixed
/// order.
const PREFIXES: [&[(bool, &str)]; 7] = [
    &[],
    &[(true, "y")],
    &[(false, "y")],
    &[(true, "y"), (true, "z")],
    &[(true, "y"), (false, "z")],
    &[(false, "y"), (true, "z")],
    &[(false, "y"), (false, "z")],
];

/// Atoms over the given variables: predicates, relations on ordered pairs,
/// `u <= v` and `u = v` on distinct variables.
fn atoms_over(vars: &[Var], sig: &Signature) -> Vec<Fo> {
    let mut out = Vec::new();
    for p in sig.predicates() {
        out.extend(vars.iter().map(|v| Fo::pred(p, v)));
    }
    for r in sig.relations() {
        for u in vars {
            out.extend(vars.iter().map(|v| Fo::rel(r, u, v)));
        }
    }
    for (i, u) in vars.iter().enumerate() {
        for v in &vars[i + 1..] {
            out.extend([Fo::le(u, v), Fo::le(v, u), Fo::eq(u, v)]);
        }
    }
    out
}

/// A deterministic family of prenex formulas with free variable `x`, at
/// most two quantifiers over `y` and `z`, and a matrix of at most three
/// possibly negated atoms. Each of the seven prefixes gets `per_prefix`
/// distinct formulas whose matrix mentions every bound variable.
pub fn prenex_family(seed: u64, per_prefix: usize, sig: &Signature) -> Vec<Fo> {
    let mut out = Vec::new();
    for (k, prefix) in PREFIXES.iter().enumerate() {
        let bound: Vec<Var> = prefix.iter().map(|(_, v)| var(v)).collect();
        let scope: Vec<Var> = std::iter::once(var("x"))
            .chain(bound.iter().cloned())
            .collect();
        let atoms = atoms_over(&scope, sig);
        let mut rng = rng_from_seed(seed);
        rng.set_stream(k as u64);
        let mut seen = std::collections::HashSet::new();
        let mut found = 0;
        // the quantifier-free prefix has far fewer matrices, so cap the tries
        for _ in 0..per_prefix * 200 {
            if found == per_prefix {
                break;
            }
            let lit = |rng: &mut rand_chacha::ChaCha8Rng| {
                let a = atoms.choose(rng).expect("nonempty").clone();
                if rng.gen_bool(0.4) {
                    a.not()
                } else {
                    a
                }
            };
            let l1 = lit(&mut rng);
            let matrix = match rng.gen_range(0..5) {
                0 => l1,
                1 => l1.and(&lit(&mut rng)),
                2 => l1.or(&lit(&mut rng)),
                3 => l1.and(&lit(&mut rng).or(&lit(&mut rng))),
                _ => l1.or(&lit(&mut rng).and(&lit(&mut rng))),
            };
            let used = matrix.free_vars();
            if !bound.iter().all(|v| used.contains(v)) {
                continue;
            }
            let f = prefix.iter().rev().fold(matrix, |body, (exists, v)| {
                if *exists {
                    Fo::exists(&var(v), &body)
                } else {
                    Fo::forall(&var(v), &body)
                }
            });
            if seen.insert(f.to_string()) {
                out.push(f);
                found += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::rng_from_seed;

    fn sig() -> Signature {
        Signature::new(["P", "Q"], ["a"]).unwrap()
    }

    #[test]
    fn depth_zero_is_a_leaf() {
        for seed in 0..50 {
            let p = random_fragment_path(0, seed, &sig());
            assert!(p == Path::le() || p == Path::atom("a"));
        }
    }

    #[test]
    fn fragment_samples_respect_dialect() {
        let mut rng = rng_from_seed(3);
        for _ in 0..500 {
            assert!(path_in(&mut rng, 4, &sig(), Dialect::FragCap).is_in(Dialect::FragCap));
            assert!(path_in(&mut rng, 4, &sig(), Dialect::FragLoop).is_in(Dialect::FragLoop));
        }
    }

    #[test]
    fn fo_samples_are_desugared_and_bounded() {
        let mut rng = rng_from_seed(9);
        for _ in 0..500 {
            let f = random_fo(&mut rng, 3, &sig(), FoWeights::DEFAULT);
            assert!(f.is_desugared());
            assert!(f.all_vars().len() <= VARIABLES.len());
        }
    }

    #[test]
    fn prenex_family_shape() {
        let sig = Signature::new(["P"], ["a"]).unwrap();
        let family = prenex_family(1, 10, &sig);
        assert_eq!(family, prenex_family(1, 10, &sig));
        assert_eq!(family.len(), 70);
        for f in &family {
            let p = crate::syntax::Prenex::of(f);
            assert!(p.prefix.len() <= 2);
            assert!(crate::transpiler::translation_vars(f).len() <= 1);
        }
    }

    #[test]
    fn samplers_are_deterministic() {
        let a = random_fo(&mut rng_from_seed(5), 4, &sig(), FoWeights::NEGATION_HEAVY);
        let b = random_fo(&mut rng_from_seed(5), 4, &sig(), FoWeights::NEGATION_HEAVY);
        assert_eq!(a, b);
        assert_eq!(
            random_fragment_path(3, 11, &sig()),
            random_fragment_path(3, 11, &sig())
        );
    }
}
