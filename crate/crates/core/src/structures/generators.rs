//! Seeded generators of interval-preserving relations and structures.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_interval_preserving, PointSet, Relation, Structure, StructureError};
use crate::syntax::{Signature, SyntaxError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each point independently with probability `p`.
pub fn random_points(rng: &mut impl Rng, n: usize, p: f64) -> PointSet {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// Graph of a strictly monotone partial function whose domain keeps each
/// point with probability `density`.
///
/// # Panics
/// Unless `0 < density <= 1`.
pub fn gen_monotone(n: usize, seed: u64, dir: Monotonicity, density: f64) -> Relation {
    monotone_with(&mut rng_from_seed(seed), n, dir, density)
}

pub fn monotone_with(rng: &mut impl Rng, n: usize, dir: Monotonicity, density: f64) -> Relation {
    assert!(
        density > 0.0 && density <= 1.0,
        "density must lie in (0, 1]"
    );
    let sources: Vec<usize> = random_points(rng, n, density).iter().collect();
    let mut targets = sample(rng, n, sources.len()).into_vec();
    targets.sort_unstable();
    if dir == Monotonicity::Decreasing {
        targets.reverse();
    }
    Relation::from_pairs(n, sources.into_iter().zip(targets))
}

/// `{(a, b) | a < b, Q(b), and P(c) for every a < c < b}`.
pub fn gen_until(m: &Structure, p: &str, q: &str) -> Result<Relation, StructureError> {
    let p_set = m
        .predicate(p)
        .ok_or_else(|| SyntaxError::UnknownPredicate(p.into()))?;
    let q_set = m
        .predicate(q)
        .ok_or_else(|| SyntaxError::UnknownPredicate(q.into()))?;
    Ok(until_of(m.size(), p_set, q_set))
}

fn until_of(n: usize, p: PointSet, q: PointSet) -> Relation {
    let mut r = Relation::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if q.contains(b) {
                r.insert(a, b);
            }
            if !p.contains(b) {
                break;
            }
        }
    }
    r
}

/// `{(i, i + k)}` within the domain.
pub fn gen_succ(n: usize, k: usize) -> Relation {
    Relation::from_pairs(n, (0..n).filter(|i| i + k < n).map(|i| (i, i + k)))
}

/// An interval-preserving relation drawn from a mix of the other generators,
/// their converses, compositions and intersections, and occasionally an
/// arbitrary relation that happens to pass the checker.
pub fn gen_random_ip(n: usize, seed: u64) -> Relation {
    random_ip_with(&mut rng_from_seed(seed), n)
}

pub fn random_ip_with(rng: &mut impl Rng, n: usize) -> Relation {
    if n == 0 {
        return Relation::empty(0);
    }
    let r = match rng.gen_range(0..20) {
        0 => rejection_sample(rng, n),
        1..=10 => base_ip(rng, n),
        11..=14 => base_ip(rng, n).compose(&base_ip(rng, n)),
        15..=17 => base_ip(rng, n).intersect(&base_ip(rng, n)),
        _ => base_ip(rng, n).converse(),
    };
    debug_assert!(is_interval_preserving(&r).is_ok(), "{r:?}");
    r
}

fn base_ip(rng: &mut impl Rng, n: usize) -> Relation {
    let density = rng.gen_range(0.2..=1.0);
    match rng.gen_range(0..8) {
        0 => monotone_with(rng, n, Monotonicity::Increasing, density),
        1 => monotone_with(rng, n, Monotonicity::Decreasing, density),
        2 => {
            let k = rng.gen_range(0..n.max(2));
            gen_succ(n, k)
        }
        3 | 4 => {
            let p = random_points(rng, n, 0.6);
            let q = random_points(rng, n, 0.4);
            until_of(n, p, q)
        }
        5 => {
            // the order, cut down to a set of sources and a set of targets
            let le = if rng.gen_bool(0.5) {
                Relation::le(n)
            } else {
                Relation::le(n).converse()
            };
            le.restrict_source(random_points(rng, n, density))
                .restrict_target(random_points(rng, n, density))
        }
        6 => Relation::full(n).restrict_source(random_points(rng, n, density)),
        _ => Relation::identity(n).restrict_source(random_points(rng, n, density)),
    }
}

fn rejection_sample(rng: &mut impl Rng, n: usize) -> Relation {
    let density = rng.gen_range(0.05..0.5);
    for _ in 0..20 {
        let r = Relation::from_pairs(
            n,
            (0..n * n)
                .filter(|_| rng.gen_bool(density))
                .map(|i| (i / n, i % n)),
        );
        if is_interval_preserving(&r).is_ok() {
            return r;
        }
    }
    Relation::empty(n)
}

/// A structure interpreting every symbol of `sig`: predicates uniformly at
/// random, relations via [`random_ip_with`].
pub fn random_structure(rng: &mut impl Rng, n: usize, sig: &Signature) -> Structure {
    let mut s = Structure::new(n).expect("size within bounds");
    for p in sig.predicates() {
        let set = random_points(rng, n, 0.5);
        s.set_predicate(p, set).expect("signature names are valid");
    }
    for r in sig.relations() {
        let rel = random_ip_with(rng, n);
        s.set_relation(r, rel).expect("signature names are valid");
    }
    s
}

/// The pattern `{(0,0), (1,2), (2,1)}` placed at offset 0 and at a random
/// selection of further offsets. Never interval-preserving.
///
/// # Panics
/// If `n < 3`.
pub fn non_ip_relation(rng: &mut impl Rng, n: usize) -> Relation {
    assert!(n >= 3, "the pattern needs three points");
    let mut r = Relation::empty(n);
    for o in 0..=n - 3 {
        if o == 0 || rng.gen_bool(0.3) {
            r.insert(o, o);
            r.insert(o + 1, o + 2);
            r.insert(o + 2, o + 1);
        }
    }
    if is_interval_preserving(&r).is_ok() {
        return Relation::from_pairs(n, [(0, 0), (1, 2), (2, 1)]);
    }
    r
}

/// Every interval-preserving relation on `{0, ..., n-1}` for `n <= 3`, in
/// increasing order of the bitmask with bit `a * n + b` standing for `(a, b)`.
pub fn enumerate_ip_relations(n: usize) -> Result<Vec<Relation>, StructureError> {
    if n > 3 {
        return Err(StructureError::EnumerationTooLarge(n));
    }
    Ok((0u32..1 << (n * n))
        .map(|mask| {
            Relation::from_pairs(
                n,
                (0..n * n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| (i / n, i % n)),
            )
        })
        .filter(|r| is_interval_preserving(r).is_ok())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::is_interval_preserving_naive;

    fn m0() -> Structure {
        Structure::new(4)
            .unwrap()
            .with_predicate("P", [1, 3])
            .unwrap()
            .with_predicate("Q", [2])
            .unwrap()
    }

    #[test]
    fn until_examples() {
        assert_eq!(
            gen_until(&m0(), "P", "Q").unwrap(),
            Relation::from_pairs(4, [(0, 2), (1, 2)])
        );
        let m = m0().with_predicate("Q", []).unwrap();
        assert!(gen_until(&m, "P", "Q").unwrap().is_empty());
        assert!(gen_until(&m0(), "P", "R").is_err());
    }

    #[test]
    fn succ_examples() {
        assert_eq!(
            gen_succ(4, 1),
            Relation::from_pairs(4, [(0, 1), (1, 2), (2, 3)])
        );
        assert!(gen_succ(4, 5).is_empty());
        for n in 0..=10 {
            for k in 0..=10 {
                assert!(is_interval_preserving(&gen_succ(n, k)).is_ok());
            }
        }
    }

    #[test]
    fn monotone_is_strict() {
        for seed in 0..200 {
            let dir = if seed % 2 == 0 {
                Monotonicity::Increasing
            } else {
                Monotonicity::Decreasing
            };
            let r = gen_monotone(6, seed, dir, 0.7);
            assert!(r.is_functional());
            let pairs: Vec<_> = r.pairs().collect();
            for w in pairs.windows(2) {
                match dir {
                    Monotonicity::Increasing => assert!(w[0].1 < w[1].1),
                    Monotonicity::Decreasing => assert!(w[0].1 > w[1].1),
                }
            }
        }
        let tiny = gen_monotone(1, 3, Monotonicity::Increasing, 1.0);
        assert_eq!(tiny, Relation::from_pairs(1, [(0, 0)]));
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_ip_relations(0).unwrap().len(), 1);
        assert_eq!(enumerate_ip_relations(1).unwrap().len(), 2);
        let two = enumerate_ip_relations(2).unwrap();
        assert!(two.contains(&Relation::from_pairs(2, [(0, 1), (1, 0)])));
        assert!(enumerate_ip_relations(4).is_err());
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        // every relation on 2 points is interval-preserving; 289 of the 512 on 3 points are
        for (n, expected) in [(2usize, 16usize), (3, 289)] {
            let naive = (0u32..1 << (n * n))
                .map(|bits| {
                    Relation::from_pairs(
                        n,
                        (0..n * n)
                            .filter(|i| bits >> i & 1 == 1)
                            .map(|i| (i / n, i % n)),
                    )
                })
                .filter(is_interval_preserving_naive)
                .count();
            assert_eq!(naive, expected);
            assert_eq!(enumerate_ip_relations(n).unwrap().len(), expected);
        }
    }

    #[test]
    fn non_ip_family_fails_checker() {
        let mut rng = rng_from_seed(9);
        for n in 3..10 {
            for _ in 0..20 {
                assert!(!is_interval_preserving(&non_ip_relation(&mut rng, n)).is_ok());
            }
        }
    }

    #[test]
    fn random_ip_is_deterministic() {
        assert_eq!(gen_random_ip(8, 5), gen_random_ip(8, 5));
        assert!(gen_random_ip(0, 1).is_empty());
    }
}
