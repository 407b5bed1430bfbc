//! Seeded suites for the structural facts the translation relies on.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::case_rng;
use super::sample::{path_in, random_fo_any, random_path, random_state};
use crate::parser::{parse_fo, parse_path, parse_state};
use crate::semantics::Evaluator;
use crate::structures::{
    gen_succ, gen_until, is_interval_preserving, monotone_with, random_ip_with, random_points,
    random_structure, Interval, IpVerdict, Monotonicity, PointSet, Relation, Structure,
};
use crate::syntax::{COp, Dialect, Path, Signature};
use crate::transpiler::{complement_fragment, expand_c};

/// Counts of one suite run.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Description of the lowest-index failing case.
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn collect(name: &str, results: Vec<Option<String>>) -> SuiteReport {
        let cases = results.len();
        let failures: Vec<String> = results.into_iter().flatten().collect();
        SuiteReport {
            name: name.to_string(),
            cases,
            failures: failures.len(),
            first_failure: failures.into_iter().next(),
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{}: {status} ({} cases, {} failures)",
            self.name, self.cases, self.failures
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, "; first: {first}")?;
        }
        Ok(())
    }
}

fn run(cases: usize, check: impl Fn(usize) -> Option<String> + Sync + Send) -> Vec<Option<String>> {
    (0..cases).into_par_iter().map(check).collect()
}

fn suite_signature() -> Signature {
    Signature::new(["P", "Q"], ["a", "b"]).expect("valid names")
}

fn not_ip(what: &str, r: &Relation) -> Option<String> {
    match is_interval_preserving(r) {
        IpVerdict::Ok => None,
        IpVerdict::Counterexample(w) => Some(format!("{what} {r} fails at {w}")),
    }
}

/// Converse, intersection and composition of random interval-preserving
/// relations are interval-preserving.
pub fn closure_suite(seed: u64, cases: usize, max_n: usize) -> SuiteReport {
    let results = run(cases, |i| {
        let mut rng = case_rng(seed, i);
        let n = rng.gen_range(1..=max_n);
        let (r, s) = (random_ip_with(&mut rng, n), random_ip_with(&mut rng, n));
        not_ip("converse", &r.converse())
            .or_else(|| not_ip("intersection", &r.intersect(&s)))
            .or_else(|| not_ip("composition", &r.compose(&s)))
            .map(|e| format!("case {i}: {e} (from {r} and {s})"))
    });
    SuiteReport::collect("closure", results)
}

fn random_case(seed: u64, i: usize, depth: usize, max_n: usize, d: Dialect) -> (Path, Structure) {
    let mut rng = case_rng(seed, i);
    let sig = suite_signature();
    let depth = rng.gen_range(0..=depth);
    let p = path_in(&mut rng, depth, &sig, d);
    let n = rng.gen_range(1..=max_n);
    (p, random_structure(&mut rng, n, &sig))
}

/// Path formulas without union and complement denote interval-preserving
/// relations on interval-preserving structures.
pub fn fragment_ip_suite(seed: u64, cases: usize, depth: usize, max_n: usize) -> SuiteReport {
    let results = run(cases, |i| {
        let (p, m) = random_case(seed, i, depth, max_n, Dialect::FragCap);
        let r = Evaluator::new(&m).path(&p).expect("signature fits");
        not_ip(&format!("case {i}: {p} denotes"), &r)
    });
    SuiteReport::collect("fragment-ip", results)
}

/// The eight complement pieces of a loop-fragment path formula cover
/// exactly its complement. Uses the same seeds as [`fragment_ip_suite`].
pub fn complement_suite(seed: u64, cases: usize, depth: usize, max_n: usize) -> SuiteReport {
    let results = run(cases, |i| {
        let (p, m) = random_case(seed, i, depth, max_n, Dialect::FragLoop);
        let mut ev = Evaluator::new(&m);
        let pieces = complement_fragment(&p).expect("sampled in the loop fragment");
        let union = pieces.iter().fold(Relation::empty(m.size()), |acc, q| {
            acc.union(&ev.path(q).expect("signature fits"))
        });
        let expected = ev.path(&p).expect("signature fits").complement();
        (union != expected)
            .then(|| format!("case {i}: {p}: pieces give {union}, complement is {expected}"))
    });
    SuiteReport::collect("complement", results)
}

/// The direct meaning of `c1` to `c4` agrees with their definitional
/// expansion.
pub fn coherence_suite(seed: u64, cases: usize, depth: usize, max_n: usize) -> SuiteReport {
    let results = run(cases, |i| {
        let (p, m) = random_case(seed, i, depth, max_n, Dialect::FragCap);
        let op = *COp::ALL
            .choose(&mut case_rng(seed ^ 0x9e37_79b9, i))
            .expect("nonempty");
        let c = Path::c(op, &p);
        let mut ev = Evaluator::new(&m);
        let direct = ev.path(&c).expect("signature fits");
        let expanded = ev.path(&expand_c(&c)).expect("signature fits");
        (direct != expanded).then(|| format!("case {i}: {c}: direct {direct}, expanded {expanded}"))
    });
    SuiteReport::collect("c-coherence", results)
}

/// Whether the intervals meet pairwise, and whether they all share a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HellyVerdict {
    pub pairwise: bool,
    pub total: bool,
}

/// Every subfamily of intervals of a chain meets pairwise exactly when it
/// has a common point, so both answers always agree. An empty member fails
/// both.
pub fn helly_check(intervals: &[Interval], n: usize) -> HellyVerdict {
    let pairwise = intervals
        .iter()
        .enumerate()
        .all(|(i, a)| intervals[i..].iter().all(|b| !a.intersect(*b).is_empty()));
    let common = intervals
        .iter()
        .fold(PointSet::full(n), |acc, iv| acc.inter(iv.points()));
    HellyVerdict {
        pairwise,
        total: !common.is_empty(),
    }
}

/// Every family of at most `max_family` intervals (repetitions allowed) over
/// every domain size up to `max_n`.
pub fn helly_suite(max_family: usize, max_n: usize) -> SuiteReport {
    let mut results = Vec::new();
    for n in 1..=max_n {
        let all = Interval::all(n);
        for k in 1..=max_family {
            // nondecreasing index sequences
            let mut idx = vec![0usize; k];
            loop {
                let family: Vec<Interval> = idx.iter().map(|&i| all[i]).collect();
                let v = helly_check(&family, n);
                results.push((v.pairwise != v.total).then(|| format!("n={n} {family:?}: {v:?}")));
                let Some(pos) = (0..k).rev().find(|&p| idx[p] + 1 < all.len()) else {
                    break;
                };
                idx[pos] += 1;
                let base = idx[pos];
                idx[pos + 1..].iter_mut().for_each(|i| *i = base);
            }
        }
    }
    SuiteReport::collect("helly", results)
}

/// The until, monotone and successor generators produce
/// interval-preserving relations.
pub fn generator_suites(seed: u64, cases: usize, max_n: usize) -> Vec<SuiteReport> {
    let until = run(cases, |i| {
        let mut rng = case_rng(seed, i);
        let n = rng.gen_range(1..=max_n);
        let m = Structure::new(n)
            .and_then(|m| m.with_predicate("P", random_points(&mut rng, n, 0.6).iter()))
            .and_then(|m| m.with_predicate("Q", random_points(&mut rng, n, 0.3).iter()))
            .expect("valid structure");
        not_ip(
            &format!("case {i}: until"),
            &gen_until(&m, "P", "Q").expect("predicates present"),
        )
    });
    let monotone = run(cases, |i| {
        let mut rng = case_rng(seed, i);
        let n = rng.gen_range(1..=max_n);
        let dir = if rng.gen_bool(0.5) {
            Monotonicity::Increasing
        } else {
            Monotonicity::Decreasing
        };
        let density = rng.gen_range(0.05..=1.0);
        not_ip(
            &format!("case {i}: monotone"),
            &monotone_with(&mut rng, n, dir, density),
        )
    });
    let succ = run(cases, |i| {
        let mut rng = case_rng(seed, i);
        let n = rng.gen_range(1..=max_n);
        let k = rng.gen_range(0..=n);
        not_ip(&format!("case {i}: successor"), &gen_succ(n, k))
    });
    vec![
        SuiteReport::collect("gen-until", until),
        SuiteReport::collect("gen-monotone", monotone),
        SuiteReport::collect("gen-succ", succ),
    ]
}

/// Printing and parsing back gives the same tree, for formulas of all three
/// sorts in turn.
pub fn round_trip_suite(seed: u64, cases: usize, depth: usize) -> SuiteReport {
    let sig = suite_signature();
    let results = run(cases, |i| {
        let mut rng = case_rng(seed, i);
        let d = rng.gen_range(0..=depth);
        match i % 3 {
            0 => {
                let f = random_fo_any(&mut rng, d, &sig);
                let text = f.to_string();
                (parse_fo(&text).ok() != Some(f)).then(|| format!("case {i}: {text}"))
            }
            1 => {
                let s = random_state(&mut rng, d, &sig);
                let text = s.to_string();
                (parse_state(&text).ok() != Some(s)).then(|| format!("case {i}: {text}"))
            }
            _ => {
                let p = random_path(&mut rng, d, &sig);
                let text = p.to_string();
                (parse_path(&text).ok() != Some(p)).then(|| format!("case {i}: {text}"))
            }
        }
    });
    SuiteReport::collect("round-trip", results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helly_examples() {
        let fam = [
            Interval::new(0, 2),
            Interval::new(1, 3),
            Interval::new(2, 2),
        ];
        assert_eq!(
            helly_check(&fam, 4),
            HellyVerdict {
                pairwise: true,
                total: true
            }
        );
        let fam = [Interval::new(0, 1), Interval::new(2, 3)];
        assert_eq!(
            helly_check(&fam, 4),
            HellyVerdict {
                pairwise: false,
                total: false
            }
        );
    }

    #[test]
    fn small_suites_pass() {
        assert!(closure_suite(1, 200, 8).passed());
        assert!(fragment_ip_suite(1, 200, 3, 6).passed());
        assert!(complement_suite(1, 200, 3, 6).passed());
        assert!(coherence_suite(1, 200, 3, 6).passed());
        assert!(helly_suite(3, 4).passed());
        assert!(generator_suites(1, 200, 10).iter().all(SuiteReport::passed));
        let rt = round_trip_suite(1, 300, 4);
        assert!(rt.passed(), "{rt}");
    }
}
