use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::sample::{random_fo, FoWeights};
use super::{case_rng, shrink, Claim, HarnessError, Stats, Status, Verdict, Witness};
use crate::semantics::all_assignments;
use crate::structures::{
    non_ip_relation, random_points, random_structure, Assignment, Structure, MAX_SIZE,
};
use crate::syntax::{Fo, Signature};
use crate::transpiler::{translation_vars, Options};

/// Settings of a randomized translation check.
#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub seed: u64,
    pub iterations: usize,
    pub max_size: usize,
    pub max_depth: usize,
    pub signature: Signature,
    pub weights: FoWeights,
    /// Interpret every relation by a relation that is not
    /// interval-preserving. Disagreements are then expected.
    pub allow_non_ip: bool,
    pub options: Options,
    /// Minimize the reported witness.
    pub shrink: bool,
}

impl FuzzConfig {
    pub fn new(seed: u64, iterations: usize) -> Self {
        FuzzConfig {
            seed,
            iterations,
            max_size: 8,
            max_depth: 3,
            signature: Signature::new(["P", "Q"], ["a"]).expect("valid names"),
            weights: FoWeights::DEFAULT,
            allow_non_ip: false,
            options: Options::default(),
            shrink: true,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::Config(msg));
        if self.iterations == 0 {
            return bad("iterations must be at least 1".into());
        }
        if self.max_size == 0 || self.max_size > MAX_SIZE {
            return bad(format!("max size must lie in 1..={MAX_SIZE}"));
        }
        if self.allow_non_ip {
            if self.max_size < 3 {
                return bad(
                    "structures without interval preservation need at least 3 points".into(),
                );
            }
            if self.signature.relations().next().is_none() {
                return bad(
                    "structures without interval preservation need a relation symbol".into(),
                );
            }
        }
        let w = self.weights;
        if w.atom == 0 || w.atom + w.not + w.or + w.exists == 0 {
            return bad("the atom weight must be positive".into());
        }
        Ok(())
    }
}

/// One sampled case: a formula, a structure and the assignments to try.
#[derive(Clone, Debug)]
pub struct FuzzCase {
    pub index: usize,
    pub formula: Fo,
    pub structure: Structure,
    pub assignments: Vec<Assignment>,
}

/// Exhaustive below this many assignments, sampled above it.
const ALL_ASSIGNMENTS: usize = 256;
const SAMPLED_ASSIGNMENTS: usize = 16;

/// The case with the given index; a function of the seed and the index only.
pub fn fuzz_case(cfg: &FuzzConfig, index: usize) -> FuzzCase {
    let mut rng = case_rng(cfg.seed, index);
    let low = if cfg.allow_non_ip { 3 } else { 1 };
    let n = rng.gen_range(low..=cfg.max_size);
    let formula = random_fo(&mut rng, cfg.max_depth, &cfg.signature, cfg.weights);
    let structure = if cfg.allow_non_ip {
        let mut m = Structure::new(n).expect("size checked");
        for p in cfg.signature.predicates() {
            m.set_predicate(p, random_points(&mut rng, n, 0.5))
                .expect("valid name");
        }
        for r in cfg.signature.relations() {
            let rel = non_ip_relation(&mut rng, n);
            m = m
                .with_relation_unchecked(r, rel.pairs())
                .expect("valid name");
        }
        m
    } else {
        random_structure(&mut rng, n, &cfg.signature)
    };
    let vars = translation_vars(&formula);
    let total = n.checked_pow(vars.len() as u32).unwrap_or(usize::MAX);
    let assignments = if total <= ALL_ASSIGNMENTS {
        all_assignments(&vars, n).collect()
    } else {
        (0..SAMPLED_ASSIGNMENTS)
            .map(|_| {
                vars.iter()
                    .map(|v| (v.clone(), rng.gen_range(0..n)))
                    .collect()
            })
            .collect()
    };
    FuzzCase {
        index,
        formula,
        structure,
        assignments,
    }
}

enum Outcome {
    Pass(u64),
    Disagree(Witness, u64),
    Error(String),
}

fn run_case(cfg: &FuzzConfig, index: usize) -> Result<Outcome, HarnessError> {
    let case = fuzz_case(cfg, index);
    let claim = Claim::Translation(case.formula.clone(), cfg.options);
    let prepared = match claim.prepare() {
        Ok(p) => p,
        Err(e) => {
            return Ok(Outcome::Error(format!(
                "case {index}: {}: {e}",
                case.formula
            )))
        }
    };
    let checks = case.assignments.len() as u64;
    Ok(
        match prepared.first_disagreement(&case.structure, case.assignments)? {
            None => Outcome::Pass(checks),
            Some((assignment, side)) => Outcome::Disagree(
                Witness {
                    claim,
                    structure: case.structure,
                    assignment,
                    side,
                    case: Some(index),
                },
                checks,
            ),
        },
    )
}

/// Compares sampled formulas with their translations on sampled structures.
/// Cases run in parallel; the result does not depend on scheduling.
pub fn fuzz_equiv(cfg: &FuzzConfig) -> Result<Verdict, HarnessError> {
    cfg.validate()?;
    let start = Instant::now();
    let outcomes: Vec<Result<Outcome, HarnessError>> = (0..cfg.iterations)
        .into_par_iter()
        .map(|i| run_case(cfg, i))
        .collect();
    let mut stats = Stats {
        cases: cfg.iterations,
        structures: cfg.iterations as u64,
        ..Stats::default()
    };
    let (mut witness, mut error, mut failing) = (None, None, Vec::new());
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome? {
            Outcome::Pass(k) => stats.checks += k,
            Outcome::Disagree(w, k) => {
                stats.checks += k;
                stats.disagreements += 1;
                failing.push(i);
                witness.get_or_insert(w);
            }
            Outcome::Error(e) => {
                stats.errors += 1;
                failing.push(i);
                error.get_or_insert(e);
            }
        }
    }
    if cfg.shrink {
        witness = witness.map(|w| shrink(&w));
    }
    stats.elapsed = start.elapsed();
    let status = if failing.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Verdict {
        status,
        witness,
        error,
        failing_cases: failing,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_iterations_rejected() {
        assert!(matches!(
            fuzz_equiv(&FuzzConfig::new(1, 0)),
            Err(HarnessError::Config(_))
        ));
    }

    #[test]
    fn replay_is_deterministic() {
        let cfg = FuzzConfig::new(42, 100);
        let a = fuzz_case(&cfg, 17);
        let b = fuzz_case(&cfg, 17);
        assert_eq!(a.formula, b.formula);
        assert_eq!(a.structure, b.structure);
        assert_eq!(a.assignments, b.assignments);
        assert_ne!(
            fuzz_case(&cfg, 18).formula.to_string() + &fuzz_case(&cfg, 19).formula.to_string(),
            a.formula.to_string().repeat(2)
        );
    }

    #[test]
    fn small_run_passes() {
        let v = fuzz_equiv(&FuzzConfig::new(7, 200)).unwrap();
        assert!(
            v.passed(),
            "{:?} {:?}",
            v.error,
            v.witness.map(|w| w.to_string())
        );
        assert_eq!(v.stats.cases, 200);
    }

    #[test]
    fn non_ip_structures_break_translations() {
        let cfg = FuzzConfig {
            allow_non_ip: true,
            weights: FoWeights::NEGATION_HEAVY,
            signature: Signature::new(["P"], ["a"]).unwrap(),
            max_size: 5,
            ..FuzzConfig::new(3, 300)
        };
        let v = fuzz_equiv(&cfg).unwrap();
        assert!(v.stats.disagreements >= 1);
        let w = v.witness.unwrap();
        assert!(w.replays());
    }
}
