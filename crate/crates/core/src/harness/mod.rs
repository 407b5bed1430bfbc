//! Property-test engines: exhaustive small-model equivalence, seeded
//! fuzzing, structural suites, and counterexample shrinking.

mod exhaustive;
mod fuzz;
mod report;
mod sample;
mod shrink;
mod suites;

use std::fmt;
use std::time::Duration;

use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::semantics::{eval_fo, EvalError, Evaluator, FoTableEvaluator};
use crate::structures::{rng_from_seed, Assignment, Structure, StructureError};
use crate::syntax::{Fo, Pbc, Signature, SyntaxError, Var};
use crate::transpiler::{translate_fo3, translation_vars, Options, TranslateError};

pub use exhaustive::{exhaustive_check, exhaustive_equiv, structures_of_size};
pub use fuzz::{fuzz_case, fuzz_equiv, FuzzCase, FuzzConfig};
pub use report::{FailureEntry, Report};
pub use sample::{
    path_in, prenex_family, random_fo, random_fo_any, random_fragment_path, random_path,
    random_state, FoWeights, VARIABLES,
};
pub use shrink::shrink;
pub use suites::{
    closure_suite, coherence_suite, complement_suite, fragment_ip_suite, generator_suites,
    helly_check, helly_suite, round_trip_suite, HellyVerdict, SuiteReport,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Independent random stream for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = rng_from_seed(seed);
    rng.set_stream(index as u64);
    rng
}

/// What a run checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// Two formulas agree.
    Equiv(Fo, Fo),
    /// A formula agrees with its path translation and its three-variable
    /// translation.
    Translation(Fo, Options),
}

/// The side that disagreed with the left-hand formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Right,
    Pbc,
    Fo3,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right-hand formula",
            Side::Pbc => "path translation",
            Side::Fo3 => "three-variable translation",
        })
    }
}

/// A claim with its translations computed.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub left: Fo,
    pub right: Option<Fo>,
    pub pbc: Option<Pbc>,
    pub fo3: Option<Fo>,
    /// The per-atom formulas of the three-variable translation.
    pub fo3_atoms: Vec<Fo>,
    pub vars: Vec<Var>,
}

impl Claim {
    pub fn left(&self) -> &Fo {
        match self {
            Claim::Equiv(f, _) | Claim::Translation(f, _) => f,
        }
    }

    pub fn signature(&self) -> Result<Signature, SyntaxError> {
        match self {
            Claim::Equiv(f, g) => f.signature()?.merge(&g.signature()?),
            Claim::Translation(f, _) => f.signature(),
        }
    }

    pub fn prepare(&self) -> Result<Prepared, TranslateError> {
        Ok(match self {
            Claim::Equiv(f, g) => {
                let mut vars: Vec<Var> = f.free_vars().union(&g.free_vars()).cloned().collect();
                vars.sort();
                Prepared {
                    left: f.clone(),
                    right: Some(g.clone()),
                    pbc: None,
                    fo3: None,
                    fo3_atoms: vec![],
                    vars,
                }
            }
            Claim::Translation(f, opts) => {
                let t = translate_fo3(f, opts)?;
                Prepared {
                    left: f.clone(),
                    right: None,
                    pbc: Some(t.pbc),
                    fo3: Some(t.formula),
                    fo3_atoms: t.atoms,
                    vars: translation_vars(f),
                }
            }
        })
    }
}

impl Prepared {
    /// The first assignment, in the given order, on which a side disagrees
    /// with the left-hand formula.
    pub fn first_disagreement(
        &self,
        m: &Structure,
        assignments: impl IntoIterator<Item = Assignment>,
    ) -> Result<Option<(Assignment, Side)>, EvalError> {
        let mut pdl = Evaluator::new(m);
        let mut table = FoTableEvaluator::new(m);
        for nu in assignments {
            let truth = eval_fo(m, &self.left, &nu)?;
            if let Some(g) = &self.right {
                if eval_fo(m, g, &nu)? != truth {
                    return Ok(Some((nu, Side::Right)));
                }
            }
            if let Some(p) = &self.pbc {
                if pdl.pbc(p, &nu)? != truth {
                    return Ok(Some((nu, Side::Pbc)));
                }
            }
            if let Some(g) = &self.fo3 {
                if table.holds(g, &nu)? != truth {
                    return Ok(Some((nu, Side::Fo3)));
                }
            }
        }
        Ok(None)
    }
}

/// A structure and assignment on which a claim fails.
#[derive(Clone, Debug)]
pub struct Witness {
    pub claim: Claim,
    pub structure: Structure,
    pub assignment: Assignment,
    pub side: Side,
    /// Index of the fuzz case the witness came from, before shrinking.
    pub case: Option<usize>,
}

impl Witness {
    /// Whether the claim still fails on this structure and assignment.
    pub fn replays(&self) -> bool {
        let Ok(prepared) = self.claim.prepare() else {
            return false;
        };
        matches!(
            prepared.first_disagreement(&self.structure, [self.assignment.clone()]),
            Ok(Some(_))
        )
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.claim {
            Claim::Equiv(a, b) => writeln!(f, "formulas: {a}  vs  {b}")?,
            Claim::Translation(a, _) => writeln!(f, "formula: {a}")?,
        }
        writeln!(f, "disagreeing side: {}", self.side)?;
        writeln!(f, "structure: {}", self.structure.to_json())?;
        let nu: Vec<String> = self
            .assignment
            .iter()
            .map(|(v, a)| format!("{v}={a}"))
            .collect();
        write!(f, "assignment: {}", nu.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Default)]
pub struct Stats {
    pub cases: usize,
    pub structures: u64,
    /// Assignments evaluated.
    pub checks: u64,
    pub disagreements: usize,
    /// Cases whose translation could not be produced.
    pub errors: usize,
    pub elapsed: Duration,
}

/// Outcome of an exhaustive or randomized run.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    /// Lowest-index disagreement, shrunk when requested.
    pub witness: Option<Witness>,
    /// First translation failure, if any.
    pub error: Option<String>,
    /// Indices of the cases that failed, in increasing order.
    pub failing_cases: Vec<usize>,
    pub stats: Stats,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
