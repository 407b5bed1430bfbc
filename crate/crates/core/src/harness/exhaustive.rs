use std::time::Instant;

use super::{Claim, HarnessError, Stats, Status, Verdict, Witness};
use crate::semantics::all_assignments;
use crate::structures::{enumerate_ip_relations, PointSet, Relation, Structure};
use crate::syntax::{Fo, Signature};

/// Every structure of size `n <= 3` over `sig`: all predicate valuations
/// combined with all tuples of interval-preserving relations. The first
/// predicate varies fastest, valuations before relations.
pub fn structures_of_size(sig: &Signature, n: usize) -> Result<Vec<Structure>, HarnessError> {
    let ip = enumerate_ip_relations(n)?;
    let preds: Vec<&str> = sig.predicates().collect();
    let rels: Vec<&str> = sig.relations().collect();
    // one digit per symbol; predicates count in subsets, relations in `ip`
    let radix: Vec<usize> = preds
        .iter()
        .map(|_| 1 << n)
        .chain(rels.iter().map(|_| ip.len()))
        .collect();
    let mut digits = vec![0usize; radix.len()];
    let mut out = Vec::new();
    loop {
        let mut m = Structure::new(n)?;
        for (i, p) in preds.iter().enumerate() {
            m.set_predicate(p, PointSet::from_bits(digits[i] as u128))?;
        }
        for (j, r) in rels.iter().enumerate() {
            let rel: &Relation = &ip[digits[preds.len() + j]];
            m.set_relation(r, rel.clone())?;
        }
        out.push(m);
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] < radix[k] {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Checks `claim` on every structure of size `1..=max_n` over `sig` (extended
/// by the claim's own symbols) and every assignment. Stops at the first
/// disagreement, which is therefore on a smallest structure.
pub fn exhaustive_check(
    claim: &Claim,
    max_n: usize,
    sig: &Signature,
) -> Result<Verdict, HarnessError> {
    if max_n > 3 {
        return Err(HarnessError::Config(format!(
            "exhaustive runs enumerate every relation and stop at size 3, not {max_n}"
        )));
    }
    let start = Instant::now();
    let sig = sig.merge(&claim.signature()?)?;
    let mut stats = Stats {
        cases: 1,
        ..Stats::default()
    };
    let prepared = match claim.prepare() {
        Ok(p) => p,
        Err(e) => {
            stats.errors = 1;
            stats.elapsed = start.elapsed();
            return Ok(Verdict {
                status: Status::Fail,
                witness: None,
                error: Some(e.to_string()),
                failing_cases: vec![0],
                stats,
            });
        }
    };
    for n in 1..=max_n {
        for m in structures_of_size(&sig, n)? {
            stats.structures += 1;
            let assignments: Vec<_> = all_assignments(&prepared.vars, n).collect();
            stats.checks += assignments.len() as u64;
            let found = prepared.first_disagreement(&m, assignments)?;
            if let Some((assignment, side)) = found {
                stats.disagreements = 1;
                stats.elapsed = start.elapsed();
                let witness = Witness {
                    claim: claim.clone(),
                    structure: m,
                    assignment,
                    side,
                    case: None,
                };
                return Ok(Verdict {
                    status: Status::Fail,
                    witness: Some(witness),
                    error: None,
                    failing_cases: vec![0],
                    stats,
                });
            }
        }
    }
    stats.elapsed = start.elapsed();
    Ok(Verdict {
        status: Status::Pass,
        witness: None,
        error: None,
        failing_cases: vec![],
        stats,
    })
}

/// Whether `f` and `g` agree on every structure of size at most `max_n`
/// over their joint signature, under every assignment.
pub fn exhaustive_equiv(f: &Fo, g: &Fo, max_n: usize) -> Result<Verdict, HarnessError> {
    exhaustive_check(
        &Claim::Equiv(f.clone(), g.clone()),
        max_n,
        &Signature::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Side;
    use crate::parser::parse_fo;
    use crate::syntax::var;
    use crate::transpiler::{fo_to_fo3, Options};

    #[test]
    fn double_negation_passes() {
        let f = parse_fo("x <= y").unwrap();
        let g = parse_fo("!!x <= y").unwrap();
        assert!(exhaustive_equiv(&f, &g, 3).unwrap().passed());
    }

    #[test]
    fn distinct_predicates_fail_on_one_point() {
        let v =
            exhaustive_equiv(&parse_fo("P(x)").unwrap(), &parse_fo("Q(x)").unwrap(), 3).unwrap();
        assert!(!v.passed());
        let w = v.witness.unwrap();
        assert_eq!(w.structure.size(), 1);
        assert_eq!(w.structure.predicate("P").unwrap(), PointSet::singleton(0));
        assert!(w.structure.predicate("Q").unwrap().is_empty());
        assert_eq!(w.assignment[&var("x")], 0);
        assert_eq!(w.side, Side::Right);
        assert!(w.replays());
    }

    #[test]
    fn translation_instance_passes() {
        let f = parse_fo("exists y. (x <= y & P(y))").unwrap();
        let g = fo_to_fo3(&f, &Options::default()).unwrap();
        assert!(exhaustive_equiv(&f, &g, 3).unwrap().passed());
        let claim = Claim::Translation(f, Options::default());
        assert!(exhaustive_check(&claim, 3, &Signature::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn enumeration_size() {
        let sig = Signature::new(["P"], ["a"]).unwrap();
        let ip2 = enumerate_ip_relations(2).unwrap().len();
        assert_eq!(structures_of_size(&sig, 2).unwrap().len(), 4 * ip2);
        assert!(exhaustive_check(
            &Claim::Equiv(Fo::pred("P", &var("x")), Fo::pred("P", &var("x"))),
            4,
            &sig
        )
        .is_err());
    }
}
