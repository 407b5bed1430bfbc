// Randomized comparison of formulas with their translations, once on
// interval-preserving structures and once on structures that break the
// hypothesis, where disagreements are expected.

use std::error::Error;

use fo3pdl::harness::{fuzz_equiv, FoWeights, FuzzConfig, Report};

pub fn run() -> Result<(), Box<dyn Error>> {
    let cfg = FuzzConfig::new(42, 300);
    let v = fuzz_equiv(&cfg)?;
    let report = Report::from_verdict("fuzz", Some(cfg.seed), &v, |i| {
        format!("fuzz --seed 42 --replay {i}")
    });
    for line in report.lines() {
        println!("{line}");
    }
    assert!(v.passed());

    let control = FuzzConfig {
        allow_non_ip: true,
        weights: FoWeights::NEGATION_HEAVY,
        ..FuzzConfig::new(42, 300)
    };
    let v = fuzz_equiv(&control)?;
    println!(
        "without interval preservation: {} of {} cases disagree",
        v.stats.disagreements, v.stats.cases
    );
    if let Some(w) = &v.witness {
        println!("smallest witness found:\n{w}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
