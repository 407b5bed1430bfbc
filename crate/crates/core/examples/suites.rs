// The structural checks on relations and path formulas, at a size that
// runs in a few seconds.

use std::error::Error;

use fo3pdl::harness::{
    closure_suite, coherence_suite, complement_suite, fragment_ip_suite, generator_suites,
    helly_check, helly_suite, round_trip_suite,
};
use fo3pdl::structures::Interval;

pub fn run() -> Result<(), Box<dyn Error>> {
    let mut reports = vec![
        closure_suite(1, 200, 12),
        fragment_ip_suite(1, 200, 4, 10),
        complement_suite(1, 200, 4, 10),
        coherence_suite(1, 200, 4, 10),
        helly_suite(3, 5),
        round_trip_suite(1, 500, 4),
    ];
    reports.extend(generator_suites(1, 200, 12));
    for r in &reports {
        println!("{r}");
    }
    assert!(reports.iter().all(|r| r.passed()));

    // Three intervals meeting pairwise share a point.
    let family = [
        Interval::new(0, 2),
        Interval::new(1, 4),
        Interval::new(2, 3),
    ];
    println!("{:?}", helly_check(&family, 5));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
