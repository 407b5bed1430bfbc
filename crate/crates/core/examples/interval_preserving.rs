// Check relations for interval preservation, build some that are, and
// watch the property survive converse, intersection and composition.

use std::error::Error;

use fo3pdl::structures::{
    enumerate_ip_relations, gen_monotone, gen_succ, gen_until, is_interval_preserving, IpVerdict,
    Monotonicity, Relation, Structure,
};

fn show(name: &str, r: &Relation) {
    match is_interval_preserving(r) {
        IpVerdict::Ok => println!("{name} = {r}: interval-preserving"),
        IpVerdict::Counterexample(w) => println!("{name} = {r}: counterexample ({w})"),
    }
}

pub fn run() -> Result<(), Box<dyn Error>> {
    // The smallest kind of failure: two crossing arrows.
    let crossing = Relation::from_pairs(3, [(0, 0), (1, 2), (2, 1)]);
    show("crossing", &crossing);
    assert!(!is_interval_preserving(&crossing).is_ok());

    let m = Structure::new(4)?
        .with_predicate("P", [1, 3])?
        .with_predicate("Q", [2])?;
    let until = gen_until(&m, "P", "Q")?;
    let succ = gen_succ(6, 2);
    let mono = gen_monotone(6, 7, Monotonicity::Increasing, 0.8);
    show("until(P, Q)", &until);
    show("succ+2", &succ);
    show("monotone", &mono);

    let mixed = mono
        .compose(&succ)
        .intersect(&Relation::le(6).converse().complement());
    show("monotone . succ+2, strictly increasing part", &mixed);
    assert!(is_interval_preserving(&mixed).is_ok());

    for n in 1..=3 {
        println!(
            "{} interval-preserving relations on {n} points",
            enumerate_ip_relations(n)?.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
