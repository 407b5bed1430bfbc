// Rewrite a formula that quantifies over four variables into an equivalent
// one that reuses three variable names.

use std::error::Error;

use fo3pdl::harness::{exhaustive_check, Claim};
use fo3pdl::parser::parse_fo;
use fo3pdl::syntax::Signature;
use fo3pdl::transpiler::{translate_fo3, Options};

pub fn run() -> Result<(), Box<dyn Error>> {
    // Four points forming a chain x <= y <= z <= w, with P at both ends.
    let f = parse_fo(
        "exists y. exists z. exists w. x <= y & y <= z & z <= w & P(x) & P(w) & !P(y) & a(z,w)",
    )?;
    println!("input uses {} variables: {f}", f.count_vars());

    let t = translate_fo3(&f, &Options::default())?;
    println!("path combination: {}", t.pbc);
    for (atom, g) in t.pbc.atoms().iter().zip(&t.atoms) {
        println!("  {} -> {} variables", atom.path, g.count_vars());
    }
    println!(
        "result uses {} variables ({} symbols)",
        t.formula.count_vars(),
        t.formula.size()
    );
    assert!(t.formula.count_vars() <= 3);

    // Agreement on every interval-preserving structure with at most three points.
    let sig = Signature::new(["P"], ["a"])?;
    let v = exhaustive_check(&Claim::Translation(f, Options::default()), 3, &sig)?;
    println!(
        "exhaustive check: {} assignments, passed: {}",
        v.stats.checks,
        v.passed()
    );
    assert!(v.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
