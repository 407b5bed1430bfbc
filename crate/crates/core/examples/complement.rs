// Express the complement of a path formula without `comp`: eight pieces,
// each interval-preserving, whose union is the complement.

use std::error::Error;

use fo3pdl::parser::parse_path;
use fo3pdl::semantics::Evaluator;
use fo3pdl::structures::{is_interval_preserving, Relation, Structure};
use fo3pdl::transpiler::{complement_fragment, expand_c};

const M1: &str = include_str!("../models/m1.json");

pub fn run() -> Result<(), Box<dyn Error>> {
    let m = Structure::from_json(M1, false)?;
    let mut ev = Evaluator::new(&m);
    for text in ["a", "a . test(<a>true) . inv(le)"] {
        let p = parse_path(text)?;
        let mut union = Relation::empty(m.size());
        println!("pieces of comp({p}):");
        for q in complement_fragment(&p)? {
            let r = ev.path(&q)?;
            assert!(is_interval_preserving(&r).is_ok());
            println!("  {q} = {r}");
            union = union.union(&r);
        }
        let expected = ev.path(&p)?.complement();
        println!(
            "  union has {} pairs, complement has {}",
            union.len(),
            expected.len()
        );
        assert_eq!(union, expected);
    }

    // c1 to c4 are definable from the other constructors.
    let c3 = parse_path("c3(a)")?;
    let expanded = expand_c(&c3);
    println!("{c3} = {expanded}");
    assert_eq!(ev.path(&c3)?, ev.path(&expanded)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
