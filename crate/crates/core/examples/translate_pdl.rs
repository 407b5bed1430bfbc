// Translate first-order formulas with one or two free variables into
// star-free PDL and check the result on a small model.

use std::error::Error;

use fo3pdl::parser::parse_fo;
use fo3pdl::semantics::{eval_fo, eval_path, eval_state};
use fo3pdl::structures::{Relation, Structure};
use fo3pdl::syntax::var;
use fo3pdl::transpiler::{fo_to_path, fo_to_state, Options};

pub fn run() -> Result<(), Box<dyn Error>> {
    let m = Structure::new(4)?
        .with_predicate("P", [1, 3])?
        .with_predicate("Q", [2])?
        .with_relation("a", [(0, 2), (1, 2), (1, 3)])?;
    let opts = Options::default();

    // One free variable gives a state formula.
    for text in [
        "exists y. (x <= y & P(y))",
        "forall y. (x <= y -> !Q(y))",
        "exists y. a(x,y) & Q(y)",
    ] {
        let f = parse_fo(text)?;
        let s = fo_to_state(&f, &opts)?;
        let points = eval_state(&m, &s)?;
        println!("{text}\n  => {s}\n  holds at {points}");
        for a in 0..m.size() {
            let nu = [(var("x"), a)].into_iter().collect();
            assert_eq!(points.contains(a), eval_fo(&m, &f, &nu)?);
        }
    }

    // Two free variables give a path formula.
    let f = parse_fo("x <= y & !(exists z. x <= z & z <= y & !(z = x) & !(z = y))")?;
    let p = fo_to_path(&f, &opts)?;
    let r = eval_path(&m, &p)?;
    println!("{f}\n  => {p}\n  denotes {r}");
    let mut expected = Relation::identity(4);
    for a in 0..3 {
        expected.insert(a, a + 1);
    }
    assert_eq!(r, expected);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
