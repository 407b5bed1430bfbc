// Load a model from JSON and evaluate state formulas, path formulas and
// first-order formulas on it.

use std::error::Error;

use fo3pdl::parser::{parse_fo, parse_path, parse_state};
use fo3pdl::semantics::{eval_fo, eval_path, eval_state};
use fo3pdl::structures::Structure;
use fo3pdl::syntax::var;

const M0: &str = include_str!("../models/m0.json");
const M1: &str = include_str!("../models/m1.json");

pub fn run() -> Result<(), Box<dyn Error>> {
    let m0 = Structure::from_json(M0, false)?;
    for text in ["<a>Q", "loop(le)", "!P", "<le>(P & !Q)"] {
        println!("M0, {text}: {}", eval_state(&m0, &parse_state(text)?)?);
    }
    println!("M0, a . le: {}", eval_path(&m0, &parse_path("a . le")?)?);
    assert_eq!(eval_state(&m0, &parse_state("<a>Q")?)?.to_string(), "0 1");

    let m1 = Structure::from_json(M1, false)?;
    for op in ["c1", "c2", "c3", "c4"] {
        let p = parse_path(&format!("{op}(a)"))?;
        println!("M1, {p}: {}", eval_path(&m1, &p)?);
    }

    let f = parse_fo("exists y. (x <= y & P(y))")?;
    let nu = [(var("x"), 3)].into_iter().collect();
    println!("M0, {f} at x=3: {}", eval_fo(&m0, &f, &nu)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
