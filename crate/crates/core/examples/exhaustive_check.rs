// Compare formulas, and a formula with its translations, on every small
// interval-preserving structure.

use std::error::Error;

use fo3pdl::harness::{exhaustive_check, exhaustive_equiv, prenex_family, Claim};
use fo3pdl::parser::parse_fo;
use fo3pdl::syntax::Signature;
use fo3pdl::transpiler::Options;

pub fn run() -> Result<(), Box<dyn Error>> {
    let pairs = [
        (
            "exists y. (x <= y & P(y))",
            "P(x) | exists y. (x <= y & !x = y & P(y))",
        ),
        ("exists y. a(x,y)", "exists y. a(y,x)"),
    ];
    for (l, r) in pairs {
        let v = exhaustive_equiv(&parse_fo(l)?, &parse_fo(r)?, 3)?;
        println!(
            "{l}\n  vs {r}: {:?} after {} assignments",
            v.status, v.stats.checks
        );
        if let Some(w) = &v.witness {
            println!("{w}");
        }
    }

    let sig = Signature::new(["P"], ["a"])?;
    let family = prenex_family(7, 3, &sig);
    let (mut agree, mut too_large) = (0, 0);
    for f in &family {
        let v = exhaustive_check(&Claim::Translation(f.clone(), Options::default()), 3, &sig)?;
        assert!(v.witness.is_none(), "{f} disagrees with its translation");
        if v.passed() {
            agree += 1;
        } else {
            too_large += 1;
            println!("{f}: {}", v.error.unwrap_or_default());
        }
    }
    println!(
        "{agree} of {} prenex formulas agree with their translations, {too_large} untranslated",
        family.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
