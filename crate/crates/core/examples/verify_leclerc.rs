//! Runs every check on the `M_lambda` family for lambda in {2, 3, 5} and
//! prints one line per check.

use preproj::leclerc::{default_lambdas, verify_proposition};

fn main() -> preproj::Result<()> {
    let report = verify_proposition(&default_lambdas(), 7, 5)?;
    for c in &report.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        println!("{mark} ({}) {}: expected {}, got {}", c.id, c.check, c.expect, c.got);
    }
    println!("all checks pass: {}", report.pass);
    if !report.pass {
        std::process::exit(1);
    }
    Ok(())
}
