//! Witnesses are plain JSON: save one, read it back and re-run its check.

use bmlab::lab::{replay, Scope, Suite};
use bmlab::witness::Witness;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reports = Suite::LCartesian.run(&Scope::Exhaustive { max_size: 1 })?;
    let example = reports.iter().flat_map(|r| &r.examples).next().ok_or("no example recorded")?;

    let json = serde_json::to_string_pretty(example)?;
    println!("{json}");

    let back: Witness = serde_json::from_str(&json)?;
    let verdict = replay(&back)?;
    println!(
        "{}: premise {}, conclusion {}, counterexample {}",
        back.check,
        verdict.premise,
        verdict.conclusion,
        verdict.is_counterexample()
    );
    Ok(())
}
