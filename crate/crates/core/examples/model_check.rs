//! Runs the finite-set checks, exhaustively or on seeded samples.
//!
//! cargo run --example model_check -- dual-bm 3
//! cargo run --example model_check -- squareford 4 200

use bmlab::lab::{Scope, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let suite = args.first().map_or(Some(Suite::DualBm), |s| Suite::parse(s)).ok_or("unknown suite")?;
    let max_size = args.get(1).map_or(Ok(2), |s| s.parse())?;
    let scope = match args.get(2) {
        Some(k) => Scope::Sampled { max_size, seed: 0, samples: k.parse()? },
        None => Scope::Exhaustive { max_size },
    };
    for r in suite.run(&scope)? {
        println!("{}: {} ({}); {} cases, {} instances", r.name, r.status, r.scope, r.cases, r.instances);
        for n in &r.notes {
            println!("  {n}");
        }
        if let Some(w) = &r.witness {
            println!("  counterexample: {}", serde_json::to_string(w)?);
        }
    }
    Ok(())
}
