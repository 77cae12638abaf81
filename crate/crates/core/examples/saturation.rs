//! The engine reaches the same fixpoint whatever order the rules run in,
//! and never fires more often than the lattice height allows.

use bmlab::conn::{firing_bound, infer, infer_shuffled};
use bmlab::dsl::parse;

const DIAGRAM: &str = "\
obj A B C
map f : A -> B
map g : A -> C
P = pushout(f, g)
h = gap(P)
d = diag(h)
w = pp(f, g)
conn(f) >= 2
conn(g) >= 1
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = parse("saturation.bm", DIAGRAM).map_err(|e| format!("{e:?}"))?;
    let cap = 16;
    let base = infer(&d, cap);
    for seed in 0..10 {
        let other = infer_shuffled(&d, cap, seed);
        assert_eq!(other.table(), base.table());
        println!("seed {seed}: {} passes, {} steps", other.passes, other.steps.len());
    }
    println!("firings {:?}, bound {}", base.firings, firing_bound(&d, cap));
    println!("every step replays: {}", base.replays());
    Ok(())
}
