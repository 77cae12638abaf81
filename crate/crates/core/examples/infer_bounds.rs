//! Connectivity inference on a gluing diagram, with a derivation tree.

use bmlab::conn::{explain, infer, DEFAULT_CAP};
use bmlab::dsl::parse;

const SUSPENSION: &str = "\
# X glued to itself along two copies of the point
obj X
S = pushout(X.term, X.term)
gap1 = gap(S)
conn(X.term) >= 2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = parse("suspension.bm", SUSPENSION).map_err(|e| format!("{e:?}"))?;
    let inf = infer(&d, DEFAULT_CAP);
    for (m, b) in d.maps().iter().zip(inf.table()) {
        println!("{:8} conn {:?} trunc {:?}", m.name, b.conn, b.trunc);
    }
    println!("{} firings in {} passes", inf.firings[0] + inf.firings[1], inf.passes);
    println!();
    print!("{}", explain(&d, &inf, "gap1")?);
    Ok(())
}
