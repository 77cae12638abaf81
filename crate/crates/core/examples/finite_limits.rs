//! Pushouts, pullbacks and their universal properties on small labelled
//! sets.

use bmlab::finset::{compose, make_map, pullback, pushout, CommutativeSquare, Exponential, FinMap, FinSet, Label};

fn labels<const N: usize>(names: [&str; N]) -> Vec<Label> {
    names.iter().map(|n| Label::atom(n).unwrap()).collect()
}

fn pairs<const N: usize>(assignment: [(&str, &str); N]) -> Vec<(Label, Label)> {
    assignment.iter().map(|(a, b)| (Label::atom(a).unwrap(), Label::atom(b).unwrap())).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Z = {z0, z1} glued into X = {a, b} and Y = {c}
    let f = make_map(labels(["z0", "z1"]), labels(["a", "b"]), pairs([("z0", "a"), ("z1", "b")]))?;
    let g = make_map(labels(["z0", "z1"]), labels(["c"]), pairs([("z0", "c"), ("z1", "c")]))?;

    let po = pushout(&f, &g)?;
    println!("pushout apex {}", po.apex());
    println!("  i1: {}", po.i1());
    println!("  i2: {}", po.i2());

    // any cocone factors uniquely
    let m = po.mediator(&FinMap::to_terminal(f.cod()), &FinMap::to_terminal(g.cod()))?;
    println!("mediator to the point: {m}");

    let pb = pullback(po.i1(), po.i2())?;
    println!("pullback of the injections has {} elements", pb.apex().len());

    let sq = CommutativeSquare::new(g.clone(), f.clone(), po.i2().clone(), po.i1().clone())?;
    println!("square cartesian: {}, cocartesian: {}", sq.is_cartesian(), sq.is_cocartesian());

    let h = compose(po.i1(), &f)?;
    println!("i1 . f = {h}");

    // functions 2 -> 3 as elements of an exponential
    let e = Exponential::new(&FinSet::canonical(2), &FinSet::canonical(3));
    println!("|3^2| = {}; element 5 is {}", e.set().len(), e.function(5));
    Ok(())
}
