//! Operations on arrows: pushout product, pullback hom, joins, spheres and
//! the hom-count adjunction between the first two.

use bmlab::arrow::{arrow_hom_count, codiagonal, diagonal, join, pullback_hom, pushout_product, sphere_map};
use bmlab::finset::{FinMap, FinSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let two = FinSet::canonical(2);
    let u = FinMap::from_initial(&FinSet::terminal());
    let v = FinMap::to_terminal(&two);
    let f = FinMap::new(two.clone(), FinSet::canonical(3), vec![0, 2])?;

    let uv = pushout_product(&u, &v);
    println!("u □ v = {uv}");
    let vf = pullback_hom(&v, &f);
    println!("<v, f> : {} -> {}", vf.dom().len(), vf.cod().len());

    let left = arrow_hom_count(&uv, &f);
    let right = arrow_hom_count(&u, &vf);
    println!("hom(u □ v, f) = {left}, hom(u, <v, f>) = {right}");

    for n in -1..=2 {
        println!("sphere map s{n}: {}", sphere_map(n)?);
    }
    println!("join of 2 and 3 points has {} points", join(&two, &FinSet::canonical(3)).len());

    let collapse = FinMap::to_terminal(&two);
    println!("diagonal of a collapse: {}", diagonal(&collapse));
    println!("codiagonal of an inclusion: {}", codiagonal(&FinMap::point(&two, 0)));
    Ok(())
}
