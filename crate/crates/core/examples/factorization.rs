//! Orthogonality, complements and factorization systems on the universe of
//! sets of size at most 2.

use bmlab::factorization::{
    complement, enumerate_universe, factorize, is_orthogonal, validate_factorization_system, BuiltinSystem, ClassSpec,
    OrthogonalityKind, Side,
};
use bmlab::finset::{FinMap, FinSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let u = enumerate_universe(2)?;
    println!("universe: {} objects, {} maps", u.objects().len(), u.maps().len());

    let s0 = FinMap::to_terminal(&FinSet::canonical(2));
    let check = is_orthogonal(&s0, &s0);
    println!("s0 against itself: {} squares, orthogonal = {}", check.squares, check.holds);

    let right = complement(&[s0], Side::Right, &u, OrthogonalityKind::External)?;
    let monos = right.filter(u.maps()).len();
    println!("maps right orthogonal to s0: {monos} (all monos)");

    let f = FinMap::new(FinSet::canonical(3), FinSet::canonical(3), vec![0, 0, 2])?;
    let fact = factorize(&f, BuiltinSystem::EpiMono);
    println!("{f} = ({}) then ({})", fact.left, fact.right);

    for (l, r) in [(ClassSpec::Epis, ClassSpec::Monos), (ClassSpec::Monos, ClassSpec::Epis)] {
        let report = validate_factorization_system(&l, &r, &u);
        println!("({l}, {r}): passed = {} over {} cases", report.passed(), report.cases());
        for fail in report.failures() {
            println!("  fails {}", fail.axiom.id());
        }
    }
    Ok(())
}
