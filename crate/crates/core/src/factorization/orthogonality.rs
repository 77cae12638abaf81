use crate::arrow::{arrow_morphisms, pullback_hom, ArrowMorphism};
use crate::finset::{product_map, FinMap};

use super::{ClassSpec, FactorizationError, Side, Universe};

/// Number of diagonal fillers `d: B -> X` for the square `(top, bottom)`
/// from `u: A -> B` to `f: X -> Y`.
///
/// Fillers decompose over the points of `B`: a point hit by `u` has its
/// value forced, and it works iff all of its preimages agree under the top
/// map and land over the bottom; a point missed by `u` may go anywhere in
/// the fiber of `f` over its bottom image.
pub fn filler_count(u: &FinMap, f: &FinMap, sq: &ArrowMorphism) -> u64 {
    let f_sizes = f.fiber_sizes();
    let mut total: u64 = 1;
    for (b, fib) in u.fibers().iter().enumerate() {
        let y = sq.bottom.apply(b);
        let choices = match fib.split_first() {
            None => f_sizes[y] as u64,
            Some((&a0, rest)) => {
                let x = sq.top.apply(a0);
                let agree = rest.iter().all(|&a| sq.top.apply(a) == x);
                u64::from(agree && f.apply(x) == y)
            }
        };
        total = total.saturating_mul(choices);
        if total == 0 {
            return 0;
        }
    }
    total
}

/// A square without a unique filler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingFailure {
    pub square: ArrowMorphism,
    pub fillers: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityCheck {
    pub holds: bool,
    pub squares: usize,
    /// The first failing square in enumeration order.
    pub witness: Option<LiftingFailure>,
}

/// `u ⊥ f`: every square from `u` to `f` has exactly one filler.
pub fn is_orthogonal(u: &FinMap, f: &FinMap) -> OrthogonalityCheck {
    let squares = arrow_morphisms(u, f);
    let n = squares.len();
    for sq in squares {
        let fillers = filler_count(u, f, &sq);
        if fillers != 1 {
            return OrthogonalityCheck {
                holds: false,
                squares: n,
                witness: Some(LiftingFailure { square: sq, fillers }),
            };
        }
    }
    OrthogonalityCheck { holds: true, squares: n, witness: None }
}

pub fn orthogonal(u: &FinMap, f: &FinMap) -> bool {
    is_orthogonal(u, f).holds
}

/// `u ⫠ f`: the pullback hom `⟨u, f⟩` is invertible.
pub fn is_orthogonal_internal(u: &FinMap, f: &FinMap) -> bool {
    pullback_hom(u, f).is_iso()
}

/// `Z × u ⊥ f` for every object `Z` of the universe.
pub fn orthogonal_for_all_objects(u: &FinMap, f: &FinMap, universe: &Universe) -> bool {
    universe.objects().iter().all(|z| orthogonal(&product_map(&FinMap::identity(z), u), f))
}

/// `Z × u ⊥ f` with `Z` the one-point set only.
pub fn orthogonal_at_terminal(u: &FinMap, f: &FinMap) -> bool {
    orthogonal(&product_map(&FinMap::identity(&crate::finset::FinSet::terminal()), u), f)
}

/// Which notion of orthogonality a complement is taken with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthogonalityKind {
    External,
    Internal,
}

pub(crate) fn orthogonal_by(kind: OrthogonalityKind, u: &FinMap, f: &FinMap) -> bool {
    match kind {
        OrthogonalityKind::External => orthogonal(u, f),
        OrthogonalityKind::Internal => is_orthogonal_internal(u, f),
    }
}

/// Every universe map orthogonal to all of `generators` on the given side:
/// `S⊥` for [`Side::Right`], `⊥S` for [`Side::Left`].
pub fn complement(
    generators: &[FinMap],
    side: Side,
    universe: &Universe,
    kind: OrthogonalityKind,
) -> Result<ClassSpec, FactorizationError> {
    if let Some(g) = generators.iter().find(|g| !universe.fits(g)) {
        return Err(FactorizationError::MapOutsideUniverse(g.to_string()));
    }
    let members = universe
        .maps()
        .iter()
        .filter(|f| {
            generators.iter().all(|g| match side {
                Side::Right => orthogonal_by(kind, g, f),
                Side::Left => orthogonal_by(kind, f, g),
            })
        })
        .cloned()
        .collect();
    Ok(ClassSpec::extensional(members))
}
