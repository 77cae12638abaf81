//! Orthogonality, classes of maps, factorization systems and modalities
//! over enumerated universes of finite sets.

mod classes;
mod orthogonality;
mod universe;
mod validate;

use serde::Serialize;

use crate::finset::{FinMap, FinSet};

pub use classes::{ClassSpec, MapList, Side};
pub use orthogonality::{
    complement, filler_count, is_orthogonal, is_orthogonal_internal, orthogonal, orthogonal_at_terminal,
    orthogonal_for_all_objects, LiftingFailure, OrthogonalityCheck, OrthogonalityKind,
};
pub use universe::{enumerate_universe, Universe, DEFAULT_UNIVERSE_CAP};
pub use validate::{
    is_local, validate_factorization_system, validate_modality, validate_modality_report, validate_sliced, Axiom,
    AxiomResult, SystemReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorizationError {
    #[error("universe of size {requested} exceeds the cap {cap}")]
    SizeTooLarge { requested: usize, cap: usize },
    #[error("map {0} does not lie in the universe")]
    MapOutsideUniverse(String),
}

/// The factorization systems with a direct construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BuiltinSystem {
    /// `(isos, all)`: the identity of the domain, then the map.
    IsoAll,
    /// `(all, isos)`: the map, then the identity of the codomain.
    AllIso,
    /// `(epis, monos)`: the image factorization.
    EpiMono,
}

impl BuiltinSystem {
    pub fn classes(self) -> (ClassSpec, ClassSpec) {
        match self {
            BuiltinSystem::IsoAll => (ClassSpec::Isos, ClassSpec::All),
            BuiltinSystem::AllIso => (ClassSpec::All, ClassSpec::Isos),
            BuiltinSystem::EpiMono => (ClassSpec::Epis, ClassSpec::Monos),
        }
    }
}

/// `f = right ∘ left`, through `middle`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub left: FinMap,
    pub right: FinMap,
    pub middle: FinSet,
}

pub fn factorize(f: &FinMap, system: BuiltinSystem) -> Factorization {
    match system {
        BuiltinSystem::IsoAll => {
            Factorization { left: FinMap::identity(f.dom()), right: f.clone(), middle: f.dom().clone() }
        }
        BuiltinSystem::AllIso => {
            Factorization { left: f.clone(), right: FinMap::identity(f.cod()), middle: f.cod().clone() }
        }
        BuiltinSystem::EpiMono => {
            let mut hit = vec![false; f.cod().len()];
            for &t in f.images() {
                hit[t] = true;
            }
            let image: Vec<usize> = (0..f.cod().len()).filter(|&c| hit[c]).collect();
            let middle = FinSet::new(image.iter().map(|&c| f.cod().label(c).clone()).collect())
                .expect("codomain labels are distinct");
            let mut slot = vec![0; f.cod().len()];
            for (i, &c) in image.iter().enumerate() {
                slot[c] = i;
            }
            let left = FinMap::new(f.dom().clone(), middle.clone(), f.images().iter().map(|&t| slot[t]).collect())
                .expect("image covers every value");
            let right = FinMap::new(middle.clone(), f.cod().clone(), image).expect("inclusion of the image");
            Factorization { left, right, middle }
        }
    }
}

/// Validation state of a modality.
#[derive(Debug, Clone)]
pub enum Validation {
    Unchecked,
    Passed { max_size: usize },
    Failed(Box<SystemReport>),
}

/// A candidate modality `(L, R)`.
#[derive(Debug, Clone)]
pub struct ModalitySpec {
    pub left: ClassSpec,
    pub right: ClassSpec,
    pub validated: Validation,
}

impl ModalitySpec {
    pub fn new(left: ClassSpec, right: ClassSpec) -> ModalitySpec {
        ModalitySpec { left, right, validated: Validation::Unchecked }
    }

    pub fn builtin(system: BuiltinSystem) -> ModalitySpec {
        let (l, r) = system.classes();
        ModalitySpec::new(l, r)
    }

    /// Whether validation passed on a universe at least as large as `max_size`.
    pub fn passed_on(&self, max_size: usize) -> bool {
        matches!(self.validated, Validation::Passed { max_size: m } if m >= max_size)
    }

    pub fn name(&self) -> String {
        format!("({}, {})", self.left, self.right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::ArrowMorphism;
    use crate::finset::{compose, is_arrow_morphism};

    fn map(dom: usize, cod: usize, images: &[usize]) -> FinMap {
        FinMap::new(FinSet::canonical(dom), FinSet::canonical(cod), images.to_vec()).unwrap()
    }

    #[test]
    fn image_factorization() {
        let f = map(3, 4, &[1, 3, 1]);
        let fac = factorize(&f, BuiltinSystem::EpiMono);
        assert_eq!(fac.middle.len(), 2);
        assert_eq!(fac.middle.to_string(), "{1,3}");
        assert_eq!(compose(&fac.right, &fac.left).unwrap(), f);
        assert!(fac.left.is_surjective() && fac.right.is_injective());

        let m = map(2, 3, &[2, 0]);
        assert!(factorize(&m, BuiltinSystem::EpiMono).left.is_iso());
    }

    #[test]
    fn degenerate_factorizations() {
        let f = map(3, 2, &[0, 0, 1]);
        for sys in [BuiltinSystem::IsoAll, BuiltinSystem::AllIso] {
            let fac = factorize(&f, sys);
            let (l, r) = sys.classes();
            assert!(l.contains(&fac.left) && r.contains(&fac.right));
            assert_eq!(compose(&fac.right, &fac.left).unwrap(), f);
        }
    }

    /// Comparison isos between two image factorizations: the only map of
    /// middles making both triangles commute is unique and invertible.
    #[test]
    fn image_factorizations_are_uniquely_isomorphic() {
        let u = enumerate_universe(3).unwrap();
        for f in u.maps() {
            let a = factorize(f, BuiltinSystem::EpiMono);
            // a second factorization through canonical labels
            let b = Factorization {
                left: a.left.canonicalized(),
                right: FinMap::new(FinSet::canonical(a.middle.len()), f.cod().clone(), a.right.images().to_vec())
                    .unwrap(),
                middle: FinSet::canonical(a.middle.len()),
            };
            let n = a.middle.len();
            let mut comparisons = 0;
            for phi in u.hom(n, n) {
                let phi = FinMap::new(a.middle.clone(), b.middle.clone(), phi.images().to_vec()).unwrap();
                let square = ArrowMorphism { top: phi.clone(), bottom: FinMap::identity(f.cod()) };
                if compose(&phi, &a.left).unwrap() == b.left
                    && is_arrow_morphism(&a.right, &b.right, &square.top, &square.bottom)
                {
                    assert!(phi.is_iso());
                    comparisons += 1;
                }
            }
            assert_eq!(comparisons, 1, "{f}");
        }
    }
}
