use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::finset::FinMap;

use super::orthogonality::orthogonal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Shape plus sorted fiber sizes: a complete invariant up to isomorphism of
/// arrows.
type IsoKey = (usize, usize, Vec<usize>);

fn iso_key(f: &FinMap) -> IsoKey {
    (f.dom().len(), f.cod().len(), f.fiber_profile())
}

/// A listed class, closed under isomorphism of arrows.
#[derive(Debug, Clone)]
pub struct MapList {
    maps: Vec<FinMap>,
    keys: HashSet<IsoKey>,
}

impl MapList {
    pub fn maps(&self) -> &[FinMap] {
        &self.maps
    }
}

/// A class of maps, decidable on any map.
#[derive(Debug, Clone)]
pub enum ClassSpec {
    Isos,
    Monos,
    Epis,
    All,
    /// The listed maps and everything isomorphic to one of them.
    Extensional(MapList),
    /// `S⊥` (right side) or `⊥S` (left side) for a generating list `S`.
    Complement {
        side: Side,
        generators: Vec<FinMap>,
    },
}

impl ClassSpec {
    pub fn extensional(maps: Vec<FinMap>) -> ClassSpec {
        let keys = maps.iter().map(iso_key).collect();
        ClassSpec::Extensional(MapList { maps, keys })
    }

    pub fn contains(&self, f: &FinMap) -> bool {
        match self {
            ClassSpec::Isos => f.is_iso(),
            ClassSpec::Monos => f.is_injective(),
            ClassSpec::Epis => f.is_surjective(),
            ClassSpec::All => true,
            ClassSpec::Extensional(list) => list.keys.contains(&iso_key(f)),
            ClassSpec::Complement { side: Side::Right, generators } => generators.iter().all(|g| orthogonal(g, f)),
            ClassSpec::Complement { side: Side::Left, generators } => generators.iter().all(|g| orthogonal(f, g)),
        }
    }

    /// Members among the given maps, in order.
    pub fn filter<'a>(&self, maps: &'a [FinMap]) -> Vec<&'a FinMap> {
        maps.iter().filter(|f| self.contains(f)).collect()
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Isos => f.write_str("isos"),
            ClassSpec::Monos => f.write_str("monos"),
            ClassSpec::Epis => f.write_str("epis"),
            ClassSpec::All => f.write_str("all"),
            ClassSpec::Extensional(list) => write!(f, "listed({})", list.maps.len()),
            ClassSpec::Complement { side: Side::Right, generators } => {
                write!(f, "right-complement({})", generators.len())
            }
            ClassSpec::Complement { side: Side::Left, generators } => {
                write!(f, "left-complement({})", generators.len())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSet;

    fn map(dom: usize, cod: usize, images: &[usize]) -> FinMap {
        FinMap::new(FinSet::canonical(dom), FinSet::canonical(cod), images.to_vec()).unwrap()
    }

    #[test]
    fn builtin_membership() {
        let f = map(3, 2, &[0, 1, 1]);
        assert!(ClassSpec::Epis.contains(&f));
        assert!(!ClassSpec::Monos.contains(&f));
        assert!(!ClassSpec::Isos.contains(&f));
        assert!(ClassSpec::All.contains(&f));
    }

    #[test]
    fn listed_classes_are_replete() {
        let c = ClassSpec::extensional(vec![map(3, 2, &[0, 1, 1])]);
        assert!(c.contains(&map(3, 2, &[0, 0, 1])));
        assert!(c.contains(&map(3, 2, &[1, 0, 1])));
        assert!(!c.contains(&map(3, 2, &[0, 0, 0])));
    }

    #[test]
    fn complement_membership() {
        let right = ClassSpec::Complement { side: Side::Right, generators: vec![map(2, 1, &[0, 0])] };
        assert!(right.contains(&map(1, 2, &[0])));
        assert!(!right.contains(&map(2, 1, &[0, 0])));
        let left = ClassSpec::Complement { side: Side::Left, generators: vec![map(1, 2, &[1])] };
        assert!(left.contains(&map(2, 1, &[0, 0])));
    }
}
