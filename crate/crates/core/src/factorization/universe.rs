use std::sync::OnceLock;

use crate::finset::{Exponential, FinMap, FinSet};

use super::{orthogonal, FactorizationError};

/// Largest universe [`enumerate_universe`] will build.
pub const DEFAULT_UNIVERSE_CAP: usize = 4;

/// All canonical sets of size `0..=max_size` and every map among them.
///
/// Maps are ordered by domain size, then codomain size, then assignment in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct Universe {
    max_size: usize,
    objects: Vec<FinSet>,
    maps: Vec<FinMap>,
    // start of the hom-set (m, n) in `maps`
    offsets: Vec<usize>,
    orthogonality: OnceLock<Vec<bool>>,
}

pub fn enumerate_universe(max_size: usize) -> Result<Universe, FactorizationError> {
    Universe::with_cap(max_size, DEFAULT_UNIVERSE_CAP)
}

impl Universe {
    pub fn with_cap(max_size: usize, cap: usize) -> Result<Universe, FactorizationError> {
        if max_size > cap {
            return Err(FactorizationError::SizeTooLarge { requested: max_size, cap });
        }
        let objects: Vec<FinSet> = (0..=max_size).map(FinSet::canonical).collect();
        let mut maps = Vec::new();
        let mut offsets = Vec::new();
        for a in &objects {
            for b in &objects {
                offsets.push(maps.len());
                let homs = Exponential::new(a, b);
                maps.extend((0..homs.set().len()).map(|i| homs.function(i)));
            }
        }
        offsets.push(maps.len());
        Ok(Universe { max_size, objects, maps, offsets, orthogonality: OnceLock::new() })
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn objects(&self) -> &[FinSet] {
        &self.objects
    }

    pub fn maps(&self) -> &[FinMap] {
        &self.maps
    }

    /// All maps `m -> n`.
    pub fn hom(&self, m: usize, n: usize) -> &[FinMap] {
        if m > self.max_size || n > self.max_size {
            return &[];
        }
        let k = m * (self.max_size + 1) + n;
        &self.maps[self.offsets[k]..self.offsets[k + 1]]
    }

    /// Whether the map's domain and codomain fit in the universe.
    pub fn fits(&self, f: &FinMap) -> bool {
        f.dom().len() <= self.max_size && f.cod().len() <= self.max_size
    }

    /// `maps[i] ⊥ maps[j]` at `i * len + j`, computed once.
    pub(crate) fn orthogonality_table(&self) -> &[bool] {
        self.orthogonality
            .get_or_init(|| self.maps.iter().flat_map(|u| self.maps.iter().map(move |f| orthogonal(u, f))).collect())
    }

    pub(crate) fn is_orthogonal_at(&self, i: usize, j: usize) -> bool {
        self.orthogonality_table()[i * self.maps.len() + j]
    }

    /// Position of a map with canonical labels.
    pub fn index_of(&self, f: &FinMap) -> Option<usize> {
        if !self.fits(f) || !f.dom().is_canonical() || !f.cod().is_canonical() {
            return None;
        }
        let (m, n) = (f.dom().len(), f.cod().len());
        let local = f.images().iter().fold(0, |acc, &v| acc * n + v);
        Some(self.offsets[m * (self.max_size + 1) + n] + local)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_universes() {
        let u0 = enumerate_universe(0).unwrap();
        assert_eq!((u0.objects().len(), u0.maps().len()), (1, 1));
        let u1 = enumerate_universe(1).unwrap();
        assert_eq!(u1.maps().len(), 3);
        let shapes: Vec<(usize, usize)> = u1.maps().iter().map(|f| (f.dom().len(), f.cod().len())).collect();
        assert_eq!(shapes, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn hom_set_sizes_are_powers() {
        for max in 0..=3 {
            let u = enumerate_universe(max).unwrap();
            let mut total = 0;
            for m in 0..=max {
                for n in 0..=max {
                    assert_eq!(u.hom(m, n).len(), n.pow(m as u32));
                    total += n.pow(m as u32);
                }
            }
            assert_eq!(u.maps().len(), total);
        }
        assert_eq!(enumerate_universe(2).unwrap().maps().len(), 11);
        assert_eq!(enumerate_universe(3).unwrap().maps().len(), 60);
        assert_eq!(enumerate_universe(4).unwrap().maps().len(), 499);
    }

    #[test]
    fn size_cap() {
        assert_eq!(
            enumerate_universe(5).unwrap_err(),
            FactorizationError::SizeTooLarge { requested: 5, cap: DEFAULT_UNIVERSE_CAP }
        );
    }

    #[test]
    fn index_lookup_and_order() {
        let u = enumerate_universe(3).unwrap();
        for (i, f) in u.maps().iter().enumerate() {
            assert_eq!(u.index_of(f), Some(i));
        }
        let h = u.hom(2, 3);
        assert_eq!(h[0].images(), &[0, 0]);
        assert_eq!(h[1].images(), &[0, 1]);
        assert_eq!(h[8].images(), &[2, 2]);
    }
}
