//! Case sources: exhaustive enumeration over a universe, or seeded sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrow::arrow_morphisms;
use crate::factorization::Universe;
use crate::finset::{FinMap, FinSet};

use super::Scope;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random map `m -> n` with canonical labels.
pub(crate) fn random_map(rng: &mut ChaCha8Rng, m: usize, n: usize) -> FinMap {
    assert!(m == 0 || n > 0);
    let images = (0..m).map(|_| rng.gen_range(0..n)).collect();
    FinMap::new(FinSet::canonical(m), FinSet::canonical(n), images).expect("targets in range")
}

/// A random codomain size that admits maps out of a set of size `m`.
fn cod_size(rng: &mut ChaCha8Rng, m: usize, max: usize) -> usize {
    let lo = usize::from(m > 0);
    rng.gen_range(lo..=max.max(lo))
}

/// A random map between sets of size at most `max`.
pub(crate) fn random_any_map(rng: &mut ChaCha8Rng, max: usize) -> FinMap {
    let m = rng.gen_range(0..=max);
    let n = cod_size(rng, m, max);
    random_map(rng, m, n)
}

fn universe(max_size: usize) -> Universe {
    Universe::with_cap(max_size, max_size).expect("cap equals size")
}

pub(crate) fn maps(scope: &Scope) -> Vec<FinMap> {
    match *scope {
        Scope::Exhaustive { max_size } => universe(max_size).maps().to_vec(),
        Scope::Sampled { max_size, seed, samples } => {
            let mut r = rng(seed);
            (0..samples).map(|_| random_any_map(&mut r, max_size)).collect()
        }
    }
}

/// Spans `X <- Z -> Y`, as pairs `(f, g)` with a common domain.
pub(crate) fn spans(scope: &Scope) -> Vec<(FinMap, FinMap)> {
    match *scope {
        Scope::Exhaustive { max_size } => {
            let u = universe(max_size);
            let mut out = Vec::new();
            for z in 0..=max_size {
                let from_z: Vec<&FinMap> = (0..=max_size).flat_map(|x| u.hom(z, x)).collect();
                for f in &from_z {
                    for g in &from_z {
                        out.push(((*f).clone(), (*g).clone()));
                    }
                }
            }
            out
        }
        Scope::Sampled { max_size, seed, samples } => {
            let mut r = rng(seed);
            (0..samples)
                .map(|_| {
                    let z = r.gen_range(0..=max_size);
                    let x = cod_size(&mut r, z, max_size);
                    let y = cod_size(&mut r, z, max_size);
                    (random_map(&mut r, z, x), random_map(&mut r, z, y))
                })
                .collect()
        }
    }
}

/// Cospans `Y -> W <- Z`, as pairs `(k, g)` with a common codomain.
pub(crate) fn cospans(scope: &Scope) -> Vec<(FinMap, FinMap)> {
    match *scope {
        Scope::Exhaustive { max_size } => {
            let u = universe(max_size);
            let mut out = Vec::new();
            for w in 0..=max_size {
                let into_w: Vec<&FinMap> = (0..=max_size).flat_map(|y| u.hom(y, w)).collect();
                for k in &into_w {
                    for g in &into_w {
                        out.push(((*k).clone(), (*g).clone()));
                    }
                }
            }
            out
        }
        Scope::Sampled { max_size, seed, samples } => {
            let mut r = rng(seed);
            (0..samples)
                .map(|_| {
                    let w = r.gen_range(0..=max_size);
                    let y = if w == 0 { 0 } else { r.gen_range(0..=max_size) };
                    let z = if w == 0 { 0 } else { r.gen_range(0..=max_size) };
                    (random_map(&mut r, y, w), random_map(&mut r, z, w))
                })
                .collect()
        }
    }
}

/// Arbitrary triples of maps.
pub(crate) fn triples(scope: &Scope) -> Vec<(FinMap, FinMap, FinMap)> {
    match *scope {
        Scope::Exhaustive { max_size } => {
            let u = universe(max_size);
            let maps = u.maps();
            let mut out = Vec::with_capacity(maps.len().pow(3));
            for a in maps {
                for b in maps {
                    for c in maps {
                        out.push((a.clone(), b.clone(), c.clone()));
                    }
                }
            }
            out
        }
        Scope::Sampled { max_size, seed, samples } => {
            let mut r = rng(seed);
            (0..samples)
                .map(|_| {
                    (
                        random_any_map(&mut r, max_size),
                        random_any_map(&mut r, max_size),
                        random_any_map(&mut r, max_size),
                    )
                })
                .collect()
        }
    }
}

/// Two horizontally composable commutative squares, sharing the middle
/// vertical map `v`.
///
/// ```text
/// A' -f'-> B' -g'-> C'
/// |u       |v       |w
/// A  -f -> B  -g -> C
/// ```
#[derive(Debug, Clone)]
pub(crate) struct SquarePair {
    pub u: FinMap,
    pub v: FinMap,
    pub w: FinMap,
    pub f_top: FinMap,
    pub f: FinMap,
    pub g_top: FinMap,
    pub g: FinMap,
}

/// Calls `visit` on every square pair of the scope, without collecting them.
pub(crate) fn visit_square_pairs(scope: &Scope, mut visit: impl FnMut(&SquarePair)) {
    match *scope {
        Scope::Exhaustive { max_size } => {
            let u = universe(max_size);
            let maps = u.maps();
            // squares between every ordered pair of verticals, computed once
            let squares: Vec<Vec<_>> =
                maps.iter().map(|a| maps.iter().map(|b| arrow_morphisms(a, b)).collect()).collect();
            for (iu, vu) in maps.iter().enumerate() {
                for (iv, vv) in maps.iter().enumerate() {
                    for (iw, vw) in maps.iter().enumerate() {
                        for left in &squares[iu][iv] {
                            for right in &squares[iv][iw] {
                                visit(&SquarePair {
                                    u: vu.clone(),
                                    v: vv.clone(),
                                    w: vw.clone(),
                                    f_top: left.top.clone(),
                                    f: left.bottom.clone(),
                                    g_top: right.top.clone(),
                                    g: right.bottom.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
        Scope::Sampled { max_size, seed, samples } => {
            let mut r = rng(seed);
            let (mut attempts, mut drawn) = (0, 0);
            while drawn < samples && attempts < samples * 100 {
                attempts += 1;
                let (u, v, w) = (
                    random_any_map(&mut r, max_size),
                    random_any_map(&mut r, max_size),
                    random_any_map(&mut r, max_size),
                );
                let left = arrow_morphisms(&u, &v);
                let right = arrow_morphisms(&v, &w);
                if left.is_empty() || right.is_empty() {
                    continue;
                }
                let l = &left[r.gen_range(0..left.len())];
                let rt = &right[r.gen_range(0..right.len())];
                drawn += 1;
                visit(&SquarePair {
                    f_top: l.top.clone(),
                    f: l.bottom.clone(),
                    g_top: rt.top.clone(),
                    g: rt.bottom.clone(),
                    u,
                    v,
                    w,
                });
            }
        }
    }
}
