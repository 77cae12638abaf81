//! Explicit finite sets and functions.
//!
//! A [`FinSet`] is an ordered list of distinct [`Label`]s; a [`FinMap`] stores
//! its assignment as indices into the codomain. Equality is extensional on
//! both. Limits, colimits, exponentials and the gap/cogap constructions live in
//! [`limits`].

mod label;
pub mod limits;
mod union_find;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use label::{Label, LabelError};
pub use limits::{
    base_change, cogap_map, coproduct, coproduct_map, exponential, gap_map, hom_post, hom_pre, product, product_map,
    pullback, pullback_along, pushout, CommutativeSquare, Exponential, Pullback, Pushout,
};
pub(crate) use union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinSetError {
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("assignment is not total: {0} has no image")]
    NonTotalAssignment(Label),
    #[error("{from} is sent to {target}, which is not in the codomain")]
    DanglingTarget { from: Label, target: Label },
    #[error("{0} is assigned but is not in the domain")]
    UnknownSource(Label),
    #[error("{0} is assigned twice")]
    ConflictingAssignment(Label),
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: FinSet, found: FinSet },
    #[error("codomain mismatch: {left} vs {right}")]
    CodomainMismatch { left: FinSet, right: FinSet },
    #[error("square does not commute")]
    NotCommutative,
    #[error("competing cone does not commute with the defining diagram")]
    ConeMismatch,
    #[error("{0} is not an element of the codomain")]
    UnknownPoint(Label),
    #[error(transparent)]
    Label(#[from] LabelError),
}

pub type Result<T, E = FinSetError> = std::result::Result<T, E>;

/// A finite set with a deterministic element order.
#[derive(Clone)]
pub struct FinSet {
    labels: Arc<[Label]>,
}

impl FinSet {
    pub fn new(labels: Vec<Label>) -> Result<FinSet> {
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l) {
                return Err(FinSetError::DuplicateLabel(l.clone()));
            }
        }
        Ok(FinSet { labels: labels.into() })
    }

    /// Labels are known distinct by construction.
    pub(crate) fn from_distinct(labels: Vec<Label>) -> FinSet {
        debug_assert_eq!(labels.iter().collect::<HashSet<_>>().len(), labels.len());
        FinSet { labels: labels.into() }
    }

    /// The canonical set `{0, .., n-1}`.
    pub fn canonical(n: usize) -> FinSet {
        FinSet { labels: (0..n).map(Label::index).collect() }
    }

    pub fn empty() -> FinSet {
        FinSet::canonical(0)
    }

    pub fn terminal() -> FinSet {
        FinSet::canonical(1)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_canonical(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, l)| *l == Label::index(i))
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &FinSet) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for FinSet {}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which of iso / mono / epi a map is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub iso: bool,
    pub mono: bool,
    pub epi: bool,
}

/// A total function between finite sets.
#[derive(Clone, PartialEq, Eq)]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    images: Arc<[usize]>,
}

impl FinMap {
    /// Builds a map from codomain indices, one per domain element.
    pub fn new(dom: FinSet, cod: FinSet, images: Vec<usize>) -> Result<FinMap> {
        if images.len() < dom.len() {
            return Err(FinSetError::NonTotalAssignment(dom.label(images.len()).clone()));
        }
        if images.len() > dom.len() {
            return Err(FinSetError::UnknownSource(Label::index(dom.len())));
        }
        if let Some((i, &t)) = images.iter().enumerate().find(|(_, &t)| t >= cod.len()) {
            return Err(FinSetError::DanglingTarget { from: dom.label(i).clone(), target: Label::index(t) });
        }
        Ok(FinMap { dom, cod, images: images.into() })
    }

    pub(crate) fn from_fn(dom: FinSet, cod: FinSet, f: impl Fn(usize) -> usize) -> FinMap {
        let images: Vec<usize> = (0..dom.len()).map(f).collect();
        debug_assert!(images.iter().all(|&t| t < cod.len()));
        FinMap { dom, cod, images: images.into() }
    }

    pub(crate) fn from_images(dom: FinSet, cod: FinSet, images: Vec<usize>) -> FinMap {
        debug_assert_eq!(images.len(), dom.len());
        debug_assert!(images.iter().all(|&t| t < cod.len()));
        FinMap { dom, cod, images: images.into() }
    }

    pub fn identity(set: &FinSet) -> FinMap {
        FinMap::from_fn(set.clone(), set.clone(), |i| i)
    }

    /// The unique map to the one-point set.
    pub fn to_terminal(set: &FinSet) -> FinMap {
        FinMap::from_fn(set.clone(), FinSet::terminal(), |_| 0)
    }

    /// The unique map out of the empty set.
    pub fn from_initial(set: &FinSet) -> FinMap {
        FinMap::from_fn(FinSet::empty(), set.clone(), |_| unreachable!())
    }

    /// The point `1 -> set` selecting element `i`.
    pub fn point(set: &FinSet, i: usize) -> FinMap {
        assert!(i < set.len());
        FinMap::from_fn(FinSet::terminal(), set.clone(), |_| i)
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn apply_label(&self, label: &Label) -> Option<&Label> {
        self.dom.position(label).map(|i| self.cod.label(self.images[i]))
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinMap) -> Result<FinMap> {
        compose(self, f)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        self.images.iter().all(|&t| !std::mem::replace(&mut hit[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &t in self.images.iter() {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_iso(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    pub fn classify(&self) -> Classification {
        let mono = self.is_injective();
        let epi = self.is_surjective();
        Classification { iso: mono && epi, mono, epi }
    }

    /// Preimage of each codomain element, in domain order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.cod.len()];
        for (i, &t) in self.images.iter().enumerate() {
            fibers[t].push(i);
        }
        fibers
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cod.len()];
        for &t in self.images.iter() {
            sizes[t] += 1;
        }
        sizes
    }

    /// Sorted fiber cardinalities: a complete invariant of the map up to
    /// isomorphism in the arrow category.
    pub fn fiber_profile(&self) -> Vec<usize> {
        let mut sizes = self.fiber_sizes();
        sizes.sort_unstable();
        sizes
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.cod.len()];
        for (i, &t) in self.images.iter().enumerate() {
            inv[t] = i;
        }
        Some(FinMap::from_images(self.cod.clone(), self.dom.clone(), inv))
    }

    /// The same assignment with canonical domain and codomain labels.
    pub fn canonicalized(&self) -> FinMap {
        FinMap::from_images(FinSet::canonical(self.dom.len()), FinSet::canonical(self.cod.len()), self.images.to_vec())
    }
}

impl fmt::Display for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.dom, self.cod)?;
        for (i, &t) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}↦{}", self.dom.label(i), self.cod.label(t))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Wire form: labels of domain and codomain, and the image label of each
/// domain element in order.
#[derive(Serialize, Deserialize)]
struct MapDump {
    dom: Vec<Label>,
    cod: Vec<Label>,
    images: Vec<Label>,
}

impl Serialize for FinMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MapDump {
            dom: self.dom.labels().to_vec(),
            cod: self.cod.labels().to_vec(),
            images: self.images.iter().map(|&t| self.cod.label(t).clone()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<FinMap, D::Error> {
        let dump = MapDump::deserialize(deserializer)?;
        if dump.images.len() != dump.dom.len() {
            return Err(serde::de::Error::custom("one image per domain element expected"));
        }
        let pairs: Vec<(Label, Label)> = dump.dom.iter().cloned().zip(dump.images).collect();
        make_map(dump.dom, dump.cod, pairs).map_err(serde::de::Error::custom)
    }
}

/// Validated construction from labels.
pub fn make_map<D, C, A>(dom_labels: D, cod_labels: C, assignment: A) -> Result<FinMap>
where
    D: IntoIterator<Item = Label>,
    C: IntoIterator<Item = Label>,
    A: IntoIterator<Item = (Label, Label)>,
{
    let dom = FinSet::new(dom_labels.into_iter().collect())?;
    let cod = FinSet::new(cod_labels.into_iter().collect())?;
    let cod_index: HashMap<&Label, usize> = cod.labels().iter().enumerate().map(|(i, l)| (l, i)).collect();
    let dom_index: HashMap<&Label, usize> = dom.labels().iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut images: Vec<Option<usize>> = vec![None; dom.len()];
    for (source, target) in assignment {
        let &i = dom_index.get(&source).ok_or_else(|| FinSetError::UnknownSource(source.clone()))?;
        let &t = cod_index
            .get(&target)
            .ok_or_else(|| FinSetError::DanglingTarget { from: source.clone(), target: target.clone() })?;
        if images[i].replace(t).is_some_and(|prev| prev != t) {
            return Err(FinSetError::ConflictingAssignment(source));
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| FinSetError::NonTotalAssignment(dom.label(i).clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(FinMap::from_images(dom.clone(), cod.clone(), images))
}

/// `g ∘ f`.
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap> {
    if f.cod != g.dom {
        return Err(FinSetError::DomainMismatch { expected: g.dom.clone(), found: f.cod.clone() });
    }
    Ok(FinMap::from_fn(f.dom.clone(), g.cod.clone(), |i| g.images[f.images[i]]))
}

/// An isomorphism `f ≅ g` in the arrow category: bijections on domains and
/// codomains with `g ∘ dom_iso = cod_iso ∘ f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowIso {
    pub dom_iso: FinMap,
    pub cod_iso: FinMap,
}

/// Finds an arrow-category isomorphism by matching fibers of equal size.
pub fn find_arrow_iso(f: &FinMap, g: &FinMap) -> Option<ArrowIso> {
    if f.dom.len() != g.dom.len() || f.cod.len() != g.cod.len() {
        return None;
    }
    if f.fiber_profile() != g.fiber_profile() {
        return None;
    }
    let f_fibers = f.fibers();
    let g_fibers = g.fibers();
    let mut g_by_size: HashMap<usize, Vec<usize>> = HashMap::new();
    for (c, fib) in g_fibers.iter().enumerate().rev() {
        g_by_size.entry(fib.len()).or_default().push(c);
    }
    let mut cod_images = vec![0; f.cod.len()];
    let mut dom_images = vec![0; f.dom.len()];
    for (c, fib) in f_fibers.iter().enumerate() {
        let target = g_by_size.get_mut(&fib.len()).and_then(Vec::pop)?;
        cod_images[c] = target;
        for (&x, &y) in fib.iter().zip(&g_fibers[target]) {
            dom_images[x] = y;
        }
    }
    Some(ArrowIso {
        dom_iso: FinMap::from_images(f.dom.clone(), g.dom.clone(), dom_images),
        cod_iso: FinMap::from_images(f.cod.clone(), g.cod.clone(), cod_images),
    })
}

pub fn arrow_isomorphic(f: &FinMap, g: &FinMap) -> bool {
    f.dom.len() == g.dom.len() && f.cod.len() == g.cod.len() && f.fiber_profile() == g.fiber_profile()
}

/// Checks that `(top, bottom)` is a morphism `f -> g` in the arrow category:
/// `g ∘ top = bottom ∘ f`.
pub fn is_arrow_morphism(f: &FinMap, g: &FinMap, top: &FinMap, bottom: &FinMap) -> bool {
    top.dom == f.dom
        && top.cod == g.dom
        && bottom.dom == f.cod
        && bottom.cod == g.cod
        && (0..f.dom.len()).all(|i| g.images[top.images[i]] == bottom.images[f.images[i]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[&str]) -> Vec<Label> {
        xs.iter().map(|&x| Label::from(x)).collect()
    }

    fn pairs(xs: &[(&str, &str)]) -> Vec<(Label, Label)> {
        xs.iter().map(|&(a, b)| (a.into(), b.into())).collect()
    }

    #[test]
    fn constant_map_to_terminal() {
        let f = make_map(labels(&["a", "b"]), labels(&["x"]), pairs(&[("a", "x"), ("b", "x")])).unwrap();
        assert_eq!(f.images(), &[0, 0]);
        assert!(f.classify().epi && !f.classify().mono);
    }

    #[test]
    fn unique_map_out_of_empty() {
        let f = make_map(labels(&[]), labels(&["x", "y"]), pairs(&[])).unwrap();
        assert_eq!(f.dom().len(), 0);
        assert_eq!(f.cod().len(), 2);
        assert!(f.classify().mono && !f.classify().epi);
    }

    #[test]
    fn dangling_target_rejected() {
        let err = make_map(labels(&["a"]), labels(&["x", "y"]), pairs(&[("a", "z")])).unwrap_err();
        assert!(matches!(err, FinSetError::DanglingTarget { .. }));
    }

    #[test]
    fn duplicate_and_non_total_rejected() {
        assert!(matches!(
            make_map(labels(&["a", "a"]), labels(&["x"]), pairs(&[])),
            Err(FinSetError::DuplicateLabel(_))
        ));
        assert!(matches!(
            make_map(labels(&["a", "b"]), labels(&["x"]), pairs(&[("a", "x")])),
            Err(FinSetError::NonTotalAssignment(_))
        ));
        assert!(matches!(
            make_map(labels(&["a"]), labels(&["x", "y"]), pairs(&[("a", "x"), ("a", "y")])),
            Err(FinSetError::ConflictingAssignment(_))
        ));
    }

    #[test]
    fn composite_with_terminal_is_constant() {
        let f = FinMap::new(FinSet::canonical(3), FinSet::canonical(2), vec![0, 0, 1]).unwrap();
        let g = FinMap::to_terminal(&FinSet::canonical(2));
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf, FinMap::to_terminal(&FinSet::canonical(3)));
        assert_eq!(compose(&FinMap::identity(f.cod()), &f).unwrap(), f);
        assert!(matches!(compose(&f, &g), Err(FinSetError::DomainMismatch { .. })));
    }

    #[test]
    fn arrow_iso_respects_fibers() {
        let f = FinMap::new(FinSet::canonical(3), FinSet::canonical(2), vec![0, 1, 1]).unwrap();
        let g = FinMap::new(FinSet::canonical(3), FinSet::canonical(2), vec![0, 0, 1]).unwrap();
        let iso = find_arrow_iso(&f, &g).unwrap();
        assert!(iso.dom_iso.is_iso() && iso.cod_iso.is_iso());
        assert!(is_arrow_morphism(&f, &g, &iso.dom_iso, &iso.cod_iso));
        let h = FinMap::new(FinSet::canonical(3), FinSet::canonical(2), vec![0, 0, 0]).unwrap();
        assert!(find_arrow_iso(&f, &h).is_none());
    }

    #[test]
    fn serde_round_trip() {
        let f =
            make_map(labels(&["a", "b"]), labels(&["(x,y)", "1:z"]), pairs(&[("a", "1:z"), ("b", "(x,y)")])).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"dom":["a","b"],"cod":["(x,y)","1:z"],"images":["1:z","(x,y)"]}"#);
        assert_eq!(serde_json::from_str::<FinMap>(&text).unwrap(), f);
    }
}
