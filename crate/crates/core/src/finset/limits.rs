//! Pullbacks, pushouts, products, exponentials and gap maps.

use super::{compose, FinMap, FinSet, FinSetError, Label, Result, UnionFind};

/// The pullback `A ×_C B` of a cospan `f: A -> C <- B: g`.
///
/// Elements are the pairs `(a,b)` with `f(a) = g(b)`, ordered
/// lexicographically by domain order.
#[derive(Debug, Clone)]
pub struct Pullback {
    apex: FinSet,
    p1: FinMap,
    p2: FinMap,
    f: FinMap,
    g: FinMap,
    index: Vec<usize>,
}

pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Pullback> {
    if f.cod() != g.cod() {
        return Err(FinSetError::CodomainMismatch { left: f.cod().clone(), right: g.cod().clone() });
    }
    let (na, nb) = (f.dom().len(), g.dom().len());
    let mut index = vec![usize::MAX; na * nb];
    let mut labels = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in 0..na {
        for b in 0..nb {
            if f.apply(a) == g.apply(b) {
                index[a * nb + b] = labels.len();
                labels.push(Label::pair(f.dom().label(a).clone(), g.dom().label(b).clone()));
                left.push(a);
                right.push(b);
            }
        }
    }
    let apex = FinSet::from_distinct(labels);
    Ok(Pullback {
        p1: FinMap::from_images(apex.clone(), f.dom().clone(), left),
        p2: FinMap::from_images(apex.clone(), g.dom().clone(), right),
        apex,
        f: f.clone(),
        g: g.clone(),
        index,
    })
}

impl Pullback {
    pub fn apex(&self) -> &FinSet {
        &self.apex
    }

    pub fn p1(&self) -> &FinMap {
        &self.p1
    }

    pub fn p2(&self) -> &FinMap {
        &self.p2
    }

    pub fn legs(&self) -> (&FinMap, &FinMap) {
        (&self.p1, &self.p2)
    }

    pub fn cospan(&self) -> (&FinMap, &FinMap) {
        (&self.f, &self.g)
    }

    /// Position of the pair `(a,b)` in the apex, if `f(a) = g(b)`.
    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        let nb = self.g.dom().len();
        match self.index[a * nb + b] {
            usize::MAX => None,
            i => Some(i),
        }
    }

    /// The unique map `C -> A ×_C B` induced by a competing cone.
    pub fn mediator(&self, p: &FinMap, q: &FinMap) -> Result<FinMap> {
        if p.dom() != q.dom() || p.cod() != self.f.dom() || q.cod() != self.g.dom() {
            return Err(FinSetError::ConeMismatch);
        }
        let images = (0..p.dom().len())
            .map(|c| self.index_of(p.apply(c), q.apply(c)).ok_or(FinSetError::ConeMismatch))
            .collect::<Result<Vec<_>>>()?;
        Ok(FinMap::from_images(p.dom().clone(), self.apex.clone(), images))
    }
}

/// The pushout `X ⊔_Z Y` of a span `f: Z -> X, g: Z -> Y`.
///
/// Computed as a quotient of `X ⊔ Y` by union-find. Each class is named by its
/// least member (elements of `X` first), tagged `1:` or `2:` by side, and
/// classes are ordered by that representative.
#[derive(Debug, Clone)]
pub struct Pushout {
    apex: FinSet,
    i1: FinMap,
    i2: FinMap,
    f: FinMap,
    g: FinMap,
}

pub fn pushout(f: &FinMap, g: &FinMap) -> Result<Pushout> {
    if f.dom() != g.dom() {
        return Err(FinSetError::DomainMismatch { expected: f.dom().clone(), found: g.dom().clone() });
    }
    let (nx, ny) = (f.cod().len(), g.cod().len());
    let mut uf = UnionFind::new(nx + ny);
    for z in 0..f.dom().len() {
        uf.union(f.apply(z), nx + g.apply(z));
    }
    let mut class_of = vec![usize::MAX; nx + ny];
    let mut labels = Vec::new();
    for e in 0..nx + ny {
        let rep = uf.find(e);
        if rep == e {
            class_of[e] = labels.len();
            labels.push(if e < nx {
                Label::tag(1, f.cod().label(e).clone())
            } else {
                Label::tag(2, g.cod().label(e - nx).clone())
            });
        } else {
            // rep < e, so its class is already numbered
            class_of[e] = class_of[rep];
        }
    }
    let apex = FinSet::from_distinct(labels);
    Ok(Pushout {
        i1: FinMap::from_images(f.cod().clone(), apex.clone(), class_of[..nx].to_vec()),
        i2: FinMap::from_images(g.cod().clone(), apex.clone(), class_of[nx..].to_vec()),
        apex,
        f: f.clone(),
        g: g.clone(),
    })
}

impl Pushout {
    pub fn apex(&self) -> &FinSet {
        &self.apex
    }

    pub fn i1(&self) -> &FinMap {
        &self.i1
    }

    pub fn i2(&self) -> &FinMap {
        &self.i2
    }

    pub fn legs(&self) -> (&FinMap, &FinMap) {
        (&self.i1, &self.i2)
    }

    pub fn span(&self) -> (&FinMap, &FinMap) {
        (&self.f, &self.g)
    }

    /// The unique map `X ⊔_Z Y -> W` induced by a competing cocone.
    pub fn mediator(&self, h: &FinMap, k: &FinMap) -> Result<FinMap> {
        if h.dom() != self.f.cod() || k.dom() != self.g.cod() || h.cod() != k.cod() {
            return Err(FinSetError::ConeMismatch);
        }
        let hf = compose(h, &self.f)?;
        let kg = compose(k, &self.g)?;
        if hf != kg {
            return Err(FinSetError::ConeMismatch);
        }
        let mut images = vec![usize::MAX; self.apex.len()];
        for x in 0..h.dom().len() {
            images[self.i1.apply(x)] = h.apply(x);
        }
        for y in 0..k.dom().len() {
            images[self.i2.apply(y)] = k.apply(y);
        }
        Ok(FinMap::from_images(self.apex.clone(), h.cod().clone(), images))
    }
}

/// `A × B` as the pullback over the terminal set.
pub fn product(a: &FinSet, b: &FinSet) -> Pullback {
    pullback(&FinMap::to_terminal(a), &FinMap::to_terminal(b)).expect("common terminal codomain")
}

/// `A ⊔ B` as the pushout under the empty set.
pub fn coproduct(a: &FinSet, b: &FinSet) -> Pushout {
    pushout(&FinMap::from_initial(a), &FinMap::from_initial(b)).expect("common initial domain")
}

/// `f × g : A × S -> B × T`.
pub fn product_map(f: &FinMap, g: &FinMap) -> FinMap {
    let dom = product(f.dom(), g.dom());
    let cod = product(f.cod(), g.cod());
    let nt = g.cod().len();
    let images = dom.p1().images().iter().zip(dom.p2().images()).map(|(&a, &s)| f.apply(a) * nt + g.apply(s)).collect();
    FinMap::from_images(dom.apex().clone(), cod.apex().clone(), images)
}

/// `f ⊔ g : A ⊔ C -> B ⊔ D`.
pub fn coproduct_map(f: &FinMap, g: &FinMap) -> FinMap {
    let dom = coproduct(f.dom(), g.dom());
    let cod = coproduct(f.cod(), g.cod());
    let h = compose(cod.i1(), f).expect("composable");
    let k = compose(cod.i2(), g).expect("composable");
    dom.mediator(&h, &k).expect("cocone under the empty set")
}

/// Sets above this size are refused by [`Exponential::new`].
pub const MAX_EXPONENTIAL: usize = 1 << 22;

/// The set `[A, X]` of all functions `A -> X`.
///
/// Elements are value tuples in domain order; the first coordinate is most
/// significant in the enumeration order.
#[derive(Debug, Clone)]
pub struct Exponential {
    base: FinSet,
    target: FinSet,
    set: FinSet,
}

impl Exponential {
    pub fn new(base: &FinSet, target: &FinSet) -> Exponential {
        let n = base.len();
        let k = target.len();
        let size = u32::try_from(n)
            .ok()
            .and_then(|n| k.checked_pow(n))
            .filter(|&s| s <= MAX_EXPONENTIAL)
            .unwrap_or_else(|| panic!("exponential {k}^{n} is too large to enumerate"));
        let labels = (0..size)
            .map(|idx| {
                let values = decode(idx, n, k);
                Label::tuple(values.into_iter().map(|v| target.label(v).clone()).collect())
            })
            .collect();
        Exponential { base: base.clone(), target: target.clone(), set: FinSet::from_distinct(labels) }
    }

    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn encode(&self, values: &[usize]) -> usize {
        let k = self.target.len();
        values.iter().fold(0, |acc, &v| acc * k + v)
    }

    pub fn decode(&self, idx: usize) -> Vec<usize> {
        decode(idx, self.base.len(), self.target.len())
    }

    pub fn function(&self, idx: usize) -> FinMap {
        FinMap::from_images(self.base.clone(), self.target.clone(), self.decode(idx))
    }

    pub fn index_of(&self, f: &FinMap) -> usize {
        self.encode(f.images())
    }
}

fn decode(mut idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut values = vec![0; n];
    for slot in values.iter_mut().rev() {
        *slot = idx % k;
        idx /= k;
    }
    values
}

pub fn exponential(a: &FinSet, x: &FinSet) -> FinSet {
    Exponential::new(a, x).set
}

/// Precomposition `[u, X] : [B, X] -> [A, X]`.
pub fn hom_pre(u: &FinMap, x: &FinSet) -> FinMap {
    let from = Exponential::new(u.cod(), x);
    let to = Exponential::new(u.dom(), x);
    let images = (0..from.set.len())
        .map(|idx| {
            let phi = from.decode(idx);
            let values: Vec<usize> = u.images().iter().map(|&b| phi[b]).collect();
            to.encode(&values)
        })
        .collect();
    FinMap::from_images(from.set, to.set, images)
}

/// Postcomposition `[A, f] : [A, X] -> [A, Y]`.
pub fn hom_post(a: &FinSet, f: &FinMap) -> FinMap {
    let from = Exponential::new(a, f.dom());
    let to = Exponential::new(a, f.cod());
    let images = (0..from.set.len())
        .map(|idx| {
            let values: Vec<usize> = from.decode(idx).into_iter().map(|x| f.apply(x)).collect();
            to.encode(&values)
        })
        .collect();
    FinMap::from_images(from.set, to.set, images)
}

/// A commutative square
///
/// ```text
/// Z --top--> Y
/// |          |
/// left     right
/// v          v
/// X -bottom-> W
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeSquare {
    top: FinMap,
    left: FinMap,
    right: FinMap,
    bottom: FinMap,
}

impl CommutativeSquare {
    pub fn new(top: FinMap, left: FinMap, right: FinMap, bottom: FinMap) -> Result<CommutativeSquare> {
        let rt = compose(&right, &top)?;
        let bl = compose(&bottom, &left)?;
        if rt != bl {
            return Err(FinSetError::NotCommutative);
        }
        Ok(CommutativeSquare { top, left, right, bottom })
    }

    pub fn top(&self) -> &FinMap {
        &self.top
    }

    pub fn left(&self) -> &FinMap {
        &self.left
    }

    pub fn right(&self) -> &FinMap {
        &self.right
    }

    pub fn bottom(&self) -> &FinMap {
        &self.bottom
    }

    /// The pullback of the cospan `bottom, right`.
    pub fn corner_pullback(&self) -> Pullback {
        pullback(&self.bottom, &self.right).expect("commuting square has a common corner")
    }

    /// The pushout of the span `left, top`.
    pub fn corner_pushout(&self) -> Pushout {
        pushout(&self.left, &self.top).expect("commuting square has a common source")
    }

    pub fn is_cartesian(&self) -> bool {
        gap_map(self).is_iso()
    }

    pub fn is_cocartesian(&self) -> bool {
        cogap_map(self).is_iso()
    }
}

/// `(left, top) : Z -> X ×_W Y`.
pub fn gap_map(sq: &CommutativeSquare) -> FinMap {
    sq.corner_pullback().mediator(&sq.left, &sq.top).expect("square commutes")
}

/// `⌊bottom, right⌋ : X ⊔_Z Y -> W`.
pub fn cogap_map(sq: &CommutativeSquare) -> FinMap {
    sq.corner_pushout().mediator(&sq.bottom, &sq.right).expect("square commutes")
}

/// Base change of `m: P -> Q`, viewed over `B` through `anchor: Q -> B`, along
/// `along: C -> B`. Returns `P ×_B C -> Q ×_B C`.
pub fn base_change(m: &FinMap, anchor: &FinMap, along: &FinMap) -> Result<FinMap> {
    let dom = pullback(&compose(anchor, m)?, along)?;
    let cod = pullback(anchor, along)?;
    let images = dom
        .p1()
        .images()
        .iter()
        .zip(dom.p2().images())
        .map(|(&p, &c)| cod.index_of(m.apply(p), c).expect("anchored pair lies over the base"))
        .collect();
    Ok(FinMap::from_images(dom.apex().clone(), cod.apex().clone(), images))
}

/// `g*(f) : Y' ×_Y X -> Y'` for `f: X -> Y` and `g: Y' -> Y`.
pub fn pullback_along(f: &FinMap, g: &FinMap) -> Result<FinMap> {
    Ok(pullback(g, f)?.p1().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(dom: usize, cod: usize, images: &[usize]) -> FinMap {
        FinMap::new(FinSet::canonical(dom), FinSet::canonical(cod), images.to_vec()).unwrap()
    }

    #[test]
    fn product_with_singleton() {
        let f = map(2, 1, &[0, 0]);
        let g = map(1, 1, &[0]);
        assert_eq!(pullback(&f, &g).unwrap().apex().len(), 2);
    }

    #[test]
    fn pullback_of_identity_has_iso_legs() {
        let id = FinMap::identity(&FinSet::canonical(3));
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.apex().len(), 3);
        assert!(pb.p1().is_iso() && pb.p2().is_iso());
    }

    #[test]
    fn binary_product_by_counting() {
        let f = map(2, 1, &[0, 0]);
        let pb = pullback(&f, &f).unwrap();
        assert_eq!(pb.apex().len(), 4);
        assert_eq!(pb.apex().label(1).to_string(), "(0,1)");
    }

    #[test]
    fn pushout_under_empty_is_coproduct() {
        let c = coproduct(&FinSet::canonical(2), &FinSet::canonical(3));
        assert_eq!(c.apex().len(), 5);
        assert_eq!(c.apex().label(2).to_string(), "2:0");
    }

    #[test]
    fn wedge_of_pointed_sets() {
        let a = map(1, 3, &[1]);
        let b = map(1, 2, &[0]);
        let po = pushout(&a, &b).unwrap();
        assert_eq!(po.apex().len(), 3 + 2 - 1);
    }

    #[test]
    fn kernel_pair_pushout_is_a_point() {
        // 4 = 2 ×_1 2 with its two projections to 2
        let s = map(2, 1, &[0, 0]);
        let kp = pullback(&s, &s).unwrap();
        let po = pushout(kp.p1(), kp.p2()).unwrap();
        assert_eq!(po.apex().len(), 1);
    }

    #[test]
    fn coproduct_of_maps() {
        let f = map(2, 1, &[0, 0]);
        let g = map(1, 2, &[1]);
        let h = coproduct_map(&f, &g);
        assert_eq!(h.images(), &[0, 0, 2]);
    }

    #[test]
    fn exponential_sizes() {
        assert_eq!(exponential(&FinSet::canonical(2), &FinSet::canonical(3)).len(), 9);
        assert_eq!(exponential(&FinSet::empty(), &FinSet::canonical(3)).len(), 1);
        assert_eq!(exponential(&FinSet::empty(), &FinSet::empty()).len(), 1);
        assert_eq!(exponential(&FinSet::canonical(2), &FinSet::empty()).len(), 0);
        let e = Exponential::new(&FinSet::canonical(2), &FinSet::canonical(3));
        assert_eq!(e.set().label(5).to_string(), "[1,2]");
        assert_eq!(e.decode(5), vec![1, 2]);
        assert_eq!(e.encode(&[1, 2]), 5);
    }

    #[test]
    fn gap_of_pullback_square_is_iso() {
        let f = map(2, 1, &[0, 0]);
        let g = map(3, 1, &[0, 0, 0]);
        let pb = pullback(&f, &g).unwrap();
        let sq = CommutativeSquare::new(pb.p2().clone(), pb.p1().clone(), g, f).unwrap();
        assert!(gap_map(&sq).is_iso());
    }

    #[test]
    fn gap_map_along_diagonal() {
        let f = map(2, 1, &[0, 0]);
        let id = FinMap::identity(f.dom());
        let sq = CommutativeSquare::new(id.clone(), id, f.clone(), f).unwrap();
        let delta = gap_map(&sq);
        assert!(delta.is_injective());
        let image: Vec<String> = delta.images().iter().map(|&i| delta.cod().label(i).to_string()).collect();
        assert_eq!(image, vec!["(0,0)", "(1,1)"]);
    }

    #[test]
    fn pushout_square_of_two_injections_is_cartesian() {
        let a = map(1, 2, &[0]);
        let b = map(1, 2, &[0]);
        let po = pushout(&a, &b).unwrap();
        assert_eq!(po.apex().len(), 3);
        let sq = CommutativeSquare::new(b, a, po.i2().clone(), po.i1().clone()).unwrap();
        let gap = gap_map(&sq);
        assert_eq!(gap.cod().len(), 1);
        assert!(gap.is_iso());
    }

    #[test]
    fn cogap_cases() {
        let f = map(3, 1, &[0, 0, 0]);
        let g = map(3, 2, &[0, 0, 1]);
        let po = pushout(&f, &g).unwrap();
        let sq = CommutativeSquare::new(g.clone(), f.clone(), po.i2().clone(), po.i1().clone()).unwrap();
        assert!(cogap_map(&sq).is_iso());

        let t = FinMap::to_terminal(&FinSet::canonical(1));
        let t2 = FinMap::to_terminal(&FinSet::canonical(2));
        let sq = CommutativeSquare::new(g, f, t2, t).unwrap();
        assert_eq!(cogap_map(&sq).cod().len(), 1);

        let e = map(2, 1, &[0, 0]);
        let pb = pullback(&e, &e).unwrap();
        let sq = CommutativeSquare::new(pb.p2().clone(), pb.p1().clone(), e.clone(), e).unwrap();
        let cogap = cogap_map(&sq);
        assert_eq!(cogap.dom().len(), 1);
        assert!(cogap.is_iso());
    }

    #[test]
    fn mediators_reject_non_commuting_cones() {
        let f = map(2, 2, &[0, 1]);
        let g = map(1, 2, &[0]);
        let pb = pullback(&f, &g).unwrap();
        let p = map(1, 2, &[1]);
        let q = map(1, 1, &[0]);
        assert_eq!(pb.mediator(&p, &q), Err(FinSetError::ConeMismatch));
        assert!(matches!(pushout(&f, &map(1, 1, &[0])), Err(FinSetError::DomainMismatch { .. })));
        assert!(matches!(pullback(&f, &map(1, 3, &[0])), Err(FinSetError::CodomainMismatch { .. })));
    }

    #[test]
    fn base_change_along_identity_is_the_map() {
        let m = map(3, 2, &[0, 1, 1]);
        let anchor = FinMap::identity(m.cod());
        let bc = base_change(&m, &anchor, &anchor).unwrap();
        assert!(crate::finset::arrow_isomorphic(&bc, &m));
    }
}
