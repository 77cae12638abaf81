//! Operations on arrows: pushout products, pullback homs, joins, spheres,
//! diagonals, codiagonals and fibers.

use num_bigint::BigUint;

use crate::finset::{
    cogap_map, compose, gap_map, hom_post, hom_pre, is_arrow_morphism, product, product_map, pullback, pushout,
    CommutativeSquare, Exponential, FinMap, FinSet, FinSetError, Label, Pullback,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrowError {
    #[error("sliced maps live over different bases")]
    BaseMismatch,
    #[error("sphere dimension {0} is below -1")]
    OutOfRange(i64),
    #[error("{0} is not a point of the codomain")]
    UnknownPoint(Label),
    #[error("anchors do not make the map a morphism over the base")]
    NotOverBase,
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}

pub type Result<T, E = ArrowError> = std::result::Result<T, E>;

/// A set with a chosen element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedObject {
    carrier: FinSet,
    basepoint: FinMap,
}

impl PointedObject {
    pub fn new(carrier: FinSet, point: &Label) -> Result<PointedObject> {
        let i = carrier.position(point).ok_or_else(|| ArrowError::UnknownPoint(point.clone()))?;
        Ok(PointedObject { basepoint: FinMap::point(&carrier, i), carrier })
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn basepoint(&self) -> &FinMap {
        &self.basepoint
    }
}

/// The inclusion `A ∨ B -> A × B` as the pushout product of basepoints.
pub fn wedge_inclusion(a: &PointedObject, b: &PointedObject) -> FinMap {
    pushout_product(&a.basepoint, &b.basepoint)
}

/// A map `total: P -> Q` together with anchors making it a map over `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicedMap {
    total: FinMap,
    anchor_dom: FinMap,
    anchor_cod: FinMap,
}

impl SlicedMap {
    pub fn new(total: FinMap, anchor_dom: FinMap, anchor_cod: FinMap) -> Result<SlicedMap> {
        if anchor_dom.dom() != total.dom()
            || anchor_cod.dom() != total.cod()
            || anchor_dom.cod() != anchor_cod.cod()
            || compose(&anchor_cod, &total)? != anchor_dom
        {
            return Err(ArrowError::NotOverBase);
        }
        Ok(SlicedMap { total, anchor_dom, anchor_cod })
    }

    /// Regards `f: P -> Q` as a map over `Q`.
    pub fn over_codomain(f: &FinMap) -> SlicedMap {
        SlicedMap { total: f.clone(), anchor_dom: f.clone(), anchor_cod: FinMap::identity(f.cod()) }
    }

    /// Regards `f` as a map over the one-point set.
    pub fn over_terminal(f: &FinMap) -> SlicedMap {
        SlicedMap {
            total: f.clone(),
            anchor_dom: FinMap::to_terminal(f.dom()),
            anchor_cod: FinMap::to_terminal(f.cod()),
        }
    }

    pub fn total(&self) -> &FinMap {
        &self.total
    }

    pub fn anchor_dom(&self) -> &FinMap {
        &self.anchor_dom
    }

    pub fn anchor_cod(&self) -> &FinMap {
        &self.anchor_cod
    }

    pub fn base(&self) -> &FinSet {
        self.anchor_cod.cod()
    }

    /// The restriction of `total` over the base point `z`.
    pub fn fiber_over(&self, z: usize) -> FinMap {
        let dom: Vec<usize> = (0..self.total.dom().len()).filter(|&p| self.anchor_dom.apply(p) == z).collect();
        let cod: Vec<usize> = (0..self.total.cod().len()).filter(|&q| self.anchor_cod.apply(q) == z).collect();
        let images = dom.iter().map(|&p| cod.iter().position(|&q| q == self.total.apply(p)).unwrap()).collect();
        FinMap::new(FinSet::canonical(dom.len()), FinSet::canonical(cod.len()), images).expect("restriction is total")
    }
}

/// Isomorphism in the slice arrow category: same base, and arrow-isomorphic
/// restrictions over every base point.
pub fn sliced_isomorphic(a: &SlicedMap, b: &SlicedMap) -> bool {
    a.base() == b.base()
        && (0..a.base().len()).all(|z| {
            let (fa, fb) = (a.fiber_over(z), b.fiber_over(z));
            crate::finset::arrow_isomorphic(&fa, &fb)
        })
}

/// The square whose cogap is `u □ v`, for `u: A -> B`, `v: S -> T`.
pub fn pushout_product_square(u: &FinMap, v: &FinMap) -> CommutativeSquare {
    let (a, b) = (u.dom(), u.cod());
    let (s, t) = (v.dom(), v.cod());
    CommutativeSquare::new(
        product_map(&FinMap::identity(a), v),
        product_map(u, &FinMap::identity(s)),
        product_map(u, &FinMap::identity(t)),
        product_map(&FinMap::identity(b), v),
    )
    .expect("product square commutes")
}

/// `u □ v : (B × S) ⊔_{A×S} (A × T) -> B × T`.
pub fn pushout_product(u: &FinMap, v: &FinMap) -> FinMap {
    cogap_map(&pushout_product_square(u, v))
}

/// `(x, y) ↦ (f1 x, f2 y)` between two fiber products.
fn fibered_pair_map(src: &Pullback, dst: &Pullback, f1: &FinMap, f2: &FinMap) -> FinMap {
    let images = src
        .p1()
        .images()
        .iter()
        .zip(src.p2().images())
        .map(|(&x, &y)| dst.index_of(f1.apply(x), f2.apply(y)).expect("pair stays over the base"))
        .collect();
    FinMap::new(src.apex().clone(), dst.apex().clone(), images).expect("fibered pair map is total")
}

/// `u □_Z v`, the pushout product computed in the slice over `Z`.
pub fn pushout_product_over(base: &FinSet, u: &SlicedMap, v: &SlicedMap) -> Result<SlicedMap> {
    if u.base() != base || v.base() != base {
        return Err(ArrowError::BaseMismatch);
    }
    let as_ = pullback(&u.anchor_dom, &v.anchor_dom)?;
    let at = pullback(&u.anchor_dom, &v.anchor_cod)?;
    let bs = pullback(&u.anchor_cod, &v.anchor_dom)?;
    let bt = pullback(&u.anchor_cod, &v.anchor_cod)?;
    let id_a = FinMap::identity(u.total.dom());
    let id_b = FinMap::identity(u.total.cod());
    let id_s = FinMap::identity(v.total.dom());
    let id_t = FinMap::identity(v.total.cod());
    let sq = CommutativeSquare::new(
        fibered_pair_map(&as_, &at, &id_a, &v.total),
        fibered_pair_map(&as_, &bs, &u.total, &id_s),
        fibered_pair_map(&at, &bt, &u.total, &id_t),
        fibered_pair_map(&bs, &bt, &id_b, &v.total),
    )?;
    let total = cogap_map(&sq);
    let po = sq.corner_pushout();
    let anchor_bs = compose(&u.anchor_cod, bs.p1())?;
    let anchor_at = compose(&u.anchor_dom, at.p1())?;
    let anchor_dom = po.mediator(&anchor_bs, &anchor_at)?;
    let anchor_cod = compose(&u.anchor_cod, bt.p1())?;
    SlicedMap::new(total, anchor_dom, anchor_cod)
}

/// `u □_Z v` obtained instead as the base change of `u □ v` along the
/// diagonal `Z -> Z × Z`.
pub fn pushout_product_over_by_base_change(base: &FinSet, u: &SlicedMap, v: &SlicedMap) -> Result<SlicedMap> {
    if u.base() != base || v.base() != base {
        return Err(ArrowError::BaseMismatch);
    }
    let m = pushout_product(&u.total, &v.total);
    let anchor = product_map(&u.anchor_cod, &v.anchor_cod);
    let zz = product(base, base);
    let id = FinMap::identity(base);
    let diag = zz.mediator(&id, &id)?;
    let dom = pullback(&compose(&anchor, &m)?, &diag)?;
    let cod = pullback(&anchor, &diag)?;
    let total = fibered_pair_map(&dom, &cod, &m, &id);
    SlicedMap::new(total, dom.p2().clone(), cod.p2().clone())
}

/// The square whose gap is `⟨u, f⟩`, for `u: A -> B`, `f: X -> Y`.
pub fn pullback_hom_square(u: &FinMap, f: &FinMap) -> CommutativeSquare {
    let (a, b) = (u.dom(), u.cod());
    let (x, y) = (f.dom(), f.cod());
    CommutativeSquare::new(hom_post(b, f), hom_pre(u, x), hom_pre(u, y), hom_post(a, f)).expect("hom square commutes")
}

/// `⟨u, f⟩ : [B, X] -> [A, X] ×_{[A,Y]} [B, Y]`.
pub fn pullback_hom(u: &FinMap, f: &FinMap) -> FinMap {
    gap_map(&pullback_hom_square(u, f))
}

/// `A ⋆ B`, the pushout of `A <- A × B -> B`.
pub fn join(a: &FinSet, b: &FinSet) -> FinSet {
    let ab = product(a, b);
    pushout(ab.p1(), ab.p2()).expect("projections share a domain").apex().clone()
}

/// `S^n` for `n >= -1`, built by iterated joins from `S^0`.
pub fn sphere(n: i64) -> Result<FinSet> {
    match n {
        n if n < -1 => Err(ArrowError::OutOfRange(n)),
        -1 => Ok(FinSet::empty()),
        0 => Ok(FinSet::canonical(2)),
        n => Ok(join(&FinSet::canonical(2), &sphere(n - 1)?)),
    }
}

/// `s_n : S^n -> 1`.
pub fn sphere_map(n: i64) -> Result<FinMap> {
    Ok(FinMap::to_terminal(&sphere(n)?))
}

/// `Δf : A -> A ×_B A`.
pub fn diagonal(f: &FinMap) -> FinMap {
    let id = FinMap::identity(f.dom());
    gap_map(&CommutativeSquare::new(id.clone(), id, f.clone(), f.clone()).expect("identity square commutes"))
}

/// `∇u : B ⊔_A B -> B`.
pub fn codiagonal(u: &FinMap) -> FinMap {
    let id = FinMap::identity(u.cod());
    cogap_map(&CommutativeSquare::new(u.clone(), u.clone(), id.clone(), id).expect("identity square commutes"))
}

/// The fiber of `f` over the named point of its codomain.
pub fn fiber(f: &FinMap, point: &Label) -> Result<FinSet> {
    let i = f.cod().position(point).ok_or_else(|| ArrowError::UnknownPoint(point.clone()))?;
    Ok(fiber_at(f, i))
}

pub fn fiber_at(f: &FinMap, i: usize) -> FinSet {
    pullback(f, &FinMap::point(f.cod(), i)).expect("point lands in the codomain").apex().clone()
}

/// A morphism `(top, bottom) : w -> f` in the arrow category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowMorphism {
    pub top: FinMap,
    pub bottom: FinMap,
}

/// Number of arrow-category morphisms `w -> f`, by the fiberwise product
/// formula: each codomain point `c` of `w` picks a target `y` and then any
/// map from `w⁻¹(c)` into `f⁻¹(y)`.
pub fn arrow_hom_count(w: &FinMap, f: &FinMap) -> BigUint {
    let f_sizes = f.fiber_sizes();
    w.fiber_sizes()
        .into_iter()
        .map(|k| f_sizes.iter().map(|&s| BigUint::from(s).pow(k as u32)).sum::<BigUint>())
        .product()
}

/// Every arrow-category morphism `w -> f`, in lexicographic order of
/// `(bottom, top)` assignments. Only call this on small inputs.
pub fn arrow_morphisms(w: &FinMap, f: &FinMap) -> Vec<ArrowMorphism> {
    let f_fibers = f.fibers();
    let bottoms = Exponential::new(w.cod(), f.cod());
    let mut out = Vec::new();
    for bi in 0..bottoms.set().len() {
        let bottom = bottoms.function(bi);
        // each source must land in the fiber over its bottom image
        let choices: Vec<&Vec<usize>> = (0..w.dom().len()).map(|p| &f_fibers[bottom.apply(w.apply(p))]).collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let radices: Vec<usize> = choices.iter().map(|c| c.len()).collect();
        let mut counter = vec![0usize; choices.len()];
        loop {
            let images: Vec<usize> = counter.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            let top = FinMap::new(w.dom().clone(), f.dom().clone(), images).expect("choices lie in the domain");
            out.push(ArrowMorphism { top, bottom: bottom.clone() });
            if !advance(&mut counter, &radices) {
                break;
            }
        }
    }
    out
}

/// Mixed-radix increment, last digit fastest. Returns false on wrap-around.
pub(crate) fn advance(counter: &mut [usize], radices: &[usize]) -> bool {
    for pos in (0..counter.len()).rev() {
        counter[pos] += 1;
        if counter[pos] < radices[pos] {
            return true;
        }
        counter[pos] = 0;
    }
    false
}

/// Composite of arrow morphisms `second ∘ first`.
pub fn compose_morphisms(second: &ArrowMorphism, first: &ArrowMorphism) -> Result<ArrowMorphism> {
    Ok(ArrowMorphism { top: compose(&second.top, &first.top)?, bottom: compose(&second.bottom, &first.bottom)? })
}

/// Functoriality of `- □ v`: a morphism `(p, q) : u' -> u` induces
/// `u' □ v -> u □ v`.
pub fn pushout_product_functor(u_src: &FinMap, u_dst: &FinMap, m: &ArrowMorphism, v: &FinMap) -> Result<ArrowMorphism> {
    let (s, t) = (v.dom(), v.cod());
    let src_po = pushout_product_square(u_src, v).corner_pushout();
    let dst_po = pushout_product_square(u_dst, v).corner_pushout();
    let on_bs = compose(dst_po.i1(), &product_map(&m.bottom, &FinMap::identity(s)))?;
    let on_at = compose(dst_po.i2(), &product_map(&m.top, &FinMap::identity(t)))?;
    Ok(ArrowMorphism { top: src_po.mediator(&on_bs, &on_at)?, bottom: product_map(&m.bottom, &FinMap::identity(t)) })
}

/// Transposes a square `u □ v -> f` into a square `u -> ⟨v, f⟩`.
pub fn transpose(u: &FinMap, v: &FinMap, f: &FinMap, sq: &ArrowMorphism) -> Result<ArrowMorphism> {
    let (a, b) = (u.dom(), u.cod());
    let (s, t) = (v.dom(), v.cod());
    let po = pushout_product_square(u, v).corner_pushout();
    let bs = product(b, s);
    let at = product(a, t);
    let bt = product(b, t);
    let tx = Exponential::new(t, f.dom());
    let sx = Exponential::new(s, f.dom());
    let ty = Exponential::new(t, f.cod());
    let hom = pullback_hom_square(v, f).corner_pullback();

    let alpha = &sq.top;
    let beta = &sq.bottom;
    let top_images = (0..a.len())
        .map(|ai| {
            let values: Vec<usize> =
                (0..t.len()).map(|ti| alpha.apply(po.i2().apply(at.index_of(ai, ti).unwrap()))).collect();
            tx.encode(&values)
        })
        .collect();
    let bottom_images = (0..b.len())
        .map(|bi| {
            let left: Vec<usize> =
                (0..s.len()).map(|si| alpha.apply(po.i1().apply(bs.index_of(bi, si).unwrap()))).collect();
            let right: Vec<usize> = (0..t.len()).map(|ti| beta.apply(bt.index_of(bi, ti).unwrap())).collect();
            hom.index_of(sx.encode(&left), ty.encode(&right)).ok_or(ArrowError::NotOverBase)
        })
        .collect::<Result<Vec<_>>>()?;
    let top = FinMap::new(a.clone(), tx.set().clone(), top_images)?;
    let bottom = FinMap::new(b.clone(), hom.apex().clone(), bottom_images)?;
    let out = ArrowMorphism { top, bottom };
    debug_assert!(is_arrow_morphism(u, &pullback_hom(v, f), &out.top, &out.bottom));
    Ok(out)
}
