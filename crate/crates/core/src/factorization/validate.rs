use serde::Serialize;

use crate::arrow::arrow_morphisms;
use crate::finset::{compose, coproduct_map, pullback, pushout, FinMap, FinSet};
use crate::witness::Witness;

use super::{filler_count, ClassSpec, ModalitySpec, Universe, Validation};

/// The individual conditions checked by the validators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    IsosInLeft,
    IsosInRight,
    Factorization,
    RightIsLeftPerp,
    LeftIsPerpRight,
    LeftComposition,
    RightComposition,
    LeftCancellation,
    RightCancellation,
    LeftCobaseChange,
    RightBaseChange,
    LeftBaseChange,
    CoproductClosure,
    CoverReflection,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        match self {
            Axiom::IsosInLeft => "isos-in-left",
            Axiom::IsosInRight => "isos-in-right",
            Axiom::Factorization => "factorization",
            Axiom::RightIsLeftPerp => "right-is-left-perp",
            Axiom::LeftIsPerpRight => "left-is-perp-right",
            Axiom::LeftComposition => "left-composition",
            Axiom::RightComposition => "right-composition",
            Axiom::LeftCancellation => "left-cancellation",
            Axiom::RightCancellation => "right-cancellation",
            Axiom::LeftCobaseChange => "left-cobase-change",
            Axiom::RightBaseChange => "right-base-change",
            Axiom::LeftBaseChange => "left-base-change",
            Axiom::CoproductClosure => "coproduct-closure",
            Axiom::CoverReflection => "cover-reflection",
        }
    }
}

/// Outcome of one axiom: number of cases examined and the first failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub cases: usize,
    pub witness: Option<Witness>,
}

impl AxiomResult {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SystemReport {
    pub results: Vec<AxiomResult>,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(AxiomResult::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| !r.holds())
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }

    pub fn cases(&self) -> usize {
        self.results.iter().map(|r| r.cases).sum()
    }
}

/// Case counter that keeps the first failure.
struct Tally {
    axiom: Axiom,
    cases: usize,
    witness: Option<Witness>,
}

impl Tally {
    fn new(axiom: Axiom) -> Tally {
        Tally { axiom, cases: 0, witness: None }
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn done(self) -> AxiomResult {
        AxiomResult { axiom: self.axiom, cases: self.cases, witness: self.witness }
    }
}

fn isos_in(class: &ClassSpec, axiom: Axiom, universe: &Universe) -> AxiomResult {
    let mut t = Tally::new(axiom);
    for f in universe.maps().iter().filter(|f| f.is_iso()) {
        t.case(class.contains(f), || Witness::new(axiom.id()).with("iso", f));
    }
    t.done()
}

fn factors(f: &FinMap, l: &ClassSpec, r: &ClassSpec, universe: &Universe) -> bool {
    (0..=universe.max_size()).any(|m| {
        universe
            .hom(f.dom().len(), m)
            .iter()
            .filter(|a| l.contains(a))
            .any(|a| universe.hom(m, f.cod().len()).iter().any(|b| r.contains(b) && compose(b, a).as_ref() == Ok(f)))
    })
}

/// `class` equals the maps orthogonal to all of `other`, on the right of
/// them when `right` holds and on the left otherwise.
fn perp_equals(class: &ClassSpec, other: &ClassSpec, right: bool, axiom: Axiom, universe: &Universe) -> AxiomResult {
    let maps = universe.maps();
    let others: Vec<usize> = (0..maps.len()).filter(|&i| other.contains(&maps[i])).collect();
    let mut t = Tally::new(axiom);
    for (j, f) in maps.iter().enumerate() {
        let offender = others.iter().copied().find(|&i| {
            if right {
                !universe.is_orthogonal_at(i, j)
            } else {
                !universe.is_orthogonal_at(j, i)
            }
        });
        let member = class.contains(f);
        t.case(member == offender.is_none(), || {
            let w = Witness::new(axiom.id()).with("map", f);
            match offender {
                Some(i) => w.with("not-orthogonal-to", &maps[i]),
                None => w,
            }
        });
    }
    t.done()
}

fn composable_pairs(universe: &Universe) -> impl Iterator<Item = (&FinMap, &FinMap)> {
    let n = universe.max_size();
    (0..=n).flat_map(move |a| {
        (0..=n).flat_map(move |b| {
            (0..=n).flat_map(move |c| {
                universe.hom(a, b).iter().flat_map(move |f| universe.hom(b, c).iter().map(move |g| (f, g)))
            })
        })
    })
}

fn composition(class: &ClassSpec, axiom: Axiom, universe: &Universe) -> AxiomResult {
    let mut t = Tally::new(axiom);
    for (f, g) in composable_pairs(universe) {
        if class.contains(f) && class.contains(g) {
            let gf = compose(g, f).expect("composable");
            t.case(class.contains(&gf), || Witness::new(axiom.id()).with("first", f).with("second", g));
        }
    }
    t.done()
}

/// Left: `g∘f ∈ C` and `f ∈ C` give `g ∈ C`. Right: `g∘f ∈ C` and `g ∈ C`
/// give `f ∈ C`.
fn cancellation(class: &ClassSpec, left: bool, axiom: Axiom, universe: &Universe) -> AxiomResult {
    let mut t = Tally::new(axiom);
    for (f, g) in composable_pairs(universe) {
        let gf = compose(g, f).expect("composable");
        let (known, unknown) = if left { (f, g) } else { (g, f) };
        if class.contains(&gf) && class.contains(known) {
            t.case(class.contains(unknown), || Witness::new(axiom.id()).with("first", f).with("second", g));
        }
    }
    t.done()
}

fn cobase_change(class: &ClassSpec, axiom: Axiom, universe: &Universe) -> AxiomResult {
    let mut t = Tally::new(axiom);
    let n = universe.max_size();
    for l in universe.maps().iter().filter(|f| class.contains(f)) {
        for c in 0..=n {
            for g in universe.hom(l.dom().len(), c) {
                let po = pushout(l, g).expect("common domain");
                if po.apex().len() > n {
                    continue;
                }
                t.case(class.contains(po.i2()), || Witness::new(axiom.id()).with("map", l).with("along", g));
            }
        }
    }
    t.done()
}

fn base_change(class: &ClassSpec, axiom: Axiom, universe: &Universe) -> AxiomResult {
    let mut t = Tally::new(axiom);
    let n = universe.max_size();
    for r in universe.maps().iter().filter(|f| class.contains(f)) {
        for c in 0..=n {
            for g in universe.hom(c, r.cod().len()) {
                let pb = pullback(g, r).expect("common codomain");
                if pb.apex().len() > n {
                    continue;
                }
                t.case(class.contains(pb.p1()), || Witness::new(axiom.id()).with("map", r).with("along", g));
            }
        }
    }
    t.done()
}

/// Checks `(l, r)` as a factorization system within the universe:
/// isos in both classes, existence of factorizations through middles of
/// bounded size, `L⊥ = R`, `⊥R = L`, closure under composition, the two
/// cancellation properties, and stability of `L` under cobase change and
/// of `R` under base change. Constructions leaving the universe are skipped.
pub fn validate_factorization_system(l: &ClassSpec, r: &ClassSpec, universe: &Universe) -> SystemReport {
    let mut fact = Tally::new(Axiom::Factorization);
    for f in universe.maps() {
        fact.case(factors(f, l, r, universe), || Witness::new(Axiom::Factorization.id()).with("map", f));
    }
    SystemReport {
        results: vec![
            isos_in(l, Axiom::IsosInLeft, universe),
            isos_in(r, Axiom::IsosInRight, universe),
            fact.done(),
            perp_equals(r, l, true, Axiom::RightIsLeftPerp, universe),
            perp_equals(l, r, false, Axiom::LeftIsPerpRight, universe),
            composition(l, Axiom::LeftComposition, universe),
            composition(r, Axiom::RightComposition, universe),
            cancellation(l, true, Axiom::LeftCancellation, universe),
            cancellation(r, false, Axiom::RightCancellation, universe),
            cobase_change(l, Axiom::LeftCobaseChange, universe),
            base_change(r, Axiom::RightBaseChange, universe),
        ],
    }
}

/// The factorization-system checks plus stability of `L` under base change.
pub fn validate_modality_report(l: &ClassSpec, r: &ClassSpec, universe: &Universe) -> SystemReport {
    let mut report = validate_factorization_system(l, r, universe);
    report.results.push(base_change(l, Axiom::LeftBaseChange, universe));
    report
}

pub fn validate_modality(mut m: ModalitySpec, universe: &Universe) -> ModalitySpec {
    let report = validate_modality_report(&m.left, &m.right, universe);
    m.validated = if report.passed() {
        Validation::Passed { max_size: universe.max_size() }
    } else {
        Validation::Failed(Box::new(report))
    };
    m
}

/// Locality within the universe: closure under binary coproducts, and
/// reflection along covers (if the base change of `f` along an epi lies in
/// the class, so does `f`).
pub fn is_local(class: &ClassSpec, universe: &Universe) -> SystemReport {
    let n = universe.max_size();
    let members = class.filter(universe.maps());
    let mut coprod = Tally::new(Axiom::CoproductClosure);
    for f in &members {
        for g in &members {
            if f.dom().len() + g.dom().len() > n || f.cod().len() + g.cod().len() > n {
                continue;
            }
            let h = coproduct_map(f, g);
            coprod.case(class.contains(&h), || {
                Witness::new(Axiom::CoproductClosure.id()).with("first", f).with("second", g)
            });
        }
    }
    let mut reflect = Tally::new(Axiom::CoverReflection);
    for f in universe.maps() {
        for c in 0..=n {
            for e in universe.hom(c, f.cod().len()).iter().filter(|e| e.is_surjective()) {
                let pb = pullback(e, f).expect("common codomain");
                if pb.apex().len() > n || !class.contains(pb.p1()) {
                    continue;
                }
                reflect.case(class.contains(f), || {
                    Witness::new(Axiom::CoverReflection.id()).with("map", f).with("cover", e)
                });
            }
        }
    }
    SystemReport { results: vec![coprod.done(), reflect.done()] }
}

/// A map over `T`, with its structure maps into `T`.
struct SliceMap {
    total: FinMap,
    anchor_dom: FinMap,
    anchor_cod: FinMap,
}

fn slice_maps(t: &FinSet, universe: &Universe) -> Vec<SliceMap> {
    let n = universe.max_size();
    let objects: Vec<&FinMap> = (0..=n).flat_map(|a| universe.hom(a, t.len()).iter()).collect();
    let mut out = Vec::new();
    for x in &objects {
        for y in &objects {
            for h in universe.hom(x.dom().len(), y.dom().len()) {
                if compose(y, h).as_ref() == Ok(*x) {
                    out.push(SliceMap { total: h.clone(), anchor_dom: (*x).clone(), anchor_cod: (*y).clone() });
                }
            }
        }
    }
    out
}

/// Orthogonality in the slice: only squares whose bottom lies over `T`.
fn slice_orthogonal(u: &SliceMap, f: &SliceMap) -> bool {
    arrow_morphisms(&u.total, &f.total)
        .iter()
        .filter(|sq| compose(&f.anchor_cod, &sq.bottom).as_ref() == Ok(&u.anchor_cod))
        .all(|sq| filler_count(&u.total, &f.total, sq) == 1)
}

/// Checks that `(L, R)` restricted to maps over `t` is again a
/// factorization system: factorizations exist over `t`, and the classes are
/// each other's complements for slice orthogonality.
pub fn validate_sliced(l: &ClassSpec, r: &ClassSpec, t: &FinSet, universe: &Universe) -> SystemReport {
    let maps = slice_maps(t, universe);
    let n = universe.max_size();
    let witness = |axiom: Axiom, m: &SliceMap| {
        Witness::new(axiom.id())
            .with("map", &m.total)
            .with("anchor-dom", &m.anchor_dom)
            .with("anchor-cod", &m.anchor_cod)
    };
    let mut fact = Tally::new(Axiom::Factorization);
    for m in &maps {
        let ok = (0..=n).any(|k| {
            universe.hom(m.total.dom().len(), k).iter().filter(|a| l.contains(a)).any(|a| {
                universe.hom(k, m.total.cod().len()).iter().any(|b| {
                    // the middle lies over T through the right part
                    r.contains(b) && compose(b, a).as_ref() == Ok(&m.total)
                })
            })
        });
        fact.case(ok, || witness(Axiom::Factorization, m));
    }
    let mut right = Tally::new(Axiom::RightIsLeftPerp);
    let mut left = Tally::new(Axiom::LeftIsPerpRight);
    for f in &maps {
        let perp = maps.iter().filter(|u| l.contains(&u.total)).all(|u| slice_orthogonal(u, f));
        right.case(perp == r.contains(&f.total), || witness(Axiom::RightIsLeftPerp, f));
        let perp = maps.iter().filter(|g| r.contains(&g.total)).all(|g| slice_orthogonal(f, g));
        left.case(perp == l.contains(&f.total), || witness(Axiom::LeftIsPerpRight, f));
    }
    SystemReport { results: vec![fact.done(), right.done(), left.done()] }
}
