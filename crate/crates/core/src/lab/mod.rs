//! Model checks of the theorems that hold in finite sets, and exploratory
//! runs of those that need descent.
//!
//! Each check walks a case source given by a [`Scope`], evaluates every case
//! with a function from [`cases`], and summarizes the outcome in a
//! [`CheckReport`]. Counterexamples carry a [`Witness`] that [`replay`]
//! re-evaluates.

pub mod cases;
mod sample;

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::arrow::{diagonal, sphere_map};
use crate::factorization::{
    complement, enumerate_universe, is_local, is_orthogonal_internal, orthogonal, orthogonal_at_terminal,
    orthogonal_for_all_objects, validate_modality, ClassSpec, FactorizationError, ModalitySpec, OrthogonalityKind,
    Side, Universe,
};
use crate::finset::FinMap;
use crate::witness::Witness;

pub use cases::{replay, CaseVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabError {
    #[error("modality {0} has not been validated on a large enough universe")]
    ModalityNotValidated(String),
    #[error("modality {name} failed validation: {failures}")]
    ModalityInvalid { name: String, failures: String },
    #[error("cannot replay: {0}")]
    Replay(String),
    #[error(transparent)]
    Universe(#[from] FactorizationError),
}

/// Where cases come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scope {
    /// Every case built from sets of size at most `max_size`.
    Exhaustive { max_size: usize },
    /// `samples` cases drawn with a seeded generator.
    Sampled { max_size: usize, seed: u64, samples: usize },
}

impl Scope {
    pub fn max_size(&self) -> usize {
        match *self {
            Scope::Exhaustive { max_size } | Scope::Sampled { max_size, .. } => max_size,
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Scope::Exhaustive { .. })
    }

    /// The same kind of scope over smaller sets.
    pub fn shrink_to(&self, max: usize) -> Scope {
        match *self {
            Scope::Exhaustive { max_size } => Scope::Exhaustive { max_size: max_size.min(max) },
            Scope::Sampled { max_size, seed, samples } => Scope::Sampled { max_size: max_size.min(max), seed, samples },
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Exhaustive { max_size } => write!(f, "exhaustive, sets of size <= {max_size}"),
            Scope::Sampled { max_size, seed, samples } => {
                write!(f, "sampled, {samples} cases, sets of size <= {max_size}, seed {seed}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Counterexample,
    ExploratoryFinding,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Counterexample => "counterexample",
            Status::ExploratoryFinding => "exploratory-finding",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub scope: Scope,
    pub status: Status,
    /// Cases examined.
    pub cases: usize,
    /// Cases where the hypothesis held.
    pub instances: usize,
    pub elapsed: Duration,
    /// Smallest counterexample found; for exploratory runs, a case where
    /// the tested implication failed.
    pub witness: Option<Witness>,
    /// Illustrative cases that are not counterexamples.
    pub examples: Vec<Witness>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Counterexample
    }
}

/// Total size of the sets involved, used to pick the smallest witness.
fn witness_size(w: &Witness) -> usize {
    w.maps.iter().map(|m| m.map.dom().len() + m.map.cod().len()).sum()
}

/// Running tally of one check.
struct Run {
    name: String,
    scope: Scope,
    start: Instant,
    cases: usize,
    instances: usize,
    witness: Option<Witness>,
}

impl Run {
    fn new(name: impl Into<String>, scope: &Scope) -> Run {
        Run { name: name.into(), scope: *scope, start: Instant::now(), cases: 0, instances: 0, witness: None }
    }

    fn case(&mut self, v: CaseVerdict, dump: impl FnOnce() -> Witness) {
        self.cases += 1;
        if v.premise {
            self.instances += 1;
        }
        if v.is_counterexample() {
            self.offer(dump());
        }
    }

    fn offer(&mut self, w: Witness) {
        if self.witness.as_ref().is_none_or(|old| witness_size(&w) < witness_size(old)) {
            self.witness = Some(w);
        }
    }

    fn finish(self) -> CheckReport {
        let status = if self.witness.is_some() { Status::Counterexample } else { Status::Verified };
        CheckReport {
            name: self.name,
            scope: self.scope,
            status,
            cases: self.cases,
            instances: self.instances,
            elapsed: self.start.elapsed(),
            witness: self.witness,
            examples: Vec::new(),
            notes: Vec::new(),
        }
    }
}

fn span_witness(check: &str, f: &FinMap, g: &FinMap) -> Witness {
    Witness::new(check).with("f", f).with("g", g)
}

fn cospan_witness(check: &str, k: &FinMap, g: &FinMap) -> Witness {
    Witness::new(check).with("k", k).with("g", g)
}

fn over_spans(name: &str, scope: &Scope, eval: impl Fn(&FinMap, &FinMap) -> CaseVerdict) -> CheckReport {
    let mut run = Run::new(name, scope);
    for (f, g) in sample::spans(scope) {
        run.case(eval(&f, &g), || span_witness(name, &f, &g));
    }
    run.finish()
}

/// Name under which a class can be replayed, for the built-in classes.
fn class_id(c: &ClassSpec) -> String {
    c.to_string()
}

/// `hom(u □ v, f)` and `hom(u, ⟨v, f⟩)` have equal size, with an explicit
/// natural bijection on small cases.
pub fn check_adjunction(scope: &Scope) -> CheckReport {
    let mut run = Run::new("adjunction", scope);
    for (u, v, f) in sample::triples(scope) {
        run.case(cases::adjunction(&u, &v, &f), || {
            Witness::new("adjunction").with("u", &u).with("v", &v).with("f", &f)
        });
    }
    run.finish()
}

/// Pushouts along monos: the pushed leg is mono and the square cartesian.
/// Spans outside the hypothesis whose square is not cartesian are listed
/// as examples.
pub fn check_mono_pushout(scope: &Scope) -> CheckReport {
    let mut run = Run::new("mono-pushout", scope);
    let mut non_instances = Vec::new();
    let mut not_cartesian = 0;
    for (f, g) in sample::spans(scope) {
        let v = cases::mono_pushout(&f, &g);
        run.case(v, || span_witness("mono-pushout", &f, &g));
        if !v.premise && !cases::pushout_is_cartesian(&f, &g) {
            not_cartesian += 1;
            if non_instances.is_empty() {
                non_instances.push(span_witness("mono-pushout", &f, &g));
            }
        }
    }
    let mut report = run.finish();
    report.notes.push(format!(
        "{} of {} spans have a mono left leg; {not_cartesian} spans without one give a non-cartesian square",
        report.instances, report.cases
    ));
    report.examples = non_instances;
    report
}

fn require_validated(modality: &ModalitySpec, scope: &Scope) -> Result<(), LabError> {
    if modality.passed_on(scope.max_size().min(MODALITY_VALIDATION_SIZE)) {
        Ok(())
    } else {
        Err(LabError::ModalityNotValidated(modality.name()))
    }
}

/// Modalities are validated on universes up to this size.
pub const MODALITY_VALIDATION_SIZE: usize = 3;

/// Validates a modality on the universe matching the scope.
pub fn validated_modality(modality: ModalitySpec, scope: &Scope) -> Result<ModalitySpec, LabError> {
    let universe = enumerate_universe(scope.max_size().min(MODALITY_VALIDATION_SIZE))?;
    let m = validate_modality(modality, &universe);
    if let crate::factorization::Validation::Failed(report) = &m.validated {
        let failures = report.failures().map(|r| r.axiom.id()).collect::<Vec<_>>().join(", ");
        return Err(LabError::ModalityInvalid { name: m.name(), failures });
    }
    Ok(m)
}

/// For every cospan `k, g`: `k □ g ∈ L` implies `⌊k, g⌋ ∈ L`.
pub fn check_dual_bm(modality: &ModalitySpec, scope: &Scope) -> Result<CheckReport, LabError> {
    require_validated(modality, scope)?;
    let name = format!("dual-bm/{}", class_id(&modality.left));
    let mut run = Run::new(name.clone(), scope);
    for (k, g) in sample::cospans(scope) {
        run.case(cases::dual_bm(&modality.left, &k, &g), || cospan_witness(&name, &k, &g));
    }
    let mut report = run.finish();
    report.notes.push(format!(
        "modality {}; {} of {} cospans have k □ g in L",
        modality.name(),
        report.instances,
        report.cases
    ));
    Ok(report)
}

/// Two epis have an invertible cogap.
pub fn check_dual_bm_corollary(scope: &Scope) -> CheckReport {
    let mut run = Run::new("dual-bm-corollary", scope);
    for (k, g) in sample::cospans(scope) {
        run.case(cases::dual_bm_corollary(&k, &g), || cospan_witness("dual-bm-corollary", &k, &g));
    }
    run.finish()
}

/// The cogap of a pullback square and the base change of `k □ g` along the
/// diagonal of `W` agree as maps over `W`.
pub fn check_dual_bm_routes(scope: &Scope) -> CheckReport {
    let mut run = Run::new("dual-bm-routes", scope);
    for (k, g) in sample::cospans(scope) {
        run.case(cases::dual_bm_routes(&k, &g), || cospan_witness("dual-bm-routes", &k, &g));
    }
    run.finish()
}

fn pair_witness(check: &str, p: &sample::SquarePair) -> Witness {
    Witness::new(check)
        .with("u", &p.u)
        .with("v", &p.v)
        .with("w", &p.w)
        .with("f-top", &p.f_top)
        .with("f", &p.f)
        .with("g-top", &p.g_top)
        .with("g", &p.g)
}

/// Composition and cancellation of L-cartesian squares over all composable
/// pairs of squares. The cancellation clause is also run without its cover
/// hypothesis, and the outcome is recorded in the notes.
pub fn check_l_cartesian(modality: &ModalitySpec, scope: &Scope) -> Result<Vec<CheckReport>, LabError> {
    require_validated(modality, scope)?;
    let l = &modality.left;
    let id = class_id(l);
    let comp_name = format!("l-cartesian-composition/{id}");
    let canc_name = format!("l-cartesian-cancellation/{id}");
    let loose_name = format!("l-cartesian-no-cover/{id}");
    let mut comp = Run::new(comp_name.clone(), scope);
    let mut canc = Run::new(canc_name.clone(), scope);
    let mut loose = Run::new(loose_name.clone(), scope);
    sample::visit_square_pairs(scope, |p| {
        comp.case(cases::l_cartesian_composition(l, p), || pair_witness(&comp_name, p));
        canc.case(cases::l_cartesian_cancellation(l, p, true), || pair_witness(&canc_name, p));
        loose.case(cases::l_cartesian_cancellation(l, p, false), || pair_witness(&loose_name, p));
    });
    let loose = loose.finish();
    let mut canc = canc.finish();
    canc.notes.push(match &loose.witness {
        Some(_) => format!(
            "without the cover hypothesis cancellation fails: {} pairs satisfy the remaining hypotheses, smallest failure in examples",
            loose.instances
        ),
        None => format!("without the cover hypothesis no failure among {} pairs", loose.instances),
    });
    canc.examples.extend(loose.witness);
    Ok(vec![comp.finish(), canc])
}

/// The three models of the relative pushout product of diagonals are
/// related by the explicit isomorphisms.
pub fn check_squareford(scope: &Scope) -> CheckReport {
    over_spans("squareford", scope, cases::squareford)
}

pub fn check_top_face(scope: &Scope) -> CheckReport {
    over_spans("top-face", scope, cases::top_face)
}

pub fn check_fiber_join(scope: &Scope) -> CheckReport {
    let mut run = Run::new("fiber-join", scope);
    for (f, g) in fiber_join_pairs(scope) {
        run.case(cases::fiber_join(&f, &g), || span_witness("fiber-join", &f, &g));
    }
    run.finish()
}

/// An independent stream for the second coordinate of sampled pairs.
fn reseed(scope: &Scope) -> Scope {
    match *scope {
        Scope::Sampled { max_size, seed, samples } => Scope::Sampled { max_size, seed: seed.wrapping_add(1), samples },
        exhaustive => exhaustive,
    }
}

/// Fiber-join pairs: all pairs in exhaustive mode, independent draws otherwise.
fn fiber_join_pairs(scope: &Scope) -> Vec<(FinMap, FinMap)> {
    match scope {
        Scope::Exhaustive { .. } => {
            let maps = sample::maps(scope);
            maps.iter().flat_map(|f| maps.iter().map(move |g| (f.clone(), g.clone()))).collect()
        }
        Scope::Sampled { .. } => sample::maps(scope).into_iter().zip(sample::maps(&reseed(scope))).collect(),
    }
}

/// Tests whether an invertible `Δf □_Z Δg` forces the pushout square of
/// `f, g` to be cartesian. Finite sets lack descent, so the outcome is a
/// finding either way.
pub fn explore_little_bm(scope: &Scope) -> CheckReport {
    let mut run = Run::new("little-bm", scope);
    let mut mixed = 0;
    let mut mixed_example = None;
    let mut mono_example = None;
    let mut pointwise_agrees = true;
    for (f, g) in sample::spans(scope) {
        let v = cases::little_bm(&f, &g);
        run.case(v, || span_witness("little-bm", &f, &g));
        pointwise_agrees &= v.premise == cases::pointwise_one_side_trivial(&f, &g);
        if v.premise && v.conclusion {
            if f.is_injective() || g.is_injective() {
                if f.is_injective() != g.is_injective() && !f.is_iso() && !g.is_iso() {
                    mono_example.get_or_insert_with(|| span_witness("little-bm", &f, &g));
                }
            } else {
                mixed += 1;
                mixed_example.get_or_insert_with(|| span_witness("little-bm", &f, &g));
            }
        }
    }
    let mut report = run.finish();
    let failures = report.witness.is_some();
    report.status = Status::ExploratoryFinding;
    report.notes.push(format!("hypothesis holds for {} of {} spans", report.instances, report.cases));
    report.notes.push(if failures {
        "finding: the implication fails for some spans; smallest failure in witness".to_string()
    } else {
        "finding: the square is cartesian whenever the hypothesis holds".to_string()
    });
    report.notes.push(format!("{mixed} hypothesis spans have neither leg mono"));
    report.notes.push(format!(
        "the hypothesis {} with: at every point, the kernel-pair class under f or under g is a singleton",
        if pointwise_agrees { "coincides" } else { "does not coincide" }
    ));
    report.examples.extend(mono_example);
    report.examples.extend(mixed_example);
    report
}

/// Replacing `g` by its cover part leaves the gap map and diagonal unchanged.
pub fn check_cover_reduction(scope: &Scope) -> CheckReport {
    over_spans("cover-reduction", scope, cases::cover_reduction)
}

/// Coproduct closure and cover reflection of a class.
pub fn check_locality(class: &ClassSpec, scope: &Scope) -> Result<CheckReport, LabError> {
    let start = Instant::now();
    let universe = enumerate_universe(scope.max_size())?;
    let local = is_local(class, &universe);
    let id = class_id(class);
    let witness = local.failures().next().and_then(|r| r.witness.clone()).map(|mut w| {
        w.check = format!("{}/{id}", w.check);
        w
    });
    let notes = local.results.iter().map(|r| format!("{}: {} cases", r.axiom.id(), r.cases)).collect();
    Ok(CheckReport {
        name: format!("locality/{id}"),
        scope: Scope::Exhaustive { max_size: scope.max_size() },
        status: if witness.is_some() { Status::Counterexample } else { Status::Verified },
        cases: local.cases(),
        instances: local.cases(),
        elapsed: start.elapsed(),
        witness,
        examples: Vec::new(),
        notes,
    })
}

fn exhaustive_pairs(universe: &Universe) -> impl Iterator<Item = (&FinMap, &FinMap)> {
    universe.maps().iter().flat_map(move |u| universe.maps().iter().map(move |f| (u, f)))
}

fn pair_report(name: &str, universe: &Universe, eval: impl Fn(&FinMap, &FinMap) -> CaseVerdict) -> CheckReport {
    let scope = Scope::Exhaustive { max_size: universe.max_size() };
    let mut run = Run::new(name, &scope);
    for (u, f) in exhaustive_pairs(universe) {
        run.case(eval(u, f), || Witness::new(name).with("u", u).with("f", f));
    }
    run.finish()
}

/// `S⊥` compared with a target class, map by map.
fn complement_report(
    name: &str,
    generators: &[FinMap],
    side: Side,
    target: &ClassSpec,
    universe: &Universe,
) -> Result<CheckReport, LabError> {
    let start = Instant::now();
    let class = complement(generators, side, universe, OrthogonalityKind::Internal)?;
    let scope = Scope::Exhaustive { max_size: universe.max_size() };
    let mut run = Run::new(name, &scope);
    run.start = start;
    for f in universe.maps() {
        let v = CaseVerdict::unconditional(class.contains(f) == target.contains(f));
        run.case(v, || Witness::new(name).with("map", f));
    }
    Ok(run.finish())
}

/// Largest universe on which orthogonality is tested against every `Z × u`.
pub const ALL_OBJECTS_SIZE: usize = 2;

/// The orthogonality suite: filler counting against the pullback hom, the
/// `Z`-quantified and one-point forms, the sphere complements, `⊥monos`,
/// and monos via diagonals.
pub fn check_orthogonality(scope: &Scope) -> Result<Vec<CheckReport>, LabError> {
    let universe = enumerate_universe(scope.max_size())?;
    let small = enumerate_universe(scope.max_size().min(ALL_OBJECTS_SIZE))?;
    let s_minus = sphere_map(-1).expect("S^-1 exists");
    let s_zero = sphere_map(0).expect("S^0 exists");
    let monos: Vec<FinMap> = ClassSpec::Monos.filter(universe.maps()).into_iter().cloned().collect();
    let mut reports = vec![
        pair_report("orthogonality", &universe, |u, f| {
            CaseVerdict::unconditional(orthogonal(u, f) == is_orthogonal_internal(u, f))
        }),
        pair_report("orthogonality-terminal", &universe, |u, f| {
            CaseVerdict::unconditional(orthogonal_at_terminal(u, f) == is_orthogonal_internal(u, f))
        }),
        pair_report(&format!("orthogonality-all-objects/{}", small.max_size()), &small, |u, f| {
            CaseVerdict::unconditional(orthogonal_for_all_objects(u, f, &small) == is_orthogonal_internal(u, f))
        }),
    ];
    reports.push(complement_report("complement-isos", &[s_minus], Side::Right, &ClassSpec::Isos, &universe)?);
    reports.push(complement_report("complement-monos", &[s_zero], Side::Right, &ClassSpec::Monos, &universe)?);
    reports.push(complement_report(
        &format!("left-complement-monos/{}", universe.max_size()),
        &monos,
        Side::Left,
        &ClassSpec::Epis,
        &universe,
    )?);
    let scope = Scope::Exhaustive { max_size: universe.max_size() };
    let mut run = Run::new("mono-diagonal", &scope);
    for f in universe.maps() {
        let v = CaseVerdict::unconditional(f.is_injective() == diagonal(f).is_iso());
        run.case(v, || Witness::new("mono-diagonal").with("map", f));
    }
    reports.push(run.finish());
    Ok(reports)
}

/// Largest sets used when enumerating all pairs of composable squares;
/// at size 3 there are over 10^8 of them.
pub const SQUARE_PAIR_SIZE: usize = 2;

/// The named suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Adjunction,
    MonoPushout,
    DualBm,
    LCartesian,
    Squareford,
    TopFace,
    FiberJoin,
    LittleBm,
    Locality,
    Orthogonality,
    CoverReduction,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Adjunction,
        Suite::MonoPushout,
        Suite::DualBm,
        Suite::LCartesian,
        Suite::Squareford,
        Suite::TopFace,
        Suite::FiberJoin,
        Suite::LittleBm,
        Suite::Locality,
        Suite::Orthogonality,
        Suite::CoverReduction,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Adjunction => "adjunction",
            Suite::MonoPushout => "mono-pushout",
            Suite::DualBm => "dual-bm",
            Suite::LCartesian => "l-cartesian",
            Suite::Squareford => "squareford",
            Suite::TopFace => "top-face",
            Suite::FiberJoin => "fiber-join",
            Suite::LittleBm => "little-bm",
            Suite::Locality => "locality",
            Suite::Orthogonality => "orthogonality",
            Suite::CoverReduction => "cover-reduction",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.id() == name)
    }

    /// Number of cases drawn when the suite runs sampled.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::Adjunction => 500,
            Suite::FiberJoin => 100,
            _ => 200,
        }
    }

    /// Runs the suite. Modal suites run once per built-in modality.
    pub fn run(self, scope: &Scope) -> Result<Vec<CheckReport>, LabError> {
        let modalities = || -> Result<Vec<ModalitySpec>, LabError> {
            [crate::factorization::BuiltinSystem::IsoAll, crate::factorization::BuiltinSystem::EpiMono]
                .into_iter()
                .map(|s| validated_modality(ModalitySpec::builtin(s), scope))
                .collect()
        };
        Ok(match self {
            Suite::Adjunction => vec![check_adjunction(scope)],
            Suite::MonoPushout => vec![check_mono_pushout(scope)],
            Suite::DualBm => {
                let mut out = Vec::new();
                for m in modalities()? {
                    out.push(check_dual_bm(&m, scope)?);
                }
                out.push(check_dual_bm_corollary(scope));
                out.push(check_dual_bm_routes(scope));
                out
            }
            Suite::LCartesian => {
                let pairs_scope = if scope.is_exhaustive() { scope.shrink_to(SQUARE_PAIR_SIZE) } else { *scope };
                let mut out = Vec::new();
                for m in modalities()? {
                    out.extend(check_l_cartesian(&m, &pairs_scope)?);
                }
                if pairs_scope != *scope {
                    for r in &mut out {
                        r.notes
                            .push(format!("exhaustive square pairs are limited to sets of size <= {SQUARE_PAIR_SIZE}"));
                    }
                }
                out
            }
            Suite::Squareford => vec![check_squareford(scope)],
            Suite::TopFace => vec![check_top_face(scope)],
            Suite::FiberJoin => vec![check_fiber_join(scope)],
            Suite::LittleBm => vec![explore_little_bm(scope)],
            Suite::Locality => {
                vec![check_locality(&ClassSpec::Epis, scope)?, check_locality(&ClassSpec::Monos, scope)?]
            }
            Suite::Orthogonality => check_orthogonality(scope)?,
            Suite::CoverReduction => vec![check_cover_reduction(scope)],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::BuiltinSystem;

    const TINY: Scope = Scope::Exhaustive { max_size: 2 };

    #[test]
    fn unvalidated_modality_is_rejected() {
        let m = ModalitySpec::builtin(BuiltinSystem::EpiMono);
        assert!(matches!(check_dual_bm(&m, &TINY), Err(LabError::ModalityNotValidated(_))));
    }

    #[test]
    fn broken_modality_fails_validation() {
        let m = ModalitySpec::new(ClassSpec::Monos, ClassSpec::Epis);
        assert!(matches!(validated_modality(m, &TINY), Err(LabError::ModalityInvalid { .. })));
    }

    #[test]
    fn small_suites_pass() {
        for suite in Suite::ALL {
            for r in suite.run(&TINY).unwrap() {
                assert!(r.passed(), "{}: {:?}", r.name, r.witness);
                assert!(r.cases > 0, "{}", r.name);
            }
        }
    }

    #[test]
    fn cancellation_without_cover_fails_and_replays() {
        let m = validated_modality(ModalitySpec::builtin(BuiltinSystem::EpiMono), &TINY).unwrap();
        let reports = check_l_cartesian(&m, &TINY).unwrap();
        let canc = &reports[1];
        assert!(canc.passed());
        let w = canc.examples.first().expect("a failure without the cover hypothesis");
        assert!(w.check.starts_with("l-cartesian-no-cover"));
        assert!(replay(w).unwrap().is_counterexample());
        // the same square pair does not satisfy the full hypothesis
        let mut full = w.clone();
        full.check = "l-cartesian-cancellation/epis".into();
        assert!(!replay(&full).unwrap().is_counterexample());
    }

    #[test]
    fn sampled_scope_is_labelled() {
        let s = Scope::Sampled { max_size: 3, seed: 0, samples: 10 };
        let r = check_top_face(&s);
        assert_eq!(r.cases, 10);
        assert!(r.scope.to_string().starts_with("sampled"));
        assert_eq!(check_top_face(&s).cases, r.cases);
    }

    #[test]
    fn little_bm_is_exploratory() {
        let r = explore_little_bm(&TINY);
        assert_eq!(r.status, Status::ExploratoryFinding);
        assert!(!r.notes.is_empty());
        for w in r.examples.iter().chain(&r.witness) {
            replay(w).unwrap();
        }
    }
}
