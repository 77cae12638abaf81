//! Saturation of connectivity and truncation bounds.
//!
//! Every rule instance reads the current bounds of its premises and
//! proposes a bound for one target. The engine applies instances in a
//! fixed order until nothing improves. All rules are monotone, so the
//! result is the least fixpoint whatever the order.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::diagram::{Construction, MapId, SymDiagram};
use super::{Kind, Level, FLOOR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    #[serde(rename = "GIVEN")]
    Given,
    #[serde(rename = "R-BASE")]
    Base,
    #[serde(rename = "R-BM")]
    Bm,
    #[serde(rename = "R-CANCEL-L")]
    CancelLeft,
    #[serde(rename = "R-COBASE")]
    Cobase,
    #[serde(rename = "R-COMP")]
    Comp,
    #[serde(rename = "R-DIAG")]
    Diag,
    #[serde(rename = "R-DUAL-BM")]
    DualBm,
    #[serde(rename = "R-FACTOR")]
    Factor,
    #[serde(rename = "R-GBM-CONN")]
    GbmConn,
    #[serde(rename = "R-ISO")]
    Iso,
    #[serde(rename = "R-PBH")]
    Pbh,
    #[serde(rename = "R-PBH-SPHERE")]
    PbhSphere,
    #[serde(rename = "R-PP")]
    Pp,
    #[serde(rename = "R-PP-OVER-BASE")]
    PpOverBase,
    #[serde(rename = "R-PP-SPHERE")]
    PpSphere,
    #[serde(rename = "R-TRUNC-DIAG")]
    TruncDiag,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Given => "GIVEN",
            Rule::Base => "R-BASE",
            Rule::Bm => "R-BM",
            Rule::CancelLeft => "R-CANCEL-L",
            Rule::Cobase => "R-COBASE",
            Rule::Comp => "R-COMP",
            Rule::Diag => "R-DIAG",
            Rule::DualBm => "R-DUAL-BM",
            Rule::Factor => "R-FACTOR",
            Rule::GbmConn => "R-GBM-CONN",
            Rule::Iso => "R-ISO",
            Rule::Pbh => "R-PBH",
            Rule::PbhSphere => "R-PBH-SPHERE",
            Rule::Pp => "R-PP",
            Rule::PpOverBase => "R-PP-OVER-BASE",
            Rule::PpSphere => "R-PP-SPHERE",
            Rule::TruncDiag => "R-TRUNC-DIAG",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A bound on one map: a connectivity level or a truncation level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Conn(Level),
    Trunc(i64),
}

/// How an instance turns premise bounds into a proposed bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    /// A fixed bound.
    Seed(Value),
    /// The premise bound, unchanged.
    Copy,
    /// `min` of two connectivities.
    MinConn,
    /// `max` of two truncations.
    MaxTrunc,
    /// Connectivity of the premise plus a constant.
    ConnShift(i64),
    /// Sum of two connectivities plus a constant.
    ConnSum(i64),
    /// From `conn f >= -1` and `conn Δf`: `conn Δf + 1`.
    DiagUp,
    /// Truncation of the premise plus a constant.
    TruncShift(i64),
    /// `trunc f - conn u - 2`, premises `[trunc f, conn u]`.
    Pbh,
    /// Premises `[conn f, trunc f]`; invertible when they meet.
    IsoConn,
    IsoTrunc,
}

/// A rule applied to specific maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub rule: Rule,
    pub target: (MapId, Kind),
    pub premises: Vec<(MapId, Kind)>,
    pub formula: Formula,
    /// Extra context shown in explanations.
    pub note: Option<String>,
}

/// Current value of a premise: connectivity defaults to the floor,
/// truncation to unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    Conn(Level),
    Trunc(Option<i64>),
}

impl Formula {
    /// The proposed bound, before clamping. `None` when nothing follows.
    pub fn eval(self, inputs: &[Reading]) -> Option<Value> {
        let conn = |i: usize| match inputs[i] {
            Reading::Conn(l) => l,
            Reading::Trunc(_) => panic!("premise {i} is not a connectivity"),
        };
        let trunc = |i: usize| match inputs[i] {
            Reading::Trunc(t) => t,
            Reading::Conn(_) => panic!("premise {i} is not a truncation"),
        };
        match self {
            Formula::Seed(v) => Some(v),
            Formula::Copy => Some(match inputs[0] {
                Reading::Conn(l) => Value::Conn(l),
                Reading::Trunc(t) => Value::Trunc(t?),
            }),
            Formula::MinConn => Some(Value::Conn(conn(0).min(conn(1)))),
            Formula::MaxTrunc => Some(Value::Trunc(trunc(0)?.max(trunc(1)?))),
            Formula::ConnShift(k) => Some(Value::Conn(conn(0).shift(k))),
            Formula::ConnSum(k) => Some(Value::Conn(conn(0).plus(conn(1)).shift(k))),
            Formula::DiagUp => (conn(0) >= Level::Finite(-1)).then(|| Value::Conn(conn(1).shift(1))),
            Formula::TruncShift(k) => Some(Value::Trunc(trunc(0)? + k)),
            Formula::Pbh => {
                let p = trunc(0)?;
                Some(Value::Trunc(match conn(1) {
                    Level::Infinite => FLOOR,
                    Level::Finite(m) => p - m - 2,
                }))
            }
            Formula::IsoConn => {
                let t = trunc(1)?;
                (conn(0) >= Level::Finite(t)).then_some(Value::Conn(Level::Infinite))
            }
            Formula::IsoTrunc => {
                let met = conn(0) == Level::Infinite || trunc(1).is_some_and(|t| conn(0) >= Level::Finite(t));
                met.then_some(Value::Trunc(FLOOR))
            }
        }
    }
}

fn conn(m: MapId) -> (MapId, Kind) {
    (m, Kind::Conn)
}

fn trunc(m: MapId) -> (MapId, Kind) {
    (m, Kind::Trunc)
}

fn inst(rule: Rule, target: (MapId, Kind), premises: Vec<(MapId, Kind)>, formula: Formula) -> Instance {
    Instance { rule, target, premises, formula, note: None }
}

/// All rule instances of a diagram, before ordering.
fn instances(d: &SymDiagram) -> Vec<Instance> {
    let mut out = Vec::new();
    for a in d.annotations() {
        let v = match a.kind {
            Kind::Conn => Value::Conn(Level::Finite(a.n)),
            Kind::Trunc => Value::Trunc(a.n),
        };
        out.push(inst(Rule::Given, (a.map, a.kind), vec![], Formula::Seed(v)));
    }
    let sphere_note = |m: MapId| {
        let map = d.map(m);
        map.sphere.map(|s| {
            let via = if s.by_join { " (R-SPHERE-JOIN)" } else { "" };
            (s.dim, format!("{} = s_{}{via}", map.name, s.dim))
        })
    };
    let composite = |out: &mut Vec<Instance>, whole: MapId, second: MapId, first: MapId| {
        out.push(inst(Rule::Comp, conn(whole), vec![conn(first), conn(second)], Formula::MinConn));
        out.push(inst(Rule::Comp, trunc(whole), vec![trunc(first), trunc(second)], Formula::MaxTrunc));
        out.push(inst(Rule::CancelLeft, conn(second), vec![conn(whole), conn(first)], Formula::MinConn));
    };
    let diagonals: Vec<(MapId, MapId)> = d
        .constructions()
        .iter()
        .filter_map(|c| match *c {
            Construction::Diagonal { result, f } => Some((f, result)),
            _ => None,
        })
        .collect();
    let diagonal_of = |f: MapId| diagonals.iter().filter(move |(g, _)| *g == f).map(|(_, r)| *r);
    for c in d.constructions() {
        match *c {
            Construction::Pushout { f, g, inl, inr, .. } => {
                out.push(inst(Rule::Cobase, conn(inl), vec![conn(g)], Formula::Copy));
                out.push(inst(Rule::Cobase, conn(inr), vec![conn(f)], Formula::Copy));
            }
            Construction::Pullback { k, g, pr1, pr2, .. } => {
                out.push(inst(Rule::Base, conn(pr1), vec![conn(g)], Formula::Copy));
                out.push(inst(Rule::Base, trunc(pr1), vec![trunc(g)], Formula::Copy));
                out.push(inst(Rule::Base, conn(pr2), vec![conn(k)], Formula::Copy));
                out.push(inst(Rule::Base, trunc(pr2), vec![trunc(k)], Formula::Copy));
            }
            Construction::PushoutProduct { result, u, v } | Construction::PushoutProductOver { result, u, v, .. } => {
                out.push(inst(Rule::Pp, conn(result), vec![conn(u), conn(v)], Formula::ConnSum(2)));
                for (sphere, other) in [(v, u), (u, v)] {
                    if let Some((k, note)) = sphere_note(sphere) {
                        let mut i = inst(Rule::PpSphere, conn(result), vec![conn(other)], Formula::ConnShift(k + 1));
                        i.note = Some(note);
                        out.push(i);
                    }
                }
                if matches!(c, Construction::PushoutProductOver { .. }) {
                    for other in d.constructions() {
                        if let Construction::PushoutProduct { result: abs, u: a, v: b } = *other {
                            if (a, b) == (u, v) || (a, b) == (v, u) {
                                out.push(inst(Rule::PpOverBase, conn(result), vec![conn(abs)], Formula::Copy));
                            }
                        }
                    }
                }
            }
            Construction::PullbackHom { result, u, f } => {
                out.push(inst(Rule::Pbh, trunc(result), vec![trunc(f), conn(u)], Formula::Pbh));
                if let Some((k, note)) = sphere_note(u) {
                    let mut i = inst(Rule::PbhSphere, trunc(result), vec![trunc(f)], Formula::TruncShift(-k - 1));
                    i.note = Some(note);
                    out.push(i);
                }
            }
            Construction::Diagonal { result, f } => {
                out.push(inst(Rule::Diag, conn(result), vec![conn(f)], Formula::ConnShift(-1)));
                out.push(inst(Rule::Diag, conn(f), vec![conn(f), conn(result)], Formula::DiagUp));
                out.push(inst(Rule::TruncDiag, trunc(f), vec![trunc(result)], Formula::TruncShift(1)));
                out.push(inst(Rule::TruncDiag, trunc(result), vec![trunc(f)], Formula::TruncShift(-1)));
            }
            Construction::Gap { result, square } => {
                let Construction::Pushout { f, g, .. } = d.constructions()[square] else {
                    unreachable!("gap of a pushout")
                };
                out.push(inst(Rule::Bm, conn(result), vec![conn(f), conn(g)], Formula::ConnSum(0)));
                let apex = d.map(f).dom;
                for df in diagonal_of(f) {
                    for dg in diagonal_of(g) {
                        for other in d.constructions() {
                            let (r, a, b, relative) = match *other {
                                Construction::PushoutProduct { result, u, v } => (result, u, v, false),
                                Construction::PushoutProductOver { result, base, u, v } if base == apex => {
                                    (result, u, v, true)
                                }
                                _ => continue,
                            };
                            if (a, b) == (df, dg) || (a, b) == (dg, df) {
                                let mut i = inst(Rule::GbmConn, conn(result), vec![conn(r)], Formula::Copy);
                                if !relative {
                                    i.note =
                                        Some("absolute product, base changed along the diagonal of the apex".into());
                                }
                                out.push(i);
                            }
                        }
                    }
                }
            }
            Construction::Cogap { result, square } => {
                let Construction::Pullback { k, g, .. } = d.constructions()[square] else {
                    unreachable!("cogap of a pullback")
                };
                out.push(inst(Rule::DualBm, conn(result), vec![conn(g), conn(k)], Formula::ConnSum(2)));
            }
            Construction::Compose { result, second, first } => composite(&mut out, result, second, first),
            Construction::Factor { f, n, left, right, .. } => {
                out.push(inst(Rule::Factor, conn(left), vec![], Formula::Seed(Value::Conn(Level::Finite(n)))));
                out.push(inst(Rule::Factor, trunc(right), vec![], Formula::Seed(Value::Trunc(n))));
                composite(&mut out, f, right, left);
            }
            Construction::Join { .. } | Construction::Sphere { .. } | Construction::Codiagonal { .. } => {}
        }
    }
    for i in 0..d.maps().len() {
        let m = MapId(i);
        out.push(inst(Rule::Iso, conn(m), vec![conn(m), trunc(m)], Formula::IsoConn));
        out.push(inst(Rule::Iso, trunc(m), vec![conn(m), trunc(m)], Formula::IsoTrunc));
    }
    out
}

/// Instances in application order: rule id, then target map name.
pub fn ordered_instances(d: &SymDiagram) -> Vec<Instance> {
    let mut all = instances(d);
    // stable: ties keep construction order
    all.sort_by(|a, b| a.rule.id().cmp(b.rule.id()).then_with(|| d.name_of(a.target.0).cmp(d.name_of(b.target.0))));
    all
}

/// One step of a derivation: the bound set, the instance that set it and
/// the premise steps it read. Steps only refer to earlier steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub map: MapId,
    pub value: Value,
    pub rule: Rule,
    pub formula: Formula,
    pub premises: Vec<Premise>,
    pub note: Option<String>,
}

/// A premise as read: either an earlier step, or the default bound of a
/// map without one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Premise {
    Step(usize),
    Default(MapId, Kind),
}

/// Final bound of one map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub conn: Level,
    /// `Some(n)` for a proven `n`-truncation.
    pub trunc: Option<i64>,
    /// The connectivity reached the cap; the true bound may be higher.
    pub clamped: bool,
}

/// A map declared non-invertible that the rules prove invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contradiction {
    pub map: MapId,
    pub step: usize,
}

#[derive(Debug, Clone)]
pub struct Inference {
    pub cap: i64,
    /// Index of the current step for `(map, kind)`.
    current: Vec<[Option<usize>; 2]>,
    pub steps: Vec<Step>,
    pub passes: usize,
    pub firings: [usize; 2],
    pub contradictions: Vec<Contradiction>,
}

fn slot(kind: Kind) -> usize {
    match kind {
        Kind::Conn => 0,
        Kind::Trunc => 1,
    }
}

impl Inference {
    pub fn step_for(&self, map: MapId, kind: Kind) -> Option<usize> {
        self.current[map.0][slot(kind)]
    }

    pub fn bounds(&self, map: MapId) -> Bounds {
        let conn = self.read(map, Kind::Conn);
        let trunc = self.read(map, Kind::Trunc);
        let (Reading::Conn(conn), Reading::Trunc(trunc)) = (conn, trunc) else { unreachable!("kinds match") };
        Bounds { conn, trunc, clamped: conn == Level::Finite(self.cap) }
    }

    pub fn read(&self, map: MapId, kind: Kind) -> Reading {
        let value = self.step_for(map, kind).map(|s| self.steps[s].value);
        match kind {
            Kind::Conn => Reading::Conn(match value {
                Some(Value::Conn(l)) => l,
                _ => Level::Finite(FLOOR),
            }),
            Kind::Trunc => Reading::Trunc(match value {
                Some(Value::Trunc(t)) => Some(t),
                _ => None,
            }),
        }
    }

    /// Bounds of every map in diagram order.
    pub fn table(&self) -> Vec<Bounds> {
        (0..self.current.len()).map(|i| self.bounds(MapId(i))).collect()
    }

    fn premise_reading(&self, p: Premise) -> Reading {
        match p {
            Premise::Step(s) => match self.steps[s].value {
                Value::Conn(l) => Reading::Conn(l),
                Value::Trunc(t) => Reading::Trunc(Some(t)),
            },
            Premise::Default(_, Kind::Conn) => Reading::Conn(Level::Finite(FLOOR)),
            Premise::Default(_, Kind::Trunc) => Reading::Trunc(None),
        }
    }

    /// Whether re-evaluating every step on its recorded premises gives the
    /// recorded bound.
    pub fn replays(&self) -> bool {
        self.steps.iter().enumerate().all(|(i, s)| {
            let inputs: Vec<Reading> = s.premises.iter().map(|&p| self.premise_reading(p)).collect();
            let acyclic = s.premises.iter().all(|p| !matches!(p, Premise::Step(j) if *j >= i));
            acyclic && s.formula.eval(&inputs).and_then(|v| normalize(v, self.cap)) == Some(s.value)
        })
    }
}

/// Clamps a proposed bound into the lattice: connectivity stops at the
/// cap, truncation below the floor means invertible, and truncation above
/// the cap carries no information.
fn normalize(v: Value, cap: i64) -> Option<Value> {
    match v {
        Value::Conn(Level::Finite(n)) if n <= FLOOR => None,
        Value::Conn(Level::Finite(n)) => Some(Value::Conn(Level::Finite(n.min(cap)))),
        Value::Conn(Level::Infinite) => Some(v),
        Value::Trunc(t) if t > cap => None,
        Value::Trunc(t) => Some(Value::Trunc(t.max(FLOOR))),
    }
}

fn improves(new: Value, old: Reading) -> bool {
    match (new, old) {
        (Value::Conn(n), Reading::Conn(o)) => n > o,
        (Value::Trunc(n), Reading::Trunc(o)) => o.is_none_or(|o| n < o),
        _ => false,
    }
}

/// Runs the given instances to a fixpoint.
pub fn saturate(d: &SymDiagram, cap: i64, instances: &[Instance]) -> Inference {
    assert!(cap >= 0, "cap must be non-negative");
    let mut inf = Inference {
        cap,
        current: vec![[None, None]; d.maps().len()],
        steps: Vec::new(),
        passes: 0,
        firings: [0, 0],
        contradictions: Vec::new(),
    };
    loop {
        inf.passes += 1;
        let mut changed = false;
        for i in instances {
            let inputs: Vec<Reading> = i.premises.iter().map(|&(m, k)| inf.read(m, k)).collect();
            let Some(v) = i.formula.eval(&inputs).and_then(|v| normalize(v, cap)) else { continue };
            let (m, k) = i.target;
            if !improves(v, inf.read(m, k)) {
                continue;
            }
            let premises = i
                .premises
                .iter()
                .map(|&(pm, pk)| inf.step_for(pm, pk).map_or(Premise::Default(pm, pk), Premise::Step))
                .collect();
            inf.steps.push(Step { map: m, value: v, rule: i.rule, formula: i.formula, premises, note: i.note.clone() });
            inf.current[m.0][slot(k)] = Some(inf.steps.len() - 1);
            inf.firings[slot(k)] += 1;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    for &m in d.noniso() {
        let b = inf.bounds(m);
        if b.conn == Level::Infinite || b.trunc == Some(FLOOR) {
            let step = inf.step_for(m, Kind::Trunc).filter(|_| b.trunc == Some(FLOOR)).or(inf.step_for(m, Kind::Conn));
            inf.contradictions.push(Contradiction { map: m, step: step.expect("iso bound has a step") });
        }
    }
    inf
}

pub fn infer(d: &SymDiagram, cap: i64) -> Inference {
    saturate(d, cap, &ordered_instances(d))
}

/// Inference with the instances shuffled by a seeded generator.
pub fn infer_shuffled(d: &SymDiagram, cap: i64, seed: u64) -> Inference {
    let mut all = ordered_instances(d);
    all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    saturate(d, cap, &all)
}

/// Upper bound on improving firings per kind: each map's connectivity
/// moves along `-2 < -1 < ... < cap < ∞`, and its truncation along
/// `cap > ... > -2`.
pub fn firing_bound(d: &SymDiagram, cap: i64) -> usize {
    d.maps().len() * (cap as usize + 4)
}
