//! Symbolic diagrams: named objects and maps, the constructions relating
//! them, and per-map bound annotations.

use std::collections::HashMap;
use std::fmt;

use super::{Kind, FLOOR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MapId(pub usize);

/// Name of the terminal object, always present.
pub const TERMINAL: &str = "pt";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ctor {
    Pushout,
    Pullback,
    Pp,
    PpOver,
    Pbhom,
    Join,
    Sphere,
    Diag,
    Codiag,
    Gap,
    Cogap,
    Compose,
    Factor,
}

impl Ctor {
    pub const ALL: [Ctor; 13] = [
        Ctor::Pushout,
        Ctor::Pullback,
        Ctor::Pp,
        Ctor::PpOver,
        Ctor::Pbhom,
        Ctor::Join,
        Ctor::Sphere,
        Ctor::Diag,
        Ctor::Codiag,
        Ctor::Gap,
        Ctor::Cogap,
        Ctor::Compose,
        Ctor::Factor,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Ctor::Pushout => "pushout",
            Ctor::Pullback => "pullback",
            Ctor::Pp => "pp",
            Ctor::PpOver => "pp_over",
            Ctor::Pbhom => "pbhom",
            Ctor::Join => "join",
            Ctor::Sphere => "sphere",
            Ctor::Diag => "diag",
            Ctor::Codiag => "codiag",
            Ctor::Gap => "gap",
            Ctor::Cogap => "cogap",
            Ctor::Compose => "compose",
            Ctor::Factor => "factor",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Ctor> {
        Ctor::ALL.into_iter().find(|c| c.keyword() == word)
    }

    /// Shape of the argument list.
    fn signature(self) -> &'static [ArgKind] {
        use ArgKind::*;
        match self {
            Ctor::Pushout | Ctor::Pullback | Ctor::Pp | Ctor::Pbhom | Ctor::Compose => &[Map, Map],
            Ctor::PpOver => &[Object, Map, Map],
            Ctor::Join => &[Object, Object],
            Ctor::Sphere => &[Int],
            Ctor::Diag | Ctor::Codiag => &[Map],
            Ctor::Gap => &[Pushout],
            Ctor::Cogap => &[Pullback],
            Ctor::Factor => &[Map, Int],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ArgKind {
    Map,
    Object,
    Pushout,
    Pullback,
    Int,
}

impl fmt::Display for ArgKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArgKind::Map => "a map",
            ArgKind::Object => "an object",
            ArgKind::Pushout => "a pushout",
            ArgKind::Pullback => "a pullback",
            ArgKind::Int => "an integer",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Name(String),
    Int(i64),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) => f.write_str(n),
            Arg::Int(i) => write!(f, "{i}"),
        }
    }
}

/// One line of a diagram description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Objects(Vec<String>),
    Map {
        name: String,
        dom: String,
        cod: String,
    },
    Define {
        name: String,
        ctor: Ctor,
        args: Vec<Arg>,
    },
    Conn {
        map: String,
        n: i64,
    },
    Trunc {
        map: String,
        n: i64,
    },
    /// Declares that a map is known not to be invertible.
    NonIso {
        map: String,
    },
}

impl Statement {
    /// Names this statement introduces directly.
    fn defines(&self) -> Vec<&str> {
        match self {
            Statement::Objects(names) => names.iter().map(String::as_str).collect(),
            Statement::Map { name, .. } | Statement::Define { name, .. } => vec![name.as_str()],
            _ => Vec::new(),
        }
    }

    /// Names this statement refers to, with their positions as reported in
    /// errors: 0 for the first referenced name, and so on.
    fn references(&self) -> Vec<&str> {
        match self {
            Statement::Objects(_) => Vec::new(),
            Statement::Map { dom, cod, .. } => vec![dom, cod],
            Statement::Define { args, .. } => args
                .iter()
                .filter_map(|a| match a {
                    Arg::Name(n) => Some(n.as_str()),
                    Arg::Int(_) => None,
                })
                .collect(),
            Statement::Conn { map, .. } | Statement::Trunc { map, .. } | Statement::NonIso { map } => vec![map],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Object {
    pub name: String,
    /// `Some(n)` when the object is known to be the sphere `S^n`.
    pub sphere: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Map {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
    /// `Some(n)` when the map is known to be `s_n : S^n -> pt`.
    pub sphere: Option<SphereMap>,
}

/// How a map was recognized as a sphere map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereMap {
    pub dim: i64,
    /// Recognized through `s_k □ s_l = s_{k+l+1}` or a join of spheres.
    pub by_join: bool,
}

/// A construction with its inputs and the maps and objects it introduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    /// Pushout of the span `f: Z -> X`, `g: Z -> Y`; `inl: X -> P`, `inr: Y -> P`.
    Pushout {
        apex: ObjId,
        f: MapId,
        g: MapId,
        inl: MapId,
        inr: MapId,
    },
    /// Pullback of the cospan `k: X -> W`, `g: Y -> W`; `pr1: Q -> X`, `pr2: Q -> Y`.
    Pullback {
        apex: ObjId,
        k: MapId,
        g: MapId,
        pr1: MapId,
        pr2: MapId,
    },
    PushoutProduct {
        result: MapId,
        u: MapId,
        v: MapId,
    },
    PushoutProductOver {
        result: MapId,
        base: ObjId,
        u: MapId,
        v: MapId,
    },
    PullbackHom {
        result: MapId,
        u: MapId,
        f: MapId,
    },
    Join {
        result: ObjId,
        a: ObjId,
        b: ObjId,
    },
    Sphere {
        result: MapId,
        n: i64,
    },
    Diagonal {
        result: MapId,
        f: MapId,
    },
    Codiagonal {
        result: MapId,
        u: MapId,
    },
    /// Gap map of the pushout square built by construction `square`.
    Gap {
        result: MapId,
        square: usize,
    },
    /// Cogap map of the pullback square built by construction `square`.
    Cogap {
        result: MapId,
        square: usize,
    },
    Compose {
        result: MapId,
        second: MapId,
        first: MapId,
    },
    /// `f = right ∘ left` with `left` n-connected and `right` n-truncated.
    Factor {
        f: MapId,
        n: i64,
        left: MapId,
        right: MapId,
        middle: ObjId,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Annotation {
    pub map: MapId,
    pub kind: Kind,
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildErrorKind {
    #[error("unknown name {0}")]
    UnknownName(String),
    #[error("name {0} is already defined")]
    DuplicateName(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("cyclic construction through {}", .0.join(", "))]
    CyclicConstruction(Vec<String>),
    #[error("{0}")]
    BadArgument(String),
    #[error(transparent)]
    Annotation(#[from] AnnotateError),
}

/// A build failure located at a statement and, where it applies, at one of
/// its referenced names (index into the names the statement refers to).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("statement {statement}: {kind}")]
pub struct BuildError {
    pub statement: usize,
    pub reference: Option<usize>,
    pub kind: BuildErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnnotateError {
    #[error("unknown map {0}")]
    UnknownMap(String),
    #[error("bound {0} is below the floor -2")]
    BelowFloor(i64),
    #[error("{0} is declared non-invertible but annotated (-2)-truncated")]
    ContradictoryAnnotation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Entity {
    Object(ObjId),
    Map(MapId),
    /// A pushout or pullback: usable as its apex object or as a square.
    Square {
        construction: usize,
        apex: ObjId,
    },
}

/// A validated diagram.
#[derive(Debug, Clone)]
pub struct SymDiagram {
    objects: Vec<Object>,
    maps: Vec<Map>,
    constructions: Vec<Construction>,
    annotations: Vec<Annotation>,
    noniso: Vec<MapId>,
    statements: Vec<Statement>,
    names: HashMap<String, Entity>,
}

impl PartialEq for SymDiagram {
    fn eq(&self, other: &SymDiagram) -> bool {
        self.objects == other.objects
            && self.maps == other.maps
            && self.constructions == other.constructions
            && self.annotations == other.annotations
            && self.noniso == other.noniso
            && self.statements == other.statements
    }
}

impl SymDiagram {
    fn empty() -> SymDiagram {
        SymDiagram {
            objects: Vec::new(),
            maps: Vec::new(),
            constructions: Vec::new(),
            annotations: Vec::new(),
            noniso: Vec::new(),
            statements: Vec::new(),
            names: HashMap::new(),
        }
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn maps(&self) -> &[Map] {
        &self.maps
    }

    pub fn map(&self, id: MapId) -> &Map {
        &self.maps[id.0]
    }

    pub fn object(&self, id: ObjId) -> &Object {
        &self.objects[id.0]
    }

    pub fn constructions(&self) -> &[Construction] {
        &self.constructions
    }

    pub fn annotations(&self) -> &[Annotation] {
        &self.annotations
    }

    pub fn noniso(&self) -> &[MapId] {
        &self.noniso
    }

    /// The statements the diagram was built from, in their original order.
    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    pub fn map_id(&self, name: &str) -> Option<MapId> {
        match self.names.get(name) {
            Some(Entity::Map(m)) => Some(*m),
            _ => None,
        }
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        match self.names.get(name) {
            Some(Entity::Object(o)) => Some(*o),
            Some(Entity::Square { apex, .. }) => Some(*apex),
            _ => None,
        }
    }

    fn add_object(&mut self, name: String, sphere: Option<i64>) -> ObjId {
        let id = ObjId(self.objects.len());
        self.names.insert(name.clone(), Entity::Object(id));
        self.objects.push(Object { name, sphere });
        id
    }

    fn add_map(&mut self, name: String, dom: ObjId, cod: ObjId) -> MapId {
        let id = MapId(self.maps.len());
        self.names.insert(name.clone(), Entity::Map(id));
        let sphere = self.terminal_sphere(dom, cod);
        self.maps.push(Map { name, dom, cod, sphere });
        id
    }

    fn terminal_sphere(&self, dom: ObjId, cod: ObjId) -> Option<SphereMap> {
        let dim = self.objects[dom.0].sphere?;
        (self.objects[cod.0].name == TERMINAL).then_some(SphereMap { dim, by_join: false })
    }

    /// The terminal object, added the first time something refers to it.
    fn terminal(&mut self) -> ObjId {
        match self.names.get(TERMINAL) {
            Some(Entity::Object(o)) => *o,
            _ => self.add_object(TERMINAL.to_string(), None),
        }
    }

    /// A fresh object, named after the map it belongs to.
    fn fresh_object(&mut self, name: String) -> ObjId {
        self.add_object(name, None)
    }

    /// Resolves a name, materializing `X.term`, `h.dom` and `h.cod`.
    fn resolve(&mut self, name: &str) -> Option<Entity> {
        if let Some(e) = self.names.get(name) {
            return Some(*e);
        }
        if name == TERMINAL {
            return Some(Entity::Object(self.terminal()));
        }
        let (prefix, suffix) = name.rsplit_once('.')?;
        let parent = self.resolve(prefix)?;
        match (parent, suffix) {
            (Entity::Object(o) | Entity::Square { apex: o, .. }, "term") => {
                let pt = self.terminal();
                let id = self.add_map(name.to_string(), o, pt);
                Some(Entity::Map(id))
            }
            (Entity::Map(m), "dom") => Some(Entity::Object(self.maps[m.0].dom)),
            (Entity::Map(m), "cod") => Some(Entity::Object(self.maps[m.0].cod)),
            _ => None,
        }
    }

    fn resolve_map(&mut self, name: &str) -> Result<MapId, BuildErrorKind> {
        match self.resolve(name) {
            Some(Entity::Map(m)) => Ok(m),
            Some(_) => Err(BuildErrorKind::BadArgument(format!("{name} is not a map"))),
            None => Err(BuildErrorKind::UnknownName(name.to_string())),
        }
    }

    fn resolve_object(&mut self, name: &str) -> Result<ObjId, BuildErrorKind> {
        match self.resolve(name) {
            Some(Entity::Object(o) | Entity::Square { apex: o, .. }) => Ok(o),
            Some(Entity::Map(_)) => Err(BuildErrorKind::BadArgument(format!("{name} is not an object"))),
            None => Err(BuildErrorKind::UnknownName(name.to_string())),
        }
    }

    fn map_name(&self, m: MapId) -> &str {
        &self.maps[m.0].name
    }

    fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.0].name
    }

    /// Raises a bound annotation. Connectivity only increases and truncation
    /// only decreases; weaker annotations are absorbed.
    pub fn annotate(&mut self, map: &str, kind: Kind, n: i64) -> Result<(), AnnotateError> {
        if n < FLOOR {
            return Err(AnnotateError::BelowFloor(n));
        }
        let id = self.map_id(map).ok_or_else(|| AnnotateError::UnknownMap(map.to_string()))?;
        self.annotate_id(id, kind, n)
    }

    fn annotate_id(&mut self, id: MapId, kind: Kind, n: i64) -> Result<(), AnnotateError> {
        if kind == Kind::Trunc && n == FLOOR && self.noniso.contains(&id) {
            return Err(AnnotateError::ContradictoryAnnotation(self.map_name(id).to_string()));
        }
        if kind == Kind::Conn && n == FLOOR {
            return Ok(());
        }
        match self.annotations.iter_mut().find(|a| a.map == id && a.kind == kind) {
            Some(a) => {
                a.n = match kind {
                    Kind::Conn => a.n.max(n),
                    Kind::Trunc => a.n.min(n),
                }
            }
            None => self.annotations.push(Annotation { map: id, kind, n }),
        }
        Ok(())
    }

    /// Current annotation of a map, if any.
    pub fn annotation(&self, map: MapId, kind: Kind) -> Option<i64> {
        self.annotations.iter().find(|a| a.map == map && a.kind == kind).map(|a| a.n)
    }

    pub fn declare_noniso(&mut self, map: &str) -> Result<(), AnnotateError> {
        let id = self.map_id(map).ok_or_else(|| AnnotateError::UnknownMap(map.to_string()))?;
        if self.annotation(id, Kind::Trunc) == Some(FLOOR) {
            return Err(AnnotateError::ContradictoryAnnotation(map.to_string()));
        }
        if !self.noniso.contains(&id) {
            self.noniso.push(id);
        }
        Ok(())
    }

    fn apply(&mut self, stmt: &Statement) -> Result<(), (Option<usize>, BuildErrorKind)> {
        let at = |i: usize| move |e: BuildErrorKind| (Some(i), e);
        match stmt {
            Statement::Objects(names) => {
                for n in names {
                    self.check_fresh(n).map_err(|e| (None, e))?;
                    self.add_object(n.clone(), None);
                }
            }
            Statement::Map { name, dom, cod } => {
                self.check_fresh(name).map_err(|e| (None, e))?;
                let d = self.resolve_object(dom).map_err(at(0))?;
                let c = self.resolve_object(cod).map_err(at(1))?;
                self.add_map(name.clone(), d, c);
            }
            Statement::Define { name, ctor, args } => {
                self.check_fresh(name).map_err(|e| (None, e))?;
                self.define(name, *ctor, args)?;
            }
            Statement::Conn { map, n } | Statement::Trunc { map, n } => {
                let kind = if matches!(stmt, Statement::Conn { .. }) { Kind::Conn } else { Kind::Trunc };
                let id = self.resolve_map(map).map_err(at(0))?;
                if *n < FLOOR {
                    return Err((None, AnnotateError::BelowFloor(*n).into()));
                }
                self.annotate_id(id, kind, *n).map_err(|e| (Some(0), e.into()))?;
            }
            Statement::NonIso { map } => {
                self.resolve_map(map).map_err(at(0))?;
                self.declare_noniso(map).map_err(|e| (Some(0), e.into()))?;
            }
        }
        Ok(())
    }

    fn check_fresh(&self, name: &str) -> Result<(), BuildErrorKind> {
        if self.names.contains_key(name) {
            Err(BuildErrorKind::DuplicateName(name.to_string()))
        } else {
            Ok(())
        }
    }

    fn define(&mut self, name: &str, ctor: Ctor, args: &[Arg]) -> Result<(), (Option<usize>, BuildErrorKind)> {
        let sig = ctor.signature();
        if args.len() != sig.len() {
            return Err((
                None,
                BuildErrorKind::BadArgument(format!(
                    "{} takes {} arguments, got {}",
                    ctor.keyword(),
                    sig.len(),
                    args.len()
                )),
            ));
        }
        // resolve arguments; `reference` counts names only
        let mut maps = Vec::new();
        let mut objects = Vec::new();
        let mut squares = Vec::new();
        let mut ints = Vec::new();
        let mut reference = 0;
        for (arg, kind) in args.iter().zip(sig) {
            match (arg, kind) {
                (Arg::Int(i), ArgKind::Int) => ints.push(*i),
                (Arg::Int(i), k) => {
                    return Err((None, BuildErrorKind::BadArgument(format!("expected {k}, found {i}"))))
                }
                (Arg::Name(n), ArgKind::Int) => {
                    return Err((
                        Some(reference),
                        BuildErrorKind::BadArgument(format!("expected an integer, found {n}")),
                    ))
                }
                (Arg::Name(n), k) => {
                    let r = reference;
                    reference += 1;
                    match k {
                        ArgKind::Map => maps.push(self.resolve_map(n).map_err(|e| (Some(r), e))?),
                        ArgKind::Object => objects.push(self.resolve_object(n).map_err(|e| (Some(r), e))?),
                        ArgKind::Pushout | ArgKind::Pullback => {
                            let c = match self.resolve(n) {
                                Some(Entity::Square { construction, .. }) => construction,
                                Some(_) => {
                                    return Err((Some(r), BuildErrorKind::BadArgument(format!("{n} is not {k}"))))
                                }
                                None => return Err((Some(r), BuildErrorKind::UnknownName(n.clone()))),
                            };
                            let is_pushout = matches!(self.constructions[c], Construction::Pushout { .. });
                            if is_pushout != (*k == ArgKind::Pushout) {
                                return Err((Some(r), BuildErrorKind::BadArgument(format!("{n} is not {k}"))));
                            }
                            squares.push(c);
                        }
                        ArgKind::Int => unreachable!("handled above"),
                    }
                }
            }
        }
        let sub = |s: &str| format!("{name}.{s}");
        let construction = match ctor {
            Ctor::Pushout => {
                let (f, g) = (maps[0], maps[1]);
                if self.maps[f.0].dom != self.maps[g.0].dom {
                    return Err((Some(1), self.mismatch("a span needs a common domain", f, g)));
                }
                let apex = self.add_object(name.to_string(), None);
                let inl = self.add_map(sub("inl"), self.maps[f.0].cod, apex);
                let inr = self.add_map(sub("inr"), self.maps[g.0].cod, apex);
                Construction::Pushout { apex, f, g, inl, inr }
            }
            Ctor::Pullback => {
                let (k, g) = (maps[0], maps[1]);
                if self.maps[k.0].cod != self.maps[g.0].cod {
                    return Err((Some(1), self.mismatch("a cospan needs a common codomain", k, g)));
                }
                let apex = self.add_object(name.to_string(), None);
                let pr1 = self.add_map(sub("pr1"), apex, self.maps[k.0].dom);
                let pr2 = self.add_map(sub("pr2"), apex, self.maps[g.0].dom);
                Construction::Pullback { apex, k, g, pr1, pr2 }
            }
            Ctor::Pp => {
                let result = self.fresh_map(name);
                let (u, v) = (maps[0], maps[1]);
                if let (Some(a), Some(b)) = (self.maps[u.0].sphere, self.maps[v.0].sphere) {
                    self.maps[result.0].sphere = Some(SphereMap { dim: a.dim + b.dim + 1, by_join: true });
                }
                Construction::PushoutProduct { result, u, v }
            }
            Ctor::PpOver => {
                let result = self.fresh_map(name);
                Construction::PushoutProductOver { result, base: objects[0], u: maps[0], v: maps[1] }
            }
            Ctor::Pbhom => Construction::PullbackHom { result: self.fresh_map(name), u: maps[0], f: maps[1] },
            Ctor::Join => {
                let (a, b) = (objects[0], objects[1]);
                let sphere = match (self.objects[a.0].sphere, self.objects[b.0].sphere) {
                    (Some(x), Some(y)) => Some(x + y + 1),
                    _ => None,
                };
                let result = self.add_object(name.to_string(), sphere);
                Construction::Join { result, a, b }
            }
            Ctor::Sphere => {
                let n = ints[0];
                if n < -1 {
                    return Err((None, BuildErrorKind::BadArgument(format!("sphere dimension {n} is below -1"))));
                }
                let dom = self.add_object(sub("dom"), Some(n));
                let pt = self.terminal();
                let result = self.add_map(name.to_string(), dom, pt);
                Construction::Sphere { result, n }
            }
            Ctor::Diag => {
                let f = maps[0];
                let dom = self.maps[f.0].dom;
                let cod = self.fresh_object(sub("cod"));
                Construction::Diagonal { result: self.add_map(name.to_string(), dom, cod), f }
            }
            Ctor::Codiag => {
                let u = maps[0];
                let cod = self.maps[u.0].cod;
                let dom = self.fresh_object(sub("dom"));
                Construction::Codiagonal { result: self.add_map(name.to_string(), dom, cod), u }
            }
            Ctor::Gap => {
                let square = squares[0];
                let Construction::Pushout { f, .. } = self.constructions[square] else { unreachable!("checked kind") };
                let dom = self.maps[f.0].dom;
                let cod = self.fresh_object(sub("cod"));
                Construction::Gap { result: self.add_map(name.to_string(), dom, cod), square }
            }
            Ctor::Cogap => {
                let square = squares[0];
                let Construction::Pullback { k, .. } = self.constructions[square] else { unreachable!("checked kind") };
                let cod = self.maps[k.0].cod;
                let dom = self.fresh_object(sub("dom"));
                Construction::Cogap { result: self.add_map(name.to_string(), dom, cod), square }
            }
            Ctor::Compose => {
                let (second, first) = (maps[0], maps[1]);
                if self.maps[first.0].cod != self.maps[second.0].dom {
                    return Err((Some(0), self.mismatch("maps are not composable", first, second)));
                }
                let (dom, cod) = (self.maps[first.0].dom, self.maps[second.0].cod);
                Construction::Compose { result: self.add_map(name.to_string(), dom, cod), second, first }
            }
            Ctor::Factor => {
                let (f, n) = (maps[0], ints[0]);
                if n < FLOOR {
                    return Err((None, AnnotateError::BelowFloor(n).into()));
                }
                let middle = self.fresh_object(sub("mid"));
                let left = self.add_map(sub("l"), self.maps[f.0].dom, middle);
                let right = self.add_map(sub("r"), middle, self.maps[f.0].cod);
                Construction::Factor { f, n, left, right, middle }
            }
        };
        let index = self.constructions.len();
        self.constructions.push(construction);
        if let Some(apex) = match self.constructions[index] {
            Construction::Pushout { apex, .. } | Construction::Pullback { apex, .. } => Some(apex),
            _ => None,
        } {
            self.names.insert(name.to_string(), Entity::Square { construction: index, apex });
        }
        Ok(())
    }

    /// A map with fresh domain and codomain objects `name.dom`, `name.cod`.
    fn fresh_map(&mut self, name: &str) -> MapId {
        let dom = self.fresh_object(format!("{name}.dom"));
        let cod = self.fresh_object(format!("{name}.cod"));
        self.add_map(name.to_string(), dom, cod)
    }

    fn mismatch(&self, what: &str, a: MapId, b: MapId) -> BuildErrorKind {
        let show = |m: MapId| {
            let map = &self.maps[m.0];
            format!("{} : {} -> {}", map.name, self.object_name(map.dom), self.object_name(map.cod))
        };
        BuildErrorKind::DomainMismatch(format!("{what} ({}, {})", show(a), show(b)))
    }

    /// Display name of a map.
    pub fn name_of(&self, m: MapId) -> &str {
        self.map_name(m)
    }
}

/// Base name of a reference that some statement defines: the longest
/// dotted prefix found in `defined`.
fn defining_prefix<'a>(name: &'a str, defined: &HashMap<&str, usize>) -> Option<&'a str> {
    let mut cur = name;
    loop {
        if defined.contains_key(cur) {
            return Some(cur);
        }
        cur = cur.rsplit_once('.')?.0;
    }
}

/// Orders statements so that every name is defined before it is used,
/// keeping the original order where dependencies allow.
fn dependency_order(statements: &[Statement]) -> Result<Vec<usize>, BuildError> {
    let mut defined: HashMap<&str, usize> = HashMap::new();
    for (i, s) in statements.iter().enumerate() {
        for n in s.defines() {
            if n == TERMINAL || defined.insert(n, i).is_some() {
                return Err(BuildError {
                    statement: i,
                    reference: None,
                    kind: BuildErrorKind::DuplicateName(n.to_string()),
                });
            }
        }
    }
    let deps: Vec<Vec<usize>> = statements
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut d: Vec<usize> = s
                .references()
                .into_iter()
                .filter_map(|r| defining_prefix(r, &defined).map(|p| defined[p]))
                .filter(|&j| j != i)
                .collect();
            d.sort_unstable();
            d.dedup();
            d
        })
        .collect();
    // self-reference is a cycle of length one
    for (i, s) in statements.iter().enumerate() {
        if s.references().into_iter().any(|r| defining_prefix(r, &defined).map(|p| defined[p]) == Some(i)) {
            return Err(BuildError {
                statement: i,
                reference: None,
                kind: BuildErrorKind::CyclicConstruction(s.defines().into_iter().map(String::from).collect()),
            });
        }
    }
    let mut done = vec![false; statements.len()];
    let mut order = Vec::with_capacity(statements.len());
    while order.len() < statements.len() {
        let next = (0..statements.len()).find(|&i| !done[i] && deps[i].iter().all(|&j| done[j]));
        match next {
            Some(i) => {
                done[i] = true;
                order.push(i);
            }
            None => {
                let stuck: Vec<usize> = (0..statements.len()).filter(|&i| !done[i]).collect();
                let names = stuck.iter().flat_map(|&i| statements[i].defines()).map(String::from).collect();
                return Err(BuildError {
                    statement: stuck[0],
                    reference: None,
                    kind: BuildErrorKind::CyclicConstruction(names),
                });
            }
        }
    }
    Ok(order)
}

/// Builds a diagram from statements. Statements may appear in any order
/// as long as their dependencies are acyclic. All errors are collected.
pub fn build(statements: &[Statement]) -> Result<SymDiagram, Vec<BuildError>> {
    let order = dependency_order(statements).map_err(|e| vec![e])?;
    let mut d = SymDiagram::empty();
    let mut errors = Vec::new();
    for i in order {
        if let Err((reference, kind)) = d.apply(&statements[i]) {
            errors.push(BuildError { statement: i, reference, kind });
        }
    }
    if errors.is_empty() {
        d.statements = statements.to_vec();
        Ok(d)
    } else {
        errors.sort_by_key(|e| e.statement);
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn objs(names: &[&str]) -> Statement {
        Statement::Objects(names.iter().map(|s| s.to_string()).collect())
    }

    fn map(name: &str, dom: &str, cod: &str) -> Statement {
        Statement::Map { name: name.into(), dom: dom.into(), cod: cod.into() }
    }

    fn def(name: &str, ctor: Ctor, args: &[&str]) -> Statement {
        let args =
            args.iter().map(|a| a.parse::<i64>().map(Arg::Int).unwrap_or_else(|_| Arg::Name(a.to_string()))).collect();
        Statement::Define { name: name.into(), ctor, args }
    }

    #[test]
    fn pushout_and_gap() {
        let d = build(&[
            objs(&["Z", "X", "Y"]),
            map("f", "Z", "X"),
            map("g", "Z", "Y"),
            def("P", Ctor::Pushout, &["f", "g"]),
            def("h", Ctor::Gap, &["P"]),
        ])
        .unwrap();
        let h = d.map(d.map_id("h").unwrap());
        assert_eq!(d.object(h.dom).name, "Z");
        assert_eq!(d.object(h.cod).name, "h.cod");
        let inl = d.map(d.map_id("P.inl").unwrap());
        assert_eq!((d.object(inl.dom).name.as_str(), d.object(inl.cod).name.as_str()), ("X", "P"));
    }

    #[test]
    fn unknown_and_mismatch() {
        let err = build(&[objs(&["X"]), map("f", "Z", "X")]).unwrap_err();
        assert_eq!(err[0].kind, BuildErrorKind::UnknownName("Z".into()));
        assert_eq!((err[0].statement, err[0].reference), (1, Some(0)));

        let err = build(&[
            objs(&["A", "B", "C"]),
            map("f", "A", "B"),
            map("g", "B", "C"),
            def("P", Ctor::Pushout, &["f", "g"]),
        ])
        .unwrap_err();
        assert!(matches!(err[0].kind, BuildErrorKind::DomainMismatch(_)));
    }

    #[test]
    fn out_of_order_statements_are_sorted() {
        let d = build(&[
            def("h", Ctor::Compose, &["g", "f"]),
            map("g", "B", "C"),
            map("f", "A", "B"),
            objs(&["A", "B", "C"]),
        ])
        .unwrap();
        assert!(d.map_id("h").is_some());
        assert_eq!(d.statements().len(), 4);
    }

    #[test]
    fn cycles_are_reported() {
        let err = build(&[objs(&["A"]), def("a", Ctor::Diag, &["b"]), def("b", Ctor::Diag, &["a"])]).unwrap_err();
        assert!(matches!(&err[0].kind, BuildErrorKind::CyclicConstruction(names) if names.len() == 2));
        let err = build(&[def("P", Ctor::Pushout, &["P.inl", "P.inr"])]).unwrap_err();
        assert!(matches!(err[0].kind, BuildErrorKind::CyclicConstruction(_)));
    }

    #[test]
    fn spheres_and_joins() {
        let d = build(&[
            def("s", Ctor::Sphere, &["0"]),
            def("t", Ctor::Sphere, &["1"]),
            def("J", Ctor::Join, &["s.dom", "t.dom"]),
            def("st", Ctor::Pp, &["s", "t"]),
            map("x", "J", "pt"),
        ])
        .unwrap();
        assert_eq!(d.object(d.object_id("J").unwrap()).sphere, Some(2));
        assert_eq!(d.map(d.map_id("st").unwrap()).sphere, Some(SphereMap { dim: 2, by_join: true }));
        assert_eq!(d.map(d.map_id("x").unwrap()).sphere.map(|s| s.dim), Some(2));
        assert!(build(&[def("s", Ctor::Sphere, &["-2"])]).is_err());
    }

    #[test]
    fn terminal_maps_on_demand() {
        let d = build(&[objs(&["X"]), def("P", Ctor::Pushout, &["X.term", "X.term"]), def("h", Ctor::Gap, &["P"])])
            .unwrap();
        let t = d.map(d.map_id("X.term").unwrap());
        assert_eq!(d.object(t.cod).name, TERMINAL);
    }

    #[test]
    fn annotations_are_monotone() {
        let mut d = build(&[objs(&["A", "B"]), map("f", "A", "B")]).unwrap();
        let f = d.map_id("f").unwrap();
        d.annotate("f", Kind::Conn, -2).unwrap();
        assert_eq!(d.annotation(f, Kind::Conn), None);
        d.annotate("f", Kind::Conn, 1).unwrap();
        d.annotate("f", Kind::Conn, 0).unwrap();
        assert_eq!(d.annotation(f, Kind::Conn), Some(1));
        d.annotate("f", Kind::Trunc, 3).unwrap();
        d.annotate("f", Kind::Trunc, 5).unwrap();
        assert_eq!(d.annotation(f, Kind::Trunc), Some(3));
        assert_eq!(d.annotate("f", Kind::Trunc, -3), Err(AnnotateError::BelowFloor(-3)));
        d.declare_noniso("f").unwrap();
        assert_eq!(d.annotate("f", Kind::Trunc, -2), Err(AnnotateError::ContradictoryAnnotation("f".into())));
    }

    #[test]
    fn wrong_argument_kinds() {
        let err = build(&[objs(&["A"]), def("P", Ctor::Pushout, &["A", "A"])]).unwrap_err();
        assert!(matches!(err[0].kind, BuildErrorKind::BadArgument(_)));
        let err = build(&[
            objs(&["A", "B"]),
            map("f", "A", "B"),
            def("Q", Ctor::Pullback, &["f", "f"]),
            def("h", Ctor::Gap, &["Q"]),
        ])
        .unwrap_err();
        assert!(matches!(err[0].kind, BuildErrorKind::BadArgument(_)));
    }
}
