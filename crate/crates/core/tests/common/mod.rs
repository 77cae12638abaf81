//! Test support: brute-force oracles over plain index vectors, written
//! without the library's constructions, and proptest strategies.
#![allow(dead_code)]

use std::path::PathBuf;

use bmlab::finset::{FinMap, FinSet};
use proptest::prelude::*;

/// A function `{0..dom} -> {0..cod}` as a plain vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raw {
    pub dom: usize,
    pub cod: usize,
    pub img: Vec<usize>,
}

impl Raw {
    pub fn new(dom: usize, cod: usize, img: Vec<usize>) -> Raw {
        assert_eq!(img.len(), dom);
        assert!(img.iter().all(|&y| y < cod));
        Raw { dom, cod, img }
    }

    pub fn of(f: &FinMap) -> Raw {
        Raw::new(f.dom().len(), f.cod().len(), f.images().to_vec())
    }

    pub fn to_map(&self) -> FinMap {
        FinMap::new(FinSet::canonical(self.dom), FinSet::canonical(self.cod), self.img.clone()).unwrap()
    }

    pub fn injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        self.img.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn surjective(&self) -> bool {
        let mut hit = vec![false; self.cod];
        for &y in &self.img {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn bijective(&self) -> bool {
        self.injective() && self.surjective()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Raw) -> Raw {
        assert_eq!(self.cod, g.dom);
        Raw::new(self.dom, g.cod, self.img.iter().map(|&i| g.img[i]).collect())
    }
}

/// Every function `{0..n} -> {0..m}`, in lexicographic order.
pub fn functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |y| {
                    let mut w = v.clone();
                    w.push(y);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every map between sets of size at most `max`.
pub fn all_maps(max: usize) -> Vec<Raw> {
    let mut out = Vec::new();
    for n in 0..=max {
        for m in 0..=max {
            for img in functions(n, m) {
                out.push(Raw::new(n, m, img));
            }
        }
    }
    out
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Pushout of `X <-f- Z -g-> Y` by gluing `X + Y`: apex size and the two
/// inclusions.
pub fn pushout(f: &Raw, g: &Raw) -> (usize, Raw, Raw) {
    assert_eq!(f.dom, g.dom);
    let (x, y) = (f.cod, g.cod);
    let mut parent: Vec<usize> = (0..x + y).collect();
    for z in 0..f.dom {
        let a = find(&mut parent, f.img[z]);
        let b = find(&mut parent, x + g.img[z]);
        parent[a.max(b)] = a.min(b);
    }
    let roots: Vec<usize> = (0..x + y).map(|i| find(&mut parent, i)).collect();
    let mut classes: Vec<usize> = roots.clone();
    classes.sort();
    classes.dedup();
    let idx = |r: usize| classes.binary_search(&r).unwrap();
    let n = classes.len();
    (
        n,
        Raw::new(x, n, (0..x).map(|i| idx(roots[i])).collect()),
        Raw::new(y, n, (0..y).map(|j| idx(roots[x + j])).collect()),
    )
}

/// Pullback of `X -k-> B <-g- Y` as the list of matching pairs.
pub fn pullback(k: &Raw, g: &Raw) -> Vec<(usize, usize)> {
    assert_eq!(k.cod, g.cod);
    let mut out = Vec::new();
    for a in 0..k.dom {
        for b in 0..g.dom {
            if k.img[a] == g.img[b] {
                out.push((a, b));
            }
        }
    }
    out
}

/// Number of commutative squares `(top, bottom) : w -> f`, by enumerating
/// both components.
pub fn arrow_hom_brute(w: &Raw, f: &Raw) -> usize {
    let mut count = 0;
    for bottom in functions(w.cod, f.cod) {
        for top in functions(w.dom, f.dom) {
            if (0..w.dom).all(|i| f.img[top[i]] == bottom[w.img[i]]) {
                count += 1;
            }
        }
    }
    count
}

fn pair(i: usize, j: usize, second: usize) -> usize {
    i * second + j
}

/// `u □ v` for `u: A -> B`, `v: C -> D`, as the gap map of the square
/// `A×C -> A×D, B×C -> B×D`.
pub fn pushout_product(u: &Raw, v: &Raw) -> Raw {
    let (a, b, c, d) = (u.dom, u.cod, v.dom, v.cod);
    let to_ad = Raw::new(a * c, a * d, (0..a * c).map(|p| pair(p / c.max(1), v.img[p % c.max(1)], d)).collect());
    let to_bc = Raw::new(a * c, b * c, (0..a * c).map(|p| pair(u.img[p / c.max(1)], p % c.max(1), c)).collect());
    let (n, i1, i2) = pushout(&to_ad, &to_bc);
    let mut img = vec![usize::MAX; n];
    for p in 0..a * d {
        img[i1.img[p]] = pair(u.img[p / d.max(1)], p % d.max(1), d);
    }
    for p in 0..b * c {
        img[i2.img[p]] = pair(p / c.max(1), v.img[p % c.max(1)], d);
    }
    Raw::new(n, b * d, img)
}

/// `⟨v, f⟩ : X^D -> X^C ×_{Y^C} Y^D` for `v: C -> D`, `f: X -> Y`.
pub fn pullback_hom(v: &Raw, f: &Raw) -> Raw {
    let xd = functions(v.cod, f.dom);
    let xc = functions(v.dom, f.dom);
    let yd = functions(v.cod, f.cod);
    let mut targets = Vec::new();
    for phi in &xc {
        for psi in &yd {
            if (0..v.dom).all(|c| f.img[phi[c]] == psi[v.img[c]]) {
                targets.push((phi.clone(), psi.clone()));
            }
        }
    }
    let img = xd
        .iter()
        .map(|h| {
            let phi: Vec<usize> = v.img.iter().map(|&dd| h[dd]).collect();
            let psi: Vec<usize> = h.iter().map(|&x| f.img[x]).collect();
            targets.iter().position(|t| t.0 == phi && t.1 == psi).unwrap()
        })
        .collect();
    Raw::new(xd.len(), targets.len(), img)
}

/// Whether every square from `u` to `f` has exactly one diagonal filler.
pub fn orthogonal_brute(u: &Raw, f: &Raw) -> bool {
    for bottom in functions(u.cod, f.cod) {
        for top in functions(u.dom, f.dom) {
            if !(0..u.dom).all(|i| f.img[top[i]] == bottom[u.img[i]]) {
                continue;
            }
            let fillers = functions(u.cod, f.dom)
                .into_iter()
                .filter(|d| (0..u.dom).all(|i| d[u.img[i]] == top[i]) && (0..u.cod).all(|b| f.img[d[b]] == bottom[b]))
                .count();
            if fillers != 1 {
                return false;
            }
        }
    }
    true
}

/// Maps on canonical sets with at most `max` elements on each side.
pub fn arb_map(max: usize) -> impl Strategy<Value = FinMap> {
    (0..=max).prop_flat_map(move |cod| {
        let dom = if cod == 0 { 0..=0 } else { 0..=max };
        dom.prop_flat_map(move |d| proptest::collection::vec(0..cod.max(1), d))
            .prop_map(move |img| Raw::new(img.len(), cod, img).to_map())
    })
}

/// Maps out of a set of the given size.
pub fn arb_map_from(dom: usize, max: usize) -> impl Strategy<Value = FinMap> {
    let lo = if dom == 0 { 0 } else { 1 };
    (lo..=max.max(lo)).prop_flat_map(move |cod| {
        proptest::collection::vec(0..cod.max(1), dom).prop_map(move |img| Raw::new(dom, cod, img).to_map())
    })
}

/// Maps into a set of the given size.
pub fn arb_map_to(cod: usize, max: usize) -> impl Strategy<Value = FinMap> {
    let hi = if cod == 0 { 0 } else { max };
    (0..=hi).prop_flat_map(move |dom| {
        proptest::collection::vec(0..cod.max(1), dom).prop_map(move |img| Raw::new(img.len(), cod, img).to_map())
    })
}

/// Two maps out of a common domain.
pub fn arb_span(max: usize) -> impl Strategy<Value = (FinMap, FinMap)> {
    (0..=max).prop_flat_map(move |z| (arb_map_from(z, max), arb_map_from(z, max)))
}

/// Two maps into a common codomain.
pub fn arb_cospan(max: usize) -> impl Strategy<Value = (FinMap, FinMap)> {
    (0..=max).prop_flat_map(move |b| (arb_map_to(b, max), arb_map_to(b, max)))
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

/// Every `.bm` fixture that parses, sorted by name.
pub fn valid_fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            let name = p.file_name()?.to_str()?.to_string();
            (p.extension()? == "bm").then(|| (name, std::fs::read_to_string(&p).unwrap()))
        })
        .filter(|(name, src)| bmlab::dsl::parse(name, src).is_ok())
        .collect();
    out.sort();
    out
}

/// Runs the command-line driver in-process.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = bmlab::cli::run(std::iter::once("bmlab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// The cogap `Y ⊔_X Z -> W` of the pullback square of `k: Y -> W` and
/// `g: Z -> W`.
pub fn cogap(k: &Raw, g: &Raw) -> Raw {
    let pairs = pullback(k, g);
    let p1 = Raw::new(pairs.len(), k.dom, pairs.iter().map(|p| p.0).collect());
    let p2 = Raw::new(pairs.len(), g.dom, pairs.iter().map(|p| p.1).collect());
    let (n, i1, i2) = pushout(&p1, &p2);
    let mut img = vec![usize::MAX; n];
    for x in 0..k.dom {
        img[i1.img[x]] = k.img[x];
    }
    for y in 0..g.dom {
        img[i2.img[y]] = g.img[y];
    }
    Raw::new(n, k.cod, img)
}

pub fn cogap_bijective(k: &Raw, g: &Raw) -> bool {
    cogap(k, g).bijective()
}

/// Whether the pushout square of `f, g` is also a pullback, and the leg
/// opposite `f` is injective.
pub fn mono_pushout_oracle(f: &Raw, g: &Raw) -> bool {
    let (_, i1, i2) = pushout(f, g);
    let pairs = pullback(&i1, &i2);
    let cartesian = pairs.len() == f.dom && (0..f.dom).all(|z| pairs.contains(&(f.img[z], g.img[z])));
    cartesian && i2.injective()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn fixture(name: &str) -> String {
    fixture_dir().join(name).to_string_lossy().into_owned()
}

/// Exit code and both streams, with the fixture directory made relative.
pub fn transcript(args: &[String]) -> String {
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, out, err) = run_cli(&argv);
    let dir = format!("{}/", fixture_dir().to_string_lossy());
    let shown: Vec<String> = args.iter().map(|a| a.replace(&dir, "")).collect();
    format!("$ bmlab {}\nexit: {code}\n--- stdout\n{out}--- stderr\n{err}", shown.join(" ")).replace(&dir, "")
}

pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let mut cases = Vec::new();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    for f in
        ["bm", "contradiction", "dual_bm", "factor", "freudenthal", "generalized", "join", "parse_error", "products"]
    {
        let path = fixture(&format!("{f}.bm"));
        cases.push((format!("infer_{f}"), s(&["infer", &path])));
        if f != "parse_error" {
            cases.push((format!("infer_{f}_json"), s(&["infer", &path, "--format", "json"])));
        }
    }
    let freud = fixture("freudenthal.bm");
    cases.push(("explain_freudenthal".into(), s(&["infer", &freud, "--explain", "gap1"])));
    cases.push(("explain_freudenthal_json".into(), s(&["infer", &freud, "--explain", "gap1", "--format", "json"])));
    cases.push(("explain_underived".into(), s(&["infer", &fixture("bm.bm"), "--explain", "P.inl"])));
    cases.push(("infer_bm_cap0".into(), s(&["infer", &fixture("bm.bm"), "--cap", "0"])));
    cases.push(("check_dual_bm".into(), s(&["model-check", "dual-bm", "--max-size", "2"])));
    cases.push(("check_dual_bm_json".into(), s(&["model-check", "dual-bm", "--max-size", "2", "--format", "json"])));
    cases.push(("check_little_bm".into(), s(&["model-check", "little-bm", "--max-size", "2"])));
    cases.push(("check_orthogonality".into(), s(&["model-check", "orthogonality", "--max-size", "2"])));
    cases.push(("check_l_cartesian".into(), s(&["model-check", "l-cartesian", "--max-size", "1"])));
    cases.push((
        "check_squareford_sampled".into(),
        s(&["model-check", "squareford", "--max-size", "3", "--sample", "25", "--seed", "11"]),
    ));
    cases
}
