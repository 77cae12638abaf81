//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Built with `harness = false`.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bmlab::conn::{build, firing_bound, infer, infer_shuffled, Bounds, Kind, Level, MapId, Statement};
use bmlab::dsl::{parse, parse_program, pretty};
use bmlab::lab::replay;
use bmlab::witness::Witness;
use common::{
    all_maps, arrow_hom_brute, cogap, fixture_dir, golden_cases, golden_dir, mono_pushout_oracle, orthogonal_brute,
    pullback_hom, pushout_product, run_cli, transcript, valid_fixtures, Raw,
};
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `model-check` with JSON output; reports keyed by name.
fn model_check(args: &[&str]) -> Result<BTreeMap<String, Value>, String> {
    let mut argv = vec!["model-check"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    let (code, out, err) = run_cli(&argv);
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    out.lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).map_err(|e| e.to_string())?;
            Ok((v["name"].as_str().unwrap_or_default().to_string(), v))
        })
        .collect()
}

fn report<'a>(reports: &'a BTreeMap<String, Value>, name: &str) -> Result<&'a Value, String> {
    reports.get(name).ok_or_else(|| format!("no report {name}"))
}

fn verified(r: &Value) -> Result<(), String> {
    ensure(r["status"] == "verified" && r["witness"].is_null(), || format!("{} is {}", r["name"], r["status"]))
}

fn count(r: &Value, field: &str) -> u64 {
    r[field].as_u64().unwrap_or(u64::MAX)
}

/// Pairs `(k, g)` of maps into a common codomain.
fn cospans(max: usize) -> Vec<(Raw, Raw)> {
    let maps = all_maps(max);
    let mut out = Vec::new();
    for k in &maps {
        for g in maps.iter().filter(|g| g.cod == k.cod) {
            out.push((k.clone(), g.clone()));
        }
    }
    out
}

/// Pairs `(f, g)` of maps out of a common domain.
fn spans(max: usize) -> Vec<(Raw, Raw)> {
    let maps = all_maps(max);
    let mut out = Vec::new();
    for f in &maps {
        for g in maps.iter().filter(|g| g.dom == f.dom) {
            out.push((f.clone(), g.clone()));
        }
    }
    out
}

fn c1() -> Outcome {
    let start = Instant::now();
    let reports = model_check(&["dual-bm", "--max-size", "3"])?;
    let elapsed = start.elapsed();
    let (mut iso_hyp, mut epi_hyp) = (0, 0);
    let all = cospans(3);
    for (k, g) in &all {
        let pp = pushout_product(k, g);
        let c = cogap(k, g);
        if pp.bijective() {
            iso_hyp += 1;
            ensure(c.bijective(), || format!("iso oracle fails at {k:?} {g:?}"))?;
        }
        if pp.surjective() {
            epi_hyp += 1;
            ensure(c.surjective(), || format!("epi oracle fails at {k:?} {g:?}"))?;
        }
    }
    for (name, hyp) in [("dual-bm/isos", iso_hyp), ("dual-bm/epis", epi_hyp)] {
        let r = report(&reports, name)?;
        verified(r)?;
        ensure(count(r, "cases") == all.len() as u64, || {
            format!("{name}: {} cases, oracle {}", r["cases"], all.len())
        })?;
        ensure(count(r, "instances") == hyp, || format!("{name}: {} instances, oracle {hyp}", r["instances"]))?;
    }
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{} cospans, {iso_hyp} iso and {epi_hyp} epi hypothesis cases, 0 counterexamples", all.len()))
}

fn c2() -> Outcome {
    let reports = model_check(&["dual-bm", "--max-size", "3"])?;
    let r = report(&reports, "dual-bm-corollary")?;
    verified(r)?;
    let epi_pairs: Vec<_> = cospans(3).into_iter().filter(|(k, g)| k.surjective() && g.surjective()).collect();
    for (k, g) in &epi_pairs {
        ensure(cogap(k, g).bijective(), || format!("cogap not invertible at {k:?} {g:?}"))?;
    }
    ensure(count(r, "instances") == epi_pairs.len() as u64, || {
        format!("{} instances, oracle {}", r["instances"], epi_pairs.len())
    })?;
    Ok(format!("{} pairs of epis, every cogap invertible", epi_pairs.len()))
}

fn c3() -> Outcome {
    let reports = model_check(&["adjunction", "--max-size", "2"])?;
    let r = report(&reports, "adjunction")?;
    verified(r)?;
    let maps = all_maps(2);
    let mut triples = 0u64;
    for u in &maps {
        for v in &maps {
            let uv = pushout_product(u, v);
            for f in &maps {
                let left = arrow_hom_brute(&uv, f);
                let right = arrow_hom_brute(u, &pullback_hom(v, f));
                ensure(left == right, || format!("{left} != {right} at {u:?} {v:?} {f:?}"))?;
                triples += 1;
            }
        }
    }
    ensure(count(r, "cases") == triples, || format!("{} cases, oracle {triples}", r["cases"]))?;
    Ok(format!("{triples} triples, hom counts equal"))
}

fn c4() -> Outcome {
    let mut parts = Vec::new();
    for suite in ["squareford", "top-face"] {
        let reports = model_check(&[suite])?;
        let r = report(&reports, suite)?;
        verified(r)?;
        let mode = &r["mode"];
        ensure(mode["kind"] == "sampled" && mode["samples"] == 200 && mode["max_size"] == 4, || {
            format!("{suite} mode {mode}")
        })?;
        ensure(count(r, "cases") == 200, || format!("{suite}: {} cases", r["cases"]))?;
        parts.push(format!("{suite} 200 samples of size <= 4, seed {}", mode["seed"]));
    }
    Ok(parts.join("; "))
}

fn c5() -> Outcome {
    let reports = model_check(&["mono-pushout", "--max-size", "3"])?;
    let r = report(&reports, "mono-pushout")?;
    verified(r)?;
    let all = spans(3);
    let mut monos = 0u64;
    for (f, g) in all.iter().filter(|(f, _)| f.injective()) {
        ensure(mono_pushout_oracle(f, g), || format!("oracle fails at {f:?} {g:?}"))?;
        monos += 1;
    }
    ensure(count(r, "cases") == all.len() as u64, || format!("{} cases, oracle {}", r["cases"], all.len()))?;
    ensure(count(r, "instances") == monos, || format!("{} instances, oracle {monos}", r["instances"]))?;
    Ok(format!("{} spans, {monos} along a mono", all.len()))
}

fn c6() -> Outcome {
    let reports = model_check(&["orthogonality", "--max-size", "3"])?;
    for r in reports.values() {
        verified(r)?;
    }
    let maps = all_maps(3);
    let pairs = report(&reports, "orthogonality")?;
    ensure(count(pairs, "cases") == (maps.len() * maps.len()) as u64, || format!("{} cases", pairs["cases"]))?;
    let empty_to_point = Raw::new(0, 1, vec![]);
    let s0 = Raw::new(2, 1, vec![0, 0]);
    for f in &maps {
        ensure(orthogonal_brute(&empty_to_point, f) == f.bijective(), || format!("empty-to-point vs {f:?}"))?;
        ensure(orthogonal_brute(&s0, f) == f.injective(), || format!("s0 vs {f:?}"))?;
    }
    for name in ["complement-isos", "complement-monos"] {
        verified(report(&reports, name)?)?;
    }
    Ok(format!(
        "{} reports, {} pairs; right complements of empty-to-point and s0 are isos and monos",
        reports.len(),
        pairs["cases"]
    ))
}

fn c7() -> Outcome {
    let reports = model_check(&["locality", "--max-size", "3"])?;
    ensure(reports.len() >= 2, || format!("{} locality reports", reports.len()))?;
    let mut parts = Vec::new();
    for (name, r) in &reports {
        verified(r)?;
        parts.push(format!("{name} {} instances", r["instances"]));
    }
    Ok(parts.join(", "))
}

fn bounds_of(src: &str, map: &str) -> Result<Bounds, String> {
    let d = parse("table", src).map_err(|e| format!("{e:?}"))?;
    let id = d.map_id(map).ok_or("missing map")?;
    Ok(infer(&d, bmlab::conn::DEFAULT_CAP).bounds(id))
}

fn c8() -> Outcome {
    let start = Instant::now();
    let floor = |x: i64| x.max(-2);
    let conn_is = |b: Bounds, want: i64| b.conn == Level::Finite(floor(want)) || (want >= 64 && b.clamped);
    let range = -2i64..=6;
    let mut checked = 0;
    for m in range.clone() {
        for n in range.clone() {
            let bm = format!("obj Z X Y\nmap f : Z -> X\nmap g : Z -> Y\nP = pushout(f, g)\nh = gap(P)\nconn(f) >= {m}\nconn(g) >= {n}\n");
            let b = bounds_of(&bm, "h")?;
            ensure(conn_is(b, m + n), || format!("BM m={m} n={n}: {b:?}"))?;
            let pp =
                format!("obj A B C D\nmap u : A -> B\nmap v : C -> D\nw = pp(u, v)\nconn(u) >= {m}\nconn(v) >= {n}\n");
            let b = bounds_of(&pp, "w")?;
            ensure(conn_is(b, m + n + 2), || format!("PP m={m} n={n}: {b:?}"))?;
            let dual = format!("obj Y Z W\nmap k : Y -> W\nmap g : Z -> W\nQ = pullback(k, g)\nc = cogap(Q)\nconn(g) >= {m}\nconn(k) >= {n}\n");
            let b = bounds_of(&dual, "c")?;
            ensure(conn_is(b, m + n + 2), || format!("DUAL-BM m={m} n={n}: {b:?}"))?;
            checked += 3;
        }
        for k in -1i64..=6 {
            let src = format!("obj A B\nmap f : A -> B\ns = sphere({k})\nw = pp(f, s)\nconn(f) >= {m}\n");
            let b = bounds_of(&src, "w")?;
            ensure(conn_is(b, m + k + 1), || format!("PP-SPHERE m={m} k={k}: {b:?}"))?;
            checked += 1;
        }
        for p in range.clone() {
            let src = format!(
                "obj A B X Y\nmap u : A -> B\nmap f : X -> Y\nh = pbhom(u, f)\nconn(u) >= {m}\ntrunc(f) <= {p}\n"
            );
            let b = bounds_of(&src, "h")?;
            ensure(b.trunc == Some(floor(p - m - 2)), || format!("PBH p={p} m={m}: {b:?}"))?;
            checked += 1;
        }
    }
    for p in range.clone() {
        for k in -1i64..=6 {
            let src = format!("obj X Y\nmap f : X -> Y\ns = sphere({k})\nh = pbhom(s, f)\ntrunc(f) <= {p}\n");
            let b = bounds_of(&src, "h")?;
            ensure(b.trunc == Some(floor(p - k - 1)), || format!("PBH-SPHERE p={p} k={k}: {b:?}"))?;
            checked += 1;
        }
    }
    for n in 0i64..=6 {
        let src = format!("obj X\nS = pushout(X.term, X.term)\ngap1 = gap(S)\nconn(X.term) >= {n}\n");
        let b = bounds_of(&src, "gap1")?;
        ensure(b.conn == Level::Finite(2 * n), || format!("Freudenthal n={n}: {b:?}"))?;
        checked += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} table entries exact"))
}

/// `b` is at least as informative as `a`.
fn refines(a: &Bounds, b: &Bounds) -> bool {
    let trunc_ok = match (a.trunc, b.trunc) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => y <= x,
    };
    a.conn <= b.conn && trunc_ok
}

fn c9() -> Outcome {
    let cap = bmlab::conn::DEFAULT_CAP;
    let fixtures = valid_fixtures();
    for (name, src) in &fixtures {
        let program = parse_program(name, src).map_err(|e| format!("{name}: {e:?}"))?;
        let d = build(&program.statements).map_err(|e| format!("{name}: {e:?}"))?;
        let inf = infer(&d, cap);
        let table = inf.table();
        for seed in 0..20 {
            ensure(infer_shuffled(&d, cap, seed).table() == table, || format!("{name}: order {seed} differs"))?;
        }
        ensure(inf.firings[0] + inf.firings[1] <= firing_bound(&d, cap), || format!("{name}: {:?}", inf.firings))?;
        ensure(inf.replays(), || format!("{name}: steps do not replay"))?;
        // monotone: strengthen one map at a time
        for (i, m) in d.maps().iter().enumerate() {
            let mut more = program.statements.clone();
            if let Level::Finite(c) = table[i].conn {
                more.push(Statement::Conn { map: m.name.clone(), n: (c + 1).min(cap) });
            }
            let t = table[i].trunc.map_or(3, |t| (t - 1).max(-1));
            more.push(Statement::Trunc { map: m.name.clone(), n: t });
            let Ok(d2) = build(&more) else { continue };
            let after = infer(&d2, cap).table();
            ensure(table.iter().zip(&after).all(|(a, b)| refines(a, b)), || {
                format!("{name}: not monotone at {}", m.name)
            })?;
        }
        // idempotent: restating the result changes nothing
        let mut restated = program.statements.clone();
        for (m, b) in d.maps().iter().zip(&table) {
            if let Level::Finite(c) = b.conn {
                if d.annotation(d.map_id(&m.name).unwrap(), Kind::Conn).is_none() && c > -2 {
                    restated.push(Statement::Conn { map: m.name.clone(), n: c });
                }
            }
            // a noniso map proven invertible cannot be restated as such
            if let Some(t) = b.trunc.filter(|&t| t > -2 || !d.noniso().contains(&d.map_id(&m.name).unwrap())) {
                restated.push(Statement::Trunc { map: m.name.clone(), n: t });
            }
        }
        let again = build(&restated).map_err(|e| format!("{name}: {e:?}"))?;
        ensure(infer(&again, cap).table() == table, || format!("{name}: not idempotent"))?;
        ensure((0..d.maps().len()).all(|i| inf.bounds(MapId(i)) == table[i]), || format!("{name}: table mismatch"))?;
    }
    Ok(format!("{} fixtures, 20 orders each, monotone, idempotent, within the firing bound", fixtures.len()))
}

fn c10() -> Outcome {
    let (code, out, err) = run_cli(&["model-check", "little-bm", "--max-size", "3", "--format", "json"]);
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    let r: Value = serde_json::from_str(out.lines().next().ok_or("no output")?).map_err(|e| e.to_string())?;
    ensure(r["status"] == "exploratory-finding", || format!("status {}", r["status"]))?;
    let mut replayed = 0;
    for w in r["examples"].as_array().into_iter().flatten().chain(r["witness"].as_object().map(|_| &r["witness"])) {
        let w: Witness = serde_json::from_value(w.clone()).map_err(|e| e.to_string())?;
        replay(&w).map_err(|e| format!("{}: {e}", w.check))?;
        replayed += 1;
    }
    ensure(replayed > 0, || "no replayable witness".into())?;
    let finding = r["notes"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(Value::as_str)
        .find(|n| n.starts_with("finding"))
        .unwrap_or("no finding note");
    Ok(format!("{} spans, {replayed} witnesses replayed; {finding}", r["cases"]))
}

fn c11() -> Outcome {
    let cases = golden_cases();
    for (name, args) in &cases {
        let first = transcript(args);
        ensure(first == transcript(args), || format!("{name}: not deterministic"))?;
        let want =
            std::fs::read_to_string(golden_dir().join(format!("{name}.txt"))).map_err(|e| format!("{name}: {e}"))?;
        ensure(first == want, || format!("{name}: differs from the checked-in transcript"))?;
    }
    let fixtures = valid_fixtures();
    for (name, src) in &fixtures {
        let a = parse_program(name, src).map_err(|e| format!("{e:?}"))?.statements;
        let text = pretty(&a);
        let b = parse_program(name, &text).map_err(|e| format!("{e:?}"))?.statements;
        ensure(a == b && pretty(&b) == text, || format!("{name}: pretty round trip differs"))?;
    }
    ensure(fixture_dir().join("parse_error.bm").exists(), || "fixture missing".into())?;
    Ok(format!("{} transcripts byte-identical, {} fixtures round-trip", cases.len(), fixtures.len()))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 11] =
        [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9), (10, c10), (11, c11)];
    let mut failed = 0;
    for (n, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({detail}; {secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why}; {secs:.2}s)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
