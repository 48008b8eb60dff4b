//! End-to-end acceptance checks, one line per criterion with its runtime
//! against a fixed limit. Runs without the test harness, sequentially, so
//! that timings are not distorted by other tests sharing the machine.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hammock::category::{check_functor, Functor};
use hammock::dsl::load_model;
use hammock::fincat::{free_acyclic, FinCat, MorId, RawArrow, RawGraph};
use hammock::fixtures;
use hammock::hammock::{
    induced_postcompose, induced_precompose, pi0_tower, weq_reverse, HammockStage, TowerVerdict,
    ZigZag,
};
use hammock::homcert::{Direction, WireContext};
use hammock::oracle::{localize_hom, Saturation};
use hammock::relcat::RelCat;
use hammock::theorems::hoalg::hoalg;
use hammock::theorems::lemma53::{lemma53_part1, lemma53_part2};
use hammock::theorems::rmk33::{inclusions, rmk33_on};
use hammock::theorems::thm31::thm31;
use hammock::theorems::thm32::{check_displayed, thm32};
use hammock::theorems::{Pi0Method, StageWitnessFamily, Verdict, WireFamily};

const DEFAULT_STAGE: usize = 7;
const DEFAULT_BOUND: usize = 8;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn obj(r: &RelCat, name: &str) -> hammock::fincat::ObjId {
    r.cat().object(name).expect("fixture object")
}

fn pairs(r: &RelCat) -> Vec<(hammock::fincat::ObjId, hammock::fincat::ObjId)> {
    let c = r.cat();
    c.object_ids()
        .flat_map(|x| c.object_ids().map(move |y| (x, y)))
        .collect()
}

fn tower_and_oracle() -> Check {
    let mut checked = 0;
    for rel in [fixtures::pt(), fixtures::arr(), fixtures::weq(), fixtures::iso()] {
        let rel = Arc::new(rel);
        let c = rel.cat();
        for (x, y) in pairs(&rel) {
            let at = || format!("{}({},{})", rel.name(), c.obj_name(x), c.obj_name(y));
            let t = pi0_tower(&rel, x, y, DEFAULT_STAGE, false).map_err(|e| e.to_string())?;
            let (_, h) = localize_hom(&rel, x, y, DEFAULT_BOUND);
            ensure(t.verdict == TowerVerdict::Stable, || format!("{}: tower {}", at(), t.verdict))?;
            ensure(h.verdict == Saturation::Saturated, || format!("{}: oracle {}", at(), h.verdict))?;
            ensure(t.value == Some(h.classes.len()), || {
                format!("{}: tower {:?} vs oracle {}", at(), t.value, h.classes.len())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} endpoint pairs agree"))
}

fn honesty() -> Check {
    let rel = Arc::new(fixtures::para());
    for (x, y) in [("B", "A"), ("A", "A")] {
        let (a, b) = (obj(&rel, x), obj(&rel, y));
        let t = pi0_tower(&rel, a, b, DEFAULT_STAGE, false).map_err(|e| e.to_string())?;
        let (_, h) = localize_hom(&rel, a, b, DEFAULT_BOUND);
        ensure(t.verdict == TowerVerdict::Inconclusive && t.value.is_none(), || {
            format!("PARA({x},{y}): tower {}", t.verdict)
        })?;
        ensure(h.verdict == Saturation::Unknown, || {
            format!("PARA({x},{y}): oracle {}", h.verdict)
        })?;
    }
    Ok("PARA(B,A), PARA(A,A): INCONCLUSIVE and UNKNOWN".into())
}

fn cylinder_family() -> Check {
    let m = fixtures::cylfix_spec();
    let h = m.homotopy("H").expect("shipped homotopy");
    let a = obj(&m.rel, "A");
    let family = thm31(&m.rel, h, a, DEFAULT_STAGE).map_err(|e| e.to_string())?;
    let report = family.verify();
    ensure(report.passed(), || report.first_error().unwrap_or_default())?;
    for s in &report.stages {
        ensure(s.shape == [Direction::Forward, Direction::Backward], || {
            format!("stage {} has shape {:?}", s.stage, s.shape)
        })?;
    }
    ensure(report.stages.len() == 4, || "missing stages".into())?;
    let text = serde_json::to_string(&family.to_wire()).map_err(|e| e.to_string())?;
    let wire: WireFamily = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let fresh = Arc::new(fixtures::cylfix());
    let ctx = WireContext::new([fresh]);
    let back = StageWitnessFamily::from_wire(&ctx, &wire)?;
    let again = back.verify();
    ensure(again.passed(), || {
        format!("re-verification: {}", again.first_error().unwrap_or_default())
    })?;
    let zigzags: usize = report.stages.iter().map(|s| s.zigzags).sum();
    Ok(format!(
        "n = 1..7, {zigzags} zig-zags, {} KiB re-verified from JSON",
        text.len() / 1024
    ))
}

fn natural_families() -> Check {
    let m = fixtures::pt_arr_spec();
    let (pt, arr) = (m.category("PT").unwrap(), m.category("ARR").unwrap());
    let eta = m.nat("eta").unwrap();
    let p = obj(pt, "P");
    let mut stages = 0;
    let family = thm32(pt, arr, eta, p, p, DEFAULT_STAGE).map_err(|e| e.to_string())?;
    let report = family.verify();
    ensure(report.passed(), || report.first_error().unwrap_or_default())?;
    for w in &family.stages {
        check_displayed(w, pt, arr, eta)?;
        stages += 1;
    }
    let m = fixtures::idemfix_spec();
    let ell = m.nat("ell").unwrap();
    for (x, y) in pairs(&m.rel) {
        let family = thm32(&m.rel, &m.rel, ell, x, y, DEFAULT_STAGE).map_err(|e| e.to_string())?;
        let report = family.verify();
        ensure(report.passed(), || report.first_error().unwrap_or_default())?;
        for w in &family.stages {
            check_displayed(w, &m.rel, &m.rel, ell)?;
            stages += 1;
        }
    }
    Ok(format!("{stages} stage certificates match the displayed composites"))
}

fn inclusions_homotopic() -> Check {
    let mut certs = 0;
    let mut seen = BTreeSet::new();
    for (_, text) in fixtures::ALL {
        let m = load_model(text).map_err(|e| e.to_string())?;
        for rel in &m.categories {
            if !seen.insert(rel.name().to_string()) {
                continue;
            }
            for (x, y) in pairs(rel) {
                for n in [1, 3, 5] {
                    let stage = HammockStage::new(rel, x, y, n).map_err(|e| e.to_string())?;
                    let incl = inclusions(&stage).map_err(|e| e.to_string())?;
                    for i in 0..=n {
                        for j in 0..=n {
                            let cert = rmk33_on(&stage, i, j).map_err(|e| e.to_string())?;
                            ensure(cert.len() == i.abs_diff(j), || "wrong length".into())?;
                            ensure(i != j || cert.is_empty(), || "i = j is not empty".into())?;
                            cert.verify_between(&incl[i], &incl[j]).map_err(|e| {
                                format!("{} ({i},{j}): {e}", stage.label())
                            })?;
                            certs += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{certs} certificates over {} categories", seen.len()))
}

fn idempotent_equivalences() -> Check {
    let m = fixtures::idemfix_spec();
    let d = &m.idempotents["I"];
    let mut families = 0;
    for (x, y) in pairs(&m.rel) {
        let p1 = lemma53_part1(&m.rel, d, x, y, 5).map_err(|e| e.to_string())?;
        ensure(p1.h.len() == 3, || "h missing".into())?;
        for f in [&p1.first, &p1.second] {
            let r = f.verify();
            ensure(r.passed(), || r.first_error().unwrap_or_default())?;
            families += 1;
        }
    }
    let x = obj(&m.rel, "X");
    let p2 = lemma53_part2(&m.rel, d, x, x, 5, DEFAULT_BOUND).map_err(|e| e.to_string())?;
    ensure(p2.pi0.method == Some(Pi0Method::Oracle), || "oracle did not saturate".into())?;
    ensure(p2.pi0.bijective == Some(true), || "not bijective".into())?;
    let (s, t) = (p2.pi0.source_classes.len(), p2.pi0.target_classes.len());
    ensure((s, t) == (1, 1), || format!("{s} <-> {t}"))?;
    ensure(p2.verdict == Verdict::Pass, || format!("part 2 {}", p2.verdict))?;
    Ok(format!("{families} families verified; pi0 {s} <-> {t} SATURATED"))
}

fn algebra_retract() -> Check {
    let m = fixtures::idemfix_spec();
    let alg = &m.algebras["A"];
    let w = m.rel.cat().morphism("w").unwrap();
    let r = hoalg(&m.rel, alg, w, DEFAULT_STAGE).map_err(|e| e.to_string())?;
    for k in &r.components {
        ensure(k.verdict == Verdict::Pass, || format!("component {}", k.object))?;
    }
    for s in &r.compatibility {
        ensure(s.error.is_none(), || format!("{} at {}: {:?}", s.name, s.stage, s.error))?;
    }
    ensure(r.components.len() == 2 && r.verdict == Verdict::Pass, || "verdict".into())?;
    Ok(format!(
        "components {} PASS, {} compatibility squares commute",
        r.components.iter().map(|k| k.object.as_str()).collect::<Vec<_>>().join(","),
        r.compatibility.len()
    ))
}

/// A random acyclic multigraph with at most four vertices whose free
/// category has at most twelve morphisms.
fn random_free(rng: &mut ChaCha8Rng, k: usize) -> FinCat {
    loop {
        let n = rng.gen_range(1..=4);
        let vertices: Vec<String> = (0..n).map(|i| format!("O{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for _ in 0..rng.gen_range(0..=2) {
                    edges.push(RawArrow {
                        name: format!("e{}", edges.len()),
                        source: vertices[i].clone(),
                        target: vertices[j].clone(),
                    });
                }
            }
        }
        let graph = RawGraph {
            name: format!("R{k}"),
            vertices,
            edges,
        };
        let cat = free_acyclic(&graph).expect("acyclic by construction");
        if cat.morphism_count() <= 12 {
            return cat;
        }
    }
}

/// The category written out in table mode with a random composition-closed
/// class of weak equivalences.
fn table_text(rng: &mut ChaCha8Rng, cat: &FinCat) -> String {
    let raw = cat.to_raw();
    let rename = |name: &str| -> String {
        let k = raw.arrows.iter().position(|a| a.name == name);
        k.map_or_else(|| name.to_string(), |k| format!("m{k}"))
    };
    let mut weq: BTreeSet<MorId> = cat
        .morphism_ids()
        .filter(|m| !cat.is_id(*m) && rng.gen_bool(0.3))
        .collect();
    loop {
        let mut grown = weq.clone();
        for &f in &weq {
            for &g in &weq {
                if let Some(h) = cat.comp(g, f) {
                    grown.insert(h);
                }
            }
        }
        if grown == weq {
            break;
        }
        weq = grown;
    }
    let mut s = format!("category {}\nmode table\nobject {}\n", raw.name, raw.objects.join(" "));
    for a in &raw.arrows {
        s.push_str(&format!("arrow {} : {} -> {}\n", rename(&a.name), a.source, a.target));
    }
    for p in &raw.composites {
        s.push_str(&format!(
            "comp {} . {} = {}\n",
            rename(&p.outer),
            rename(&p.inner),
            rename(&p.result)
        ));
    }
    if !weq.is_empty() {
        let names: Vec<String> = weq.iter().map(|m| rename(cat.mor_name(*m))).collect();
        s.push_str(&format!("weq {}\n", names.join(" ")));
    }
    s
}

fn laws_on(rng: &mut ChaCha8Rng, k: usize) -> Result<usize, String> {
    let free = random_free(rng, k);
    let text = table_text(rng, &free);
    let m = load_model(&text).map_err(|e| format!("instance {k}: {e}\n{text}"))?;
    let rel = m.rel.clone();
    let c = rel.cat();
    ensure(c.morphism_count() == free.morphism_count(), || format!("instance {k}: size"))?;
    let objs: Vec<_> = c.object_ids().collect();
    let mut checks = 0;
    let fail = |what: &str, e: String| format!("instance {k}: {what}: {e}\n{text}");
    for f in c.morphism_ids() {
        let y = *objs.choose(rng).unwrap();
        let x = *objs.choose(rng).unwrap();
        let n = if rng.gen_bool(0.25) { 3 } else { 1 };
        let mut functors = vec![
            induced_precompose(&rel, f, y, n).map_err(|e| fail("pre", e.to_string()))?,
            induced_postcompose(&rel, f, x, n).map_err(|e| fail("post", e.to_string()))?,
        ];
        if rel.is_weq(f) {
            functors.push(weq_reverse(&rel, f, y, n).map_err(|e| fail("reverse", e.to_string()))?);
        }
        for g in &functors {
            check_functor(g).map_err(|e| fail(&g.label(), e.to_string()))?;
            checks += 1;
        }
    }
    let stages: Vec<HammockStage> = objs
        .iter()
        .flat_map(|&a| objs.iter().map(move |&b| (a, b)))
        .map(|(a, b)| HammockStage::new(&rel, a, b, 1).expect("odd stage"))
        .collect();
    let some = |rng: &mut ChaCha8Rng, from: Option<hammock::fincat::ObjId>| -> Option<ZigZag> {
        let pool: Vec<ZigZag> = stages
            .iter()
            .filter(|s| from.is_none_or(|o| s.from() == o))
            .flat_map(|s| s.zigzags().iter().cloned().collect::<Vec<_>>())
            .collect();
        pool.choose(rng).cloned()
    };
    for _ in 0..4 {
        let Some(u) = some(rng, None) else { break };
        let Some(v) = some(rng, Some(u.end(c))) else { continue };
        let Some(w) = some(rng, Some(v.end(c))) else { continue };
        let cat = |a: &ZigZag, b: &ZigZag| a.concat(c, b).map_err(|e| fail("concat", e.to_string()));
        let left = cat(&cat(&u, &v)?, &w)?;
        let right = cat(&u, &cat(&v, &w)?)?;
        ensure(left == right, || fail("associativity", u.show(c)))?;
        let (i0, i1) = (ZigZag::identity(c, u.start(c), 1), ZigZag::identity(c, u.end(c), 1));
        ensure(cat(&i0, &u)? == u && cat(&u, &i1)? == u, || fail("unit", u.show(c)))?;
        checks += 2;
    }
    for s in stages.iter().filter(|s| !s.zigzags().is_empty()).take(4) {
        let s3 = HammockStage::new(&rel, s.from(), s.to(), 3).expect("odd stage");
        for l in s.ladders().iter().chain(s3.ladders().iter()) {
            l.check(c).map_err(|e| fail("ladder", e.to_string()))?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn law_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checks = 0;
    for k in 0..1000 {
        checks += laws_on(&mut rng, k)?;
    }
    Ok(format!("1000 instances, {checks} checks, 0 violations"))
}

struct Golden {
    name: &'static str,
    args: &'static [&'static str],
    code: i32,
}

const GOLDEN: &[Golden] = &[
    Golden { name: "validate_weq", args: &["validate", "@weq.spec", "--emit", "json"], code: 0 },
    Golden { name: "validate_chain", args: &["validate", "@chain.spec", "--emit", "json"], code: 1 },
    Golden { name: "hom_weq", args: &["hom", "@weq.spec", "--from", "X", "--to", "X", "--stage", "3", "--emit", "json"], code: 0 },
    Golden { name: "hom_weq_dot", args: &["hom", "@weq.spec", "--from", "X", "--to", "X", "--stage", "3", "--emit", "dot"], code: 0 },
    Golden { name: "pi0_weq", args: &["pi0", "@weq.spec", "--from", "X", "--to", "X", "--max-stage", "5", "--emit", "json"], code: 0 },
    Golden { name: "pi0_para", args: &["pi0", "@para.spec", "--from", "A", "--to", "A", "--max-stage", "5", "--emit", "json"], code: 2 },
    Golden { name: "oracle_arr", args: &["oracle", "@arr.spec", "--from", "X", "--to", "Y", "--bound", "6", "--emit", "json"], code: 0 },
    Golden { name: "oracle_para", args: &["oracle", "@para.spec", "--from", "A", "--to", "A", "--bound", "6", "--emit", "json"], code: 2 },
    Golden { name: "oracle_para_human", args: &["oracle", "@para.spec", "--from", "A", "--to", "A", "--bound", "6"], code: 2 },
    Golden { name: "thm31_cylfix", args: &["verify", "thm31", "@cylfix.spec", "--object", "A", "--max-stage", "5", "--emit", "json"], code: 0 },
    Golden { name: "thm32_pt_arr", args: &["verify", "thm32", "@pt_arr.spec", "--x", "P", "--y", "P", "--max-stage", "5", "--emit", "json"], code: 0 },
    Golden { name: "rmk33_arr", args: &["verify", "rmk33", "@arr.spec", "--x", "X", "--y", "Y", "--max-stage", "3", "--pos-i", "1", "--pos-j", "2", "--emit", "json"], code: 0 },
    Golden { name: "lemma53_idemfix", args: &["verify", "lemma53", "@idemfix.spec", "--x", "X", "--y", "X", "--max-stage", "5", "--emit", "json"], code: 0 },
    Golden { name: "hoalg_idemfix", args: &["verify", "hoalg", "@idemfix.spec", "--map", "w", "--max-stage", "5", "--emit", "json"], code: 0 },
    Golden { name: "prop52_idemfix", args: &["verify", "prop52", "@idemfix.spec", "--map", "w", "--object", "X", "--max-stage", "5", "--emit", "json"], code: 0 },
    Golden { name: "export_dot_weq", args: &["export-dot", "@weq.spec", "--from", "X", "--to", "X", "--stage", "3", "-o", "%out", "--emit", "json"], code: 0 },
];

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run_bin(args: &[String]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hammock"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("killed by a signal")?;
    Ok((code, String::from_utf8(out.stdout).map_err(|e| e.to_string())?))
}

/// Compares with the stored file, or rewrites it when `HAMMOCK_BLESS` is set.
fn compare(path: &Path, found: &str) -> Result<(), String> {
    if std::env::var_os("HAMMOCK_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        return std::fs::write(path, found).map_err(|e| e.to_string());
    }
    let expected = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ensure(expected == found, || format!("{} differs", path.display()))
}

fn cli_contract() -> Check {
    let golden = manifest_dir().join("tests/golden");
    let scratch = std::env::temp_dir().join(format!("hammock-golden-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).map_err(|e| e.to_string())?;
    for g in GOLDEN {
        let out_file = scratch.join(format!("{}.dot", g.name));
        let args: Vec<String> = g
            .args
            .iter()
            .map(|a| match a.strip_prefix('@') {
                Some(f) => manifest_dir().join("fixtures").join(f).display().to_string(),
                None if *a == "%out" => out_file.display().to_string(),
                None => a.to_string(),
            })
            .collect();
        let (code, stdout) = run_bin(&args)?;
        ensure(code == g.code, || format!("{}: exit {code}, expected {}", g.name, g.code))?;
        let ext = if g.name.ends_with("_dot") {
            "dot"
        } else if g.name.ends_with("_human") {
            "txt"
        } else {
            "json"
        };
        compare(&golden.join(format!("{}.{ext}", g.name)), &stdout)?;
        if out_file.exists() {
            let dot = std::fs::read_to_string(&out_file).map_err(|e| e.to_string())?;
            compare(&golden.join(format!("{}.dot", g.name)), &dot)?;
        }
    }
    let _ = std::fs::remove_dir_all(&scratch);
    let fixture = |f: &str| manifest_dir().join("fixtures").join(f).display().to_string();
    let errors: [Vec<String>; 4] = [
        vec!["validate".into(), "--no-such-flag".into()],
        vec!["validate".into(), fixture("missing.spec")],
        vec!["oracle".into(), fixture("weq.spec"), "--from".into(), "X".into(), "--to".into(), "Q".into()],
        vec!["verify".into(), "hoalg".into(), fixture("cylfix.spec"), "--map".into(), "f".into()],
    ];
    for args in &errors {
        let (code, _) = run_bin(args)?;
        ensure(code == 3, || format!("{args:?}: exit {code}, expected 3"))?;
    }
    Ok(format!("{} golden reports, {} input errors", GOLDEN.len(), errors.len()))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "hammock/oracle agreement", limit: Duration::from_secs(10), run: tower_and_oracle },
    Criterion { id: 2, name: "honesty on non-stabilization", limit: Duration::from_secs(10), run: honesty },
    Criterion { id: 3, name: "cylinder homotopy family", limit: Duration::from_secs(30), run: cylinder_family },
    Criterion { id: 4, name: "natural transformation families", limit: Duration::from_secs(30), run: natural_families },
    Criterion { id: 5, name: "inclusions homotopic", limit: Duration::from_secs(30), run: inclusions_homotopic },
    Criterion { id: 6, name: "idempotent equivalences", limit: Duration::from_secs(30), run: idempotent_equivalences },
    Criterion { id: 7, name: "algebra retract", limit: Duration::from_secs(30), run: algebra_retract },
    Criterion { id: 8, name: "law suites", limit: Duration::from_secs(120), run: law_suites },
    Criterion { id: 9, name: "CLI contract", limit: Duration::from_secs(10), run: cli_contract },
];

fn main() {
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let elapsed = start.elapsed();
        let within = elapsed <= c.limit;
        let (status, detail) = match (&outcome, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over the time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!(
            "criterion {} {status} {} ({:.2}s of {}s): {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        if status == "FAIL" {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
