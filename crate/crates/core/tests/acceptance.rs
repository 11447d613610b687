//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` are reported but do not fail the run; every
//! other failure exits non-zero.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use unmating::curve::CurveSpec;
use unmating::equator::{fold_report, Conclusion, MapContext, Outcome};
use unmating::families::{capture_parameters, full_catalog, lookup_curve, lookup_map, paper_curves, realization_catalog};
use unmating::map::{compose, postcritical_set, RationalMap};
use unmating::numeric::{chordal_distance, SpherePoint, ToleranceConfig, C64};
use unmating::render::{julia_proximity_check, DEPTH_COLOURS};
use unmating::semigroup::{census, closure, compositive_trick_check, find_generating_pair, named_map, verify_sa_generating};

/// Criteria currently expected to fail; see the project notes.
const KNOWN_RED: &[&str] = &["9b"];

const ROOT_TOL: f64 = 1e-10;
const SMALL_GEN_TOL: f64 = 1e-12;
const GRAPH_TOL: f64 = 1e-9;
const COMPOSITION_TOL: f64 = 1e-9;
const PROXIMITY_MIN: f64 = 0.99;
const CAPTURE_TIME: Duration = Duration::from_secs(1);
const VERDICT_SUITE_TIME: Duration = Duration::from_secs(60);
const SEMIGROUP_TIME: Duration = Duration::from_secs(30);
const RESOLUTION: usize = 512;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn cli(args: &[&str], out: &std::path::Path) -> std::result::Result<(i32, Value), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_unmating"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    let v = serde_json::from_slice(&o.stdout).map_err(|e| format!("{e}: {}", String::from_utf8_lossy(&o.stderr)))?;
    Ok((o.status.code().unwrap_or(-1), v))
}

fn parse_points(v: &Value) -> Vec<C64> {
    v.as_array().map_or(vec![], |a| a.iter().filter_map(|p| Some(C64::new(p[0].as_f64()?, p[1].as_f64()?))).collect())
}

/// Every expected value matched by a distinct computed value within `eps`.
fn match_all(found: &[C64], expected: &[C64], eps: f64) -> std::result::Result<f64, String> {
    ensure(found.len() == expected.len(), format!("{} values, expected {}", found.len(), expected.len()))?;
    let mut used = vec![false; found.len()];
    let mut worst: f64 = 0.0;
    for e in expected {
        let (j, d) = found
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, f)| (j, (f - e).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or("ran out of values")?;
        ensure(d < eps, format!("{e} missed by {d:.2e}"))?;
        used[j] = true;
        worst = worst.max(d);
    }
    Ok(worst)
}

fn conj_pair(re: f64, im: f64) -> [C64; 2] {
    [C64::new(re, im), C64::new(re, -im)]
}

fn criterion_1() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let (code, report) = cli(&["captures", "--generation", "4"], dir.path())?;
    let elapsed = start.elapsed();
    ensure(code == 0, format!("exit code {code}"))?;
    let found = parse_points(&report["result"]["parameters"]);
    let mut expected = vec![C64::new(1.36110308052864737763, 0.0)];
    expected.extend(conj_pair(1.31944845973567631118, 1.63317024091523765612));
    let worst = match_all(&found, &expected, ROOT_TOL)?;
    ensure(elapsed < CAPTURE_TIME, format!("took {elapsed:?}"))?;
    Ok(format!("3 roots, max |Δ| {worst:.1e}, {:.3} s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Check {
    let t = tol();
    let mut expected = vec![C64::new(1.29982357191516455242, 0.0)];
    expected.extend(conj_pair(1.65053336520007473230, 0.42354144690912219689));
    expected.extend(conj_pair(1.69955484884234299149, 1.50934766560440881835));
    let worst = match_all(&capture_parameters(5, &t).map_err(|e| e.to_string())?, &expected, ROOT_TOL)?;
    let two = match_all(&capture_parameters(2, &t).map_err(|e| e.to_string())?, &[C64::new(2.0, 0.0)], SMALL_GEN_TOL)?;
    let three = match_all(&capture_parameters(3, &t).map_err(|e| e.to_string())?, &[C64::new(1.5, 0.0)], SMALL_GEN_TOL)?;
    Ok(format!("generation 5 max |Δ| {worst:.1e}; generations 2, 3 off by {two:.1e}, {three:.1e}"))
}

fn criterion_3() -> Check {
    let t = tol();
    let catalog = full_catalog(&t).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for e in &catalog {
        let check = e.verify(&t).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(check.matches, format!("{}: {}", e.name, check.detail))?;
        ensure(check.max_point_error <= GRAPH_TOL, format!("{}: point error {:.1e}", e.name, check.max_point_error))?;
        // Landing on the expected successor, by direct evaluation.
        let g = &e.expected_graph;
        for (i, p) in g.points.iter().enumerate() {
            let image = e.map.evaluate(p).map_err(|err| err.to_string())?;
            let d = chordal_distance(&image, &g.points[g.successor[i]]);
            ensure(d <= GRAPH_TOL, format!("{}: {} lands {d:.1e} from {}", e.name, g.labels[i], g.labels[g.successor[i]]))?;
            worst = worst.max(d);
        }
    }
    Ok(format!("{} catalog graphs, worst landing {worst:.1e}", catalog.len()))
}

fn outcome_at(fig: &str, n: u32) -> std::result::Result<Outcome, String> {
    let t = tol();
    let c = lookup_curve(fig).map_err(|e| e.to_string())?;
    let r = lookup_map(&c.map_id, &t).map_err(|e| e.to_string())?.map;
    let curve = c.sample(RESOLUTION).map_err(|e| e.to_string())?;
    let ctx = MapContext::new(&r, &t).map_err(|e| e.to_string())?;
    Ok(ctx.classify(n, &curve).map_err(|e| format!("{fig} level {n}: {e}"))?.outcome)
}

fn criterion_4() -> Check {
    use Outcome::*;
    let start = Instant::now();
    let exact: &[(&str, u32, Outcome)] = &[
        ("fig9", 2, OREquator),
        ("fig9", 4, Equator),
        ("fig10", 1, Splits(2)),
        ("fig11", 2, OREquator),
        ("fig12", 2, OREquator),
        ("fig14", 2, OREquator),
        ("fig15", 1, Equator),
        ("fig16", 1, Splits(3)),
        ("fig17", 1, OREquator),
        ("fig18", 1, Equator),
        ("fig20", 1, OREquator),
        ("fig4", 1, NotIsotopic),
        ("fig4", 2, Equator),
        ("fig5", 1, Splits(2)),
        ("fig7", 1, NotIsotopic),
        ("fig7", 2, Equator),
    ];
    for (fig, n, want) in exact {
        let got = outcome_at(fig, *n)?;
        ensure(&got == want, format!("{fig} level {n}: {got:?}, expected {want:?}"))?;
    }
    for fig in ["fig19", "fig8"] {
        match outcome_at(fig, 1)? {
            Splits(k) if k >= 2 => {}
            other => return Err(format!("{fig}: {other:?}, expected Splits(>=2)")),
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < VERDICT_SUITE_TIME, format!("took {elapsed:?}"))?;
    Ok(format!("{} verdicts in {:.2} s", exact.len() + 2, elapsed.as_secs_f64()))
}

fn criterion_5() -> Check {
    let t = tol();
    let mut cases: Vec<(String, RationalMap, unmating::curve::JordanCurve)> = Vec::new();
    for c in paper_curves() {
        let r = lookup_map(&c.map_id, &t).map_err(|e| e.to_string())?.map;
        cases.push((c.id.clone(), r, c.sample(RESOLUTION).map_err(|e| e.to_string())?));
    }
    for (id, b) in [("omega-2", 1.0), ("omega-2:b=2", 2.0)] {
        let r = lookup_map(id, &t).map_err(|e| e.to_string())?.map;
        let circle = CurveSpec::circle(C64::new(0.0, 0.0), b).sample(RESOLUTION).map_err(|e| e.to_string())?;
        cases.push((format!("{id} circle"), r, circle));
    }
    let (mut or_cases, mut eq_cases) = (0, 0);
    let mut violations = Vec::new();
    for (name, r, curve) in &cases {
        let ctx = MapContext::new(r, &t).map_err(|e| e.to_string())?;
        for n in 1..=2 {
            let Ok(v) = ctx.classify(n, curve) else { continue };
            match v.outcome {
                Outcome::OREquator => or_cases += 1,
                Outcome::Equator => eq_cases += 1,
                _ => continue,
            }
            let doubled = ctx.classify(2 * n, curve).map(|w| w.outcome);
            if doubled.as_ref().ok() != Some(&Outcome::Equator) {
                violations.push(format!("{name}: {:?} at {n}, {doubled:?} at {}", v.outcome, 2 * n));
            }
        }
    }
    ensure(violations.is_empty(), violations.join("; "))?;
    ensure(or_cases > 0 && eq_cases > 0, "no instances exercised")?;
    Ok(format!("{or_cases} OR and {eq_cases} equator instances, 0 violations"))
}

fn criterion_6() -> Check {
    let t = tol();
    let fold = |id: &str, depth: u32| {
        let r = lookup_map(id, &t).map_err(|e| e.to_string())?.map;
        let injected: Vec<_> = paper_curves().into_iter().filter(|c| c.map_id == id).filter_map(|c| c.sample(RESOLUTION).ok()).collect();
        fold_report(id, &r, depth, &injected, &t).map_err(|e| e.to_string())
    };
    let a = fold("omega+2", 4)?;
    ensure(a.conclusion == Conclusion::MatingAtFold(4), format!("omega+2: {:?}", a.conclusion))?;
    let b = fold("capture:3/2", 2)?;
    ensure(b.conclusion == Conclusion::MatingAtFold(2), format!("capture:3/2: {:?}", b.conclusion))?;
    ensure(b.or_evidence.iter().all(|e| e.level != 1), "capture:3/2 has level-1 OR evidence")?;
    let c = fold("capture:2", 4)?;
    ensure(c.conclusion == Conclusion::NoEquatorFoundUpTo(4), format!("capture:2: {:?}", c.conclusion))?;
    for id in ["omega-2", "omega-2:b=2"] {
        let d = fold(id, 4)?;
        ensure(d.conclusion == Conclusion::MatingAtFold(2), format!("{id}: {:?}", d.conclusion))?;
        ensure(d.or_evidence.iter().any(|e| e.level == 1), format!("{id}: no level-1 OR evidence"))?;
    }
    Ok("MatingAtFold(4), MatingAtFold(2), NoEquatorFoundUpTo(4), OR at 1 then MatingAtFold(2) for b = 1, 2".into())
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let c = census();
    ensure((c.total, c.bijections, c.non_bijections) == (256, 24, 232), "totals")?;
    let counts = |names: &[&str]| names.iter().map(|n| c.count(n)).collect::<Vec<_>>();
    ensure(counts(&["𝔓|", "𝔓||A", "𝔓||B", "𝔓|||", "𝔓||||"]) == [6, 8, 3, 6, 1], "periodic series")?;
    ensure(counts(&["𝔖|A", "𝔖|B", "𝔖|C", "𝔖|D", "𝔖|E", "𝔖|F", "𝔖|G", "𝔖|H"]) == [24, 24, 12, 12, 24, 24, 12, 4], "one-orbit series")?;
    ensure(counts(&["𝔖||A", "𝔖||B", "𝔖||C", "𝔖||D", "𝔖||E"]) == [24, 24, 12, 12, 12], "two-orbit series")?;
    ensure(c.count("𝔖|||") == 12, "three-orbit series")?;
    let g = |n: &str| named_map(n).map_err(|e| e.to_string());
    let perms = closure(&[g("P|1")?, g("P||A1")?]).map_err(|e| e.to_string())?;
    ensure(perms.size == 24, format!("periodic closure {}", perms.size))?;
    let all = closure(&[g("P|1")?, g("P||A1")?, g("S|A1")?]).map_err(|e| e.to_string())?;
    ensure(all.size == 256, format!("full closure {}", all.size))?;
    let sa = verify_sa_generating().map_err(|e| e.to_string())?;
    ensure(sa.chosen.len() == 12 && sa.closure.size == 232, "A-series generating set")?;
    ensure(find_generating_pair().is_none(), "a generating pair exists")?;
    let elapsed = start.elapsed();
    ensure(elapsed < SEMIGROUP_TIME, format!("took {elapsed:?}"))?;
    Ok(format!("census, closures 24/256/232, no pair; {:.2} s", elapsed.as_secs_f64()))
}

fn same_set(a: &[SpherePoint], b: &[SpherePoint], eps: f64) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| chordal_distance(p, q) <= eps)) && b.iter().all(|q| a.iter().any(|p| chordal_distance(p, q) <= eps))
}

fn criterion_8() -> Check {
    let t = tol();
    let catalog = realization_catalog().map_err(|e| e.to_string())?;
    let ea = &catalog.iter().find(|e| e.name == "realize:Ea").ok_or("realize:Ea missing")?.map;
    let report = compositive_trick_check(ea, ea, &t).map_err(|e| e.to_string())?;
    let three = [SpherePoint::from_re_im(0.0, 0.0), SpherePoint::from_re_im(1.0, 0.0), SpherePoint::INFINITY];
    ensure(same_set(&report.p12, &three, COMPOSITION_TOL), "P(Ea∘Ea) is not {0, 1, ∞}")?;
    // Second route: the expanded composition.
    let expanded = postcritical_set(&compose(ea, ea).map_err(|e| e.to_string())?, &t).map_err(|e| e.to_string())?.0.points;
    ensure(same_set(&expanded, &three, COMPOSITION_TOL), "expanded Ea∘Ea disagrees")?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut pairs, mut draws) = (0, 0);
    while pairs < 20 && draws < 1000 {
        draws += 1;
        let (i, j) = (rng.gen_range(0..catalog.len()), rng.gen_range(0..catalog.len()));
        let r = compositive_trick_check(&catalog[i].map, &catalog[j].map, &t).map_err(|e| e.to_string())?;
        if !r.lemma_hypothesis {
            continue;
        }
        ensure(r.containment && r.consistent(), format!("{} ∘ {} breaks containment", catalog[i].name, catalog[j].name))?;
        pairs += 1;
    }
    ensure(pairs == 20, format!("only {pairs} admissible pairs in {draws} draws"))?;
    Ok(format!("P(Ea²) = {{0, 1, ∞}} by both routes; 20 pairs contained ({draws} draws)"))
}

fn criterion_9a() -> Check {
    let t = tol();
    let square = RationalMap::from_real(&[0.0, 0.0, 1.0], &[1.0]).map_err(|e| e.to_string())?;
    let equator = CurveSpec::circle(C64::new(0.0, 0.0), 1.5).sample(RESOLUTION).map_err(|e| e.to_string())?;
    let f = julia_proximity_check(&square, &equator, 6, &t).map_err(|e| e.to_string())?.fraction;
    ensure(f >= PROXIMITY_MIN, format!("fraction {f:.4}"))?;
    Ok(format!("z^2, depth 6: fraction {f:.4}"))
}

fn criterion_9b() -> Check {
    let t = tol();
    let c = lookup_curve("fig9").map_err(|e| e.to_string())?;
    let r = lookup_map(&c.map_id, &t).map_err(|e| e.to_string())?.map;
    let f = julia_proximity_check(&r, &c.sample(RESOLUTION).map_err(|e| e.to_string())?, 8, &t).map_err(|e| e.to_string())?.fraction;
    ensure(f >= PROXIMITY_MIN, format!("fraction {f:.4} < {PROXIMITY_MIN}"))?;
    Ok(format!("omega+2 type V, depth 8: fraction {f:.4}"))
}

fn criterion_10() -> Check {
    let (d1, d2) = (tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?);
    let expected: &[(&str, &str, &[usize])] = &[
        ("fig9", "omega+2_fig9", &[1, 1, 1, 1, 1]),
        ("fig15", "omega-3_fig15", &[1, 1, 1]),
        ("fig17", "omega-3_fig17", &[1, 1, 1]),
        ("fig21", "omega+3_fig21", &[]),
    ];
    for (tag, stem, components) in expected {
        let mut svgs = Vec::new();
        for d in [&d1, &d2] {
            let (code, report) = cli(&["figure", tag, "--pixels", "200"], d.path())?;
            ensure(code == 0, format!("{tag}: exit code {code}"))?;
            let meta = &report["result"]["metadata"];
            let layers = meta["layers"].as_array().ok_or("no layers")?;
            let got: Vec<usize> = layers.iter().map(|l| l["components"].as_u64().unwrap_or(0) as usize).collect();
            ensure(got == *components, format!("{tag}: components {got:?}"))?;
            for (i, l) in layers.iter().enumerate() {
                let [r, g, b] = DEPTH_COLOURS[i.min(DEPTH_COLOURS.len() - 1)];
                ensure(l["depth"] == i as u64 && l["colour"] == format!("#{r:02x}{g:02x}{b:02x}"), format!("{tag}: layer {i} colour"))?;
            }
            if !components.is_empty() {
                ensure(meta["extra"]["inside_matches"] == true, format!("{tag}: winding sides differ from the expected inside set"))?;
            } else {
                ensure(meta["extra"]["basins"]["cycle_points"].as_array().is_some_and(|a| a.len() == 4), format!("{tag}: basins"))?;
            }
            svgs.push(std::fs::read(d.path().join(format!("{stem}.svg"))).map_err(|e| e.to_string())?);
            ensure(d.path().join(format!("{stem}.png")).exists(), format!("{tag}: no raster"))?;
        }
        ensure(svgs[0] == svgs[1], format!("{tag}: vector layer differs between runs"))?;
    }
    Ok("fig9, fig15, fig17, fig21 metadata match; vector layers byte-stable".into())
}

fn main() {
    let criteria: &[(&str, &str, fn() -> Check)] = &[
        ("1", "capture roots, generation 4", criterion_1),
        ("2", "capture roots, generations 2, 3, 5", criterion_2),
        ("3", "catalog orbit graphs", criterion_3),
        ("4", "curve verdict regression", criterion_4),
        ("5", "doubled-level property suite", criterion_5),
        ("6", "fold reports", criterion_6),
        ("7", "semigroup census and closures", criterion_7),
        ("8", "postcritical sets of compositions", criterion_8),
        ("9a", "Julia proximity, z^2", criterion_9a),
        ("9b", "Julia proximity, omega+2", criterion_9b),
        ("10", "figure reproduction", criterion_10),
    ];
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let known = KNOWN_RED.contains(id);
        match result {
            Ok(detail) => println!("PASS {id} {name}: {detail}{}", if known { " (listed as known red)" } else { "" }),
            Err(detail) => {
                println!("FAIL {id} {name}: {detail}{}", if known { " (known red)" } else { "" });
                if !known {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}
