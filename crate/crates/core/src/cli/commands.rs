use super::{sanitize, Command, RunConfig, SemigroupCommand};
use crate::curve::{lift_iterate, CurveSpec, JordanCurve, LiftOptions};
use crate::equator::{enumerate_bipartitions, fold_report, partition_dynamics, Conclusion, MapContext, Outcome as Verdict};
use crate::error::{Error, Result};
use crate::families::{capture_parameters, capture_polynomial, full_catalog, lookup_curve, lookup_map, paper_curves, realization_catalog, PaperCurve};
use crate::map::{critical_points, postcritical_set, PostcriticalSet, RationalMap};
use crate::numeric::{chordal_distance, SpherePoint, ToleranceConfig};
use crate::render::{basin_render, overlay_figure, CurveLayer, RenderConfig};
use crate::semigroup::{census, closure, compositive_trick_check, find_generating_pair, named_map, parse_generators, verify_sa_generating};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Result of a command that ran to completion.
#[derive(Clone, Debug)]
pub struct Outcome {
    /// False for a valid but negative answer, such as a split preimage.
    pub positive: bool,
    pub result: Value,
}

fn positive(result: Value) -> Result<Outcome> {
    Ok(Outcome { positive: true, result })
}

/// `"inf"` or `[re, im]`.
pub(crate) fn point_json(p: &SpherePoint) -> Value {
    match p.affine() {
        Some(z) => json!([z.re, z.im]),
        None => json!("inf"),
    }
}

fn points_json(ps: &[SpherePoint]) -> Value {
    Value::Array(ps.iter().map(point_json).collect())
}

struct ResolvedMap {
    id: String,
    map: RationalMap,
}

fn resolve_map(sel: &str, tol: &ToleranceConfig) -> Result<ResolvedMap> {
    if sel.trim_start().starts_with('{') {
        let map: RationalMap = serde_json::from_str(sel).map_err(|e| Error::Invalid(format!("inline map JSON: {e}")))?;
        return Ok(ResolvedMap { id: "inline".into(), map });
    }
    let entry = lookup_map(sel, tol)?;
    Ok(ResolvedMap { id: entry.name, map: entry.map })
}

struct ResolvedCurve {
    id: String,
    spec: CurveSpec,
    paper: Option<PaperCurve>,
}

fn resolve_curve(sel: &str) -> Result<ResolvedCurve> {
    if sel.trim_start().starts_with('{') {
        let spec: CurveSpec = serde_json::from_str(sel).map_err(|e| Error::Invalid(format!("inline curve JSON: {e}")))?;
        return Ok(ResolvedCurve { id: "inline".into(), spec, paper: None });
    }
    let c = lookup_curve(sel)?;
    Ok(ResolvedCurve { id: c.id.clone(), spec: c.spec.clone(), paper: Some(c) })
}

/// The map named by `--map`, or else the map the curve was drawn for.
fn map_for_curve(map: &Option<String>, curve: &ResolvedCurve, tol: &ToleranceConfig) -> Result<ResolvedMap> {
    match (map, &curve.paper) {
        (Some(m), _) => resolve_map(m, tol),
        (None, Some(p)) => resolve_map(&p.map_id, tol),
        (None, None) => Err(Error::Invalid("an inline curve needs --map".into())),
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let tol = &cfg.tolerance;
    match &cfg.command {
        Command::Orbits { map } => orbits(map, tol),
        Command::Partitions { map, depth } => partitions(map, *depth, tol),
        Command::Lift { map, curve, depth } => lift(map, curve, *depth, cfg),
        Command::Classify { map, curve, level } => classify(map, curve, *level, cfg),
        Command::Fold { map, depth } => fold(map, *depth, cfg),
        Command::Captures { generation } => captures(*generation, tol),
        Command::Semigroup { action } => semigroup(action),
        Command::RealizeCheck { pairs } => realize_check(*pairs, cfg),
        Command::Figure { tag, pixels } => figure(tag, *pixels, cfg),
    }
}

fn set_json(set: &PostcriticalSet, successor: &[usize]) -> Value {
    json!({ "points": points_json(&set.points), "successor": successor })
}

fn orbits(sel: &str, tol: &ToleranceConfig) -> Result<Outcome> {
    let m = resolve_map(sel, tol)?;
    let (set, graph) = postcritical_set(&m.map, tol)?;
    let crit: Vec<Value> = critical_points(&m.map, tol)?
        .iter()
        .map(|c| json!({ "point": point_json(&c.point), "multiplicity": c.multiplicity }))
        .collect();
    let check = if m.id == "inline" { None } else { Some(lookup_map(&m.id, tol)?.verify(tol)?) };
    let ok = check.as_ref().map_or(true, |c| c.matches);
    Ok(Outcome {
        positive: ok,
        result: json!({
            "map": m.id,
            "degree": m.map.degree(),
            "critical_points": crit,
            "postcritical": set_json(&set, &graph.successor),
            "cycles": graph.cycles(),
            "catalog_check": check,
        }),
    })
}

fn partitions(sel: &str, depth: u32, tol: &ToleranceConfig) -> Result<Outcome> {
    let m = resolve_map(sel, tol)?;
    let ctx = MapContext::new(&m.map, tol)?;
    let rows: Vec<Value> = enumerate_bipartitions(ctx.set.len())
        .into_iter()
        .map(|b| {
            let dynamics = partition_dynamics(&ctx.graph, &b, depth);
            json!({ "white": b.white, "black": b.black, "levels": dynamics.levels })
        })
        .collect();
    positive(json!({
        "map": m.id,
        "depth": depth,
        "postcritical": set_json(&ctx.set, &ctx.graph.successor),
        "bipartitions": rows,
    }))
}

fn lift(map: &Option<String>, sel: &str, depth: u32, cfg: &RunConfig) -> Result<Outcome> {
    if depth == 0 {
        return Err(Error::Invalid("--depth must be at least 1".into()));
    }
    let tol = &cfg.tolerance;
    let c = resolve_curve(sel)?;
    let m = map_for_curve(map, &c, tol)?;
    let curve = c.spec.sample(cfg.resolution)?;
    let levels = lift_iterate(&m.map, depth, &curve, tol, &LiftOptions::default())?;
    let rows: Vec<Value> = levels
        .iter()
        .zip(1..)
        .map(|(l, n): (_, u32)| {
            json!({
                "level": n,
                "components": l.component_count(),
                "covering_degrees": l.covering_degrees,
                "samples": l.curves.components.iter().map(JordanCurve::len).collect::<Vec<_>>(),
                "min_separation": (l.component_count() > 1).then(|| l.curves.min_separation()),
            })
        })
        .collect();
    positive(json!({ "map": m.id, "curve": c.id, "resolution": cfg.resolution, "levels": rows }))
}

fn classify(map: &Option<String>, sel: &str, level: u32, cfg: &RunConfig) -> Result<Outcome> {
    if level == 0 {
        return Err(Error::Invalid("--level must be at least 1".into()));
    }
    let tol = &cfg.tolerance;
    let c = resolve_curve(sel)?;
    let m = map_for_curve(map, &c, tol)?;
    let curve = c.spec.sample(cfg.resolution)?;
    let verdict = MapContext::new(&m.map, tol)?.classify(level, &curve)?;
    let ok = matches!(verdict.outcome, Verdict::Equator | Verdict::OREquator);
    Ok(Outcome { positive: ok, result: json!({ "map": m.id, "curve": c.id, "verdict": verdict }) })
}

fn fold(sel: &str, depth: u32, cfg: &RunConfig) -> Result<Outcome> {
    if depth == 0 {
        return Err(Error::Invalid("--depth must be at least 1".into()));
    }
    let tol = &cfg.tolerance;
    let m = resolve_map(sel, tol)?;
    let injected: Vec<JordanCurve> = paper_curves()
        .iter()
        .filter(|c| c.map_id == m.id)
        .map(|c| c.sample(cfg.resolution))
        .collect::<Result<_>>()?;
    let report = fold_report(&m.id, &m.map, depth, &injected, tol)?;
    let ok = !matches!(report.conclusion, Conclusion::NoEquatorFoundUpTo(_));
    Ok(Outcome { positive: ok, result: serde_json::to_value(report)? })
}

fn captures(generation: u32, tol: &ToleranceConfig) -> Result<Outcome> {
    if !(2..=8).contains(&generation) {
        return Err(Error::Invalid(format!("--generation must be between 2 and 8, got {generation}")));
    }
    let params = capture_parameters(generation, tol)?;
    let poly = capture_polynomial(generation)?;
    positive(json!({
        "generation": generation,
        "polynomial_degree": poly.degree(),
        "count": params.len(),
        "parameters": params.iter().map(|a| json!([a.re, a.im])).collect::<Vec<_>>(),
    }))
}

fn semigroup(action: &SemigroupCommand) -> Result<Outcome> {
    match action {
        SemigroupCommand::Census => positive(serde_json::to_value(census())?),
        SemigroupCommand::Closure { gens } => {
            let gens = parse_generators(gens)?;
            let c = closure(&gens)?;
            positive(json!({
                "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "size": c.size,
                "closed": c.is_closed(),
                "members": c.closure.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }))
        }
        SemigroupCommand::VerifyTheorems { k } => verify_theorems(*k),
    }
}

/// Census counts and closure statements for maps on four points.
fn verify_theorems(k: usize) -> Result<Outcome> {
    if k != 4 {
        return Err(Error::Invalid(format!("verify-theorems covers four-point sets only, got --k {k}")));
    }
    let c = census();
    let expected: [(&str, usize); 19] = [
        ("𝔓|", 6),
        ("𝔓||A", 8),
        ("𝔓||B", 3),
        ("𝔓|||", 6),
        ("𝔓||||", 1),
        ("𝔖|A", 24),
        ("𝔖|B", 24),
        ("𝔖|C", 12),
        ("𝔖|D", 12),
        ("𝔖|E", 24),
        ("𝔖|F", 24),
        ("𝔖|G", 12),
        ("𝔖|H", 4),
        ("𝔖||A", 24),
        ("𝔖||B", 24),
        ("𝔖||C", 12),
        ("𝔖||D", 12),
        ("𝔖||E", 12),
        ("𝔖|||", 12),
    ];
    let mut checks: Vec<(String, bool, Value)> = vec![(
        "census totals".into(),
        (c.total, c.bijections, c.non_bijections) == (256, 24, 232),
        json!([c.total, c.bijections, c.non_bijections]),
    )];
    for (s, n) in expected {
        checks.push((format!("series {s}"), c.count(s) == n, json!(c.count(s))));
    }
    let gens = |names: &[&str]| names.iter().map(|n| named_map(n)).collect::<Result<Vec<_>>>();
    let periodic = closure(&gens(&["P|1", "P||A1"])?)?;
    checks.push(("closure of P|1, P||A1 is the 24 bijections".into(), periodic.size == 24, json!(periodic.size)));
    let all = closure(&gens(&["P|1", "P||A1", "S|A1"])?)?;
    checks.push(("closure of P|1, P||A1, S|A1 is all 256 maps".into(), all.size == 256, json!(all.size)));
    let sa = verify_sa_generating();
    let (sa_ok, sa_value) = match &sa {
        Ok(s) => (
            s.closure.size == 232 && s.chosen.len() == 12,
            json!({
                "size": s.closure.size,
                "selection": s.selection,
                "chosen": s.chosen.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
        ),
        Err(e) => (false, json!(e.to_string())),
    };
    checks.push(("twelve maps of the S|A series generate the 232 non-bijections".into(), sa_ok, sa_value));
    let pair = find_generating_pair();
    checks.push((
        "no two maps generate all 256".into(),
        pair.is_none(),
        json!(pair.map(|(f, g)| [f.to_string(), g.to_string()])),
    ));
    let ok = checks.iter().all(|c| c.1);
    let rows: Vec<Value> = checks.into_iter().map(|(name, pass, value)| json!({ "check": name, "pass": pass, "value": value })).collect();
    Ok(Outcome { positive: ok, result: json!({ "k": k, "checks": rows, "census": c }) })
}

fn realize_check(pairs: usize, cfg: &RunConfig) -> Result<Outcome> {
    let tol = &cfg.tolerance;
    let mut all_ok = true;
    let mut graphs = Vec::new();
    for e in full_catalog(tol)? {
        let check = e.verify(tol)?;
        all_ok &= check.matches;
        graphs.push(json!({ "map": e.name, "check": check }));
    }

    let realize = realization_catalog()?;
    let ea = &realize.iter().find(|e| e.name == "realize:Ea").ok_or_else(|| Error::UnknownId("realize:Ea".into()))?.map;
    let square = compositive_trick_check(ea, ea, tol)?;
    let three = [SpherePoint::from_re_im(0.0, 0.0), SpherePoint::from_re_im(1.0, 0.0), SpherePoint::INFINITY];
    let same = |a: &[SpherePoint], b: &[SpherePoint]| {
        a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| chordal_distance(p, q) <= tol.eps_orbit))
    };
    let square_ok = same(&square.p12, &three) && square.consistent();
    all_ok &= square_ok;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    let mut draws = 0;
    while rows.len() < pairs && draws < 50 * pairs.max(1) {
        draws += 1;
        let (i, j) = (rng.gen_range(0..realize.len()), rng.gen_range(0..realize.len()));
        let report = compositive_trick_check(&realize[i].map, &realize[j].map, tol)?;
        if !report.lemma_hypothesis {
            continue;
        }
        all_ok &= report.consistent();
        rows.push(json!({
            "pair": [realize[i].name, realize[j].name],
            "containment": report.containment,
            "corollary_hypothesis": report.corollary_hypothesis,
            "corollary_equality": report.corollary_equality,
            "postcritical": points_json(&report.p12),
        }));
    }
    all_ok &= rows.len() == pairs;
    Ok(Outcome {
        positive: all_ok,
        result: json!({
            "graphs": graphs,
            "square_of_companion_of_e": { "postcritical": points_json(&square.p12), "pass": square_ok },
            "random_pairs": { "seed": cfg.seed, "requested": pairs, "draws": draws, "pairs": rows },
        }),
    })
}

/// Square window around the origin holding every finite postcritical point.
fn window_for(set: &PostcriticalSet) -> f64 {
    let reach = set.points.iter().filter_map(SpherePoint::affine).map(|z| z.norm()).fold(1.0, f64::max);
    (2.6 * reach).max(4.0)
}

fn figure(tag: &str, pixels: usize, cfg: &RunConfig) -> Result<Outcome> {
    let tol = &cfg.tolerance;
    let (map_id, curve) = match tag {
        "fig21" => ("omega+3".to_string(), None),
        _ => {
            let c = lookup_curve(tag).map_err(|_| Error::Invalid(format!("unknown figure '{tag}'; use fig4 .. fig21")))?;
            (c.map_id.clone(), Some(c))
        }
    };
    let map = lookup_map(&map_id, tol)?.map;
    let ctx = MapContext::new(&map, tol)?;
    let render = RenderConfig { width: window_for(&ctx.set), resolution: pixels, ..RenderConfig::default() };
    render.validate()?;
    let image = match basin_render(&map, &render, tol) {
        Ok(img) => Some(img),
        Err(Error::NotHyperbolic) => None,
        Err(e) => return Err(e),
    };
    let mut layers = Vec::new();
    let mut extra = json!({
        "map": map_id,
        "postcritical": points_json(&ctx.set.points),
        "basins": image.as_ref().map(|i| json!({ "cycle_points": points_json(&i.cycle_points), "cycle_of": i.cycle_of })),
    });
    if let Some(c) = &curve {
        let source = c.sample(cfg.resolution)?;
        let (b, sides) = ctx.bipartition_of(&source)?;
        let expected_inside: Vec<usize> = c.inside.iter().filter_map(|p| ctx.set.find(p, 1e-6)).collect();
        let mut inside = sides.inside.clone();
        inside.sort_unstable();
        let mut want = expected_inside.clone();
        want.sort_unstable();
        extra["curve"] = json!(c.id);
        extra["name"] = json!(c.name);
        extra["sides"] = json!({ "inside": inside, "outside": sides.outside, "white": b.white, "black": b.black });
        extra["inside_matches"] = json!(inside == want && want.len() == c.inside.len());
        layers.push(CurveLayer { depth: 0, curves: vec![source.clone()] });
        if c.depth > 0 {
            for (level, n) in lift_iterate(&map, c.depth, &source, tol, &LiftOptions::default())?.into_iter().zip(1..) {
                layers.push(CurveLayer { depth: n, curves: level.curves.components });
            }
        }
    }
    let stem = format!("{}_{}", sanitize(&map_id), sanitize(tag));
    let out = overlay_figure(image.as_ref(), &render, &layers, &cfg.out_dir, &stem, extra)?;
    positive(json!({
        "svg": out.svg,
        "png": out.png,
        "json": out.json,
        "metadata": out.metadata,
    }))
}
