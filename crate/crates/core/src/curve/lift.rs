//! Preimages of curves by branch continuation along the fibers.

use super::{segment_chordal_distance, JordanCurve, MultiCurve};
use crate::error::{Error, Result};
use crate::map::{critical_values, Dynamics, RationalMap};
use crate::numeric::{chordal_distance, SpherePoint, ToleranceConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftOptions {
    /// Largest chordal step allowed between consecutive lifted samples.
    pub max_gap: f64,
    /// Ratio below which the second-nearest candidate makes a match ambiguous.
    pub ambiguity_ratio: f64,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions { max_gap: 0.02, ambiguity_ratio: 3.0 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftResult {
    pub curves: MultiCurve,
    /// Fiber points over the first source sample, indexed component by
    /// component; entry `i` is where branch `i` arrives after one loop.
    pub branch_permutation: Vec<usize>,
    pub covering_degrees: Vec<usize>,
}

impl LiftResult {
    pub fn component_count(&self) -> usize {
        self.curves.len()
    }

    fn from_components(components: Vec<JordanCurve>, level: u32, source_period: f64) -> Self {
        let covering_degrees: Vec<usize> = components.iter().map(|c| (c.period() / source_period).round() as usize).collect();
        let mut branch_permutation = Vec::new();
        let mut offset = 0;
        for &l in &covering_degrees {
            branch_permutation.extend((0..l).map(|k| offset + (k + 1) % l));
            offset += l;
        }
        LiftResult { curves: MultiCurve { components, level, source: None }, branch_permutation, covering_degrees }
    }
}

/// Lift through `R^n` given as any [`Dynamics`].
pub fn lift<D: Dynamics>(map: &D, curve: &JordanCurve, tol: &ToleranceConfig) -> Result<LiftResult> {
    let levels = lift_iterate(map.base_map(), map.power(), curve, tol, &LiftOptions::default())?;
    Ok(levels.into_iter().last().expect("power >= 1"))
}

/// Lifts through `R, R^2, ..., R^n` by chained single-step lifts.
pub fn lift_iterate(
    r: &RationalMap,
    n: u32,
    curve: &JordanCurve,
    tol: &ToleranceConfig,
    opts: &LiftOptions,
) -> Result<Vec<LiftResult>> {
    check_clearance(r, n, curve, tol)?;
    let mut out: Vec<LiftResult> = Vec::with_capacity(n as usize);
    let mut current = vec![curve.clone()];
    for level in 1..=n {
        let lifted: Vec<Vec<JordanCurve>> = current
            .par_iter()
            .map(|c| lift_once(r, c, tol, opts))
            .collect::<Result<Vec<_>>>()?;
        let comps: Vec<JordanCurve> = lifted.into_iter().flatten().collect();
        out.push(LiftResult::from_components(comps.clone(), level, curve.period()));
        current = comps;
    }
    Ok(out)
}

/// The curve must stay `eps_curve` away from the critical values of `R^n`.
fn check_clearance(r: &RationalMap, n: u32, curve: &JordanCurve, tol: &ToleranceConfig) -> Result<()> {
    let mut layer = critical_values(r, tol)?;
    let mut all = layer.clone();
    for _ in 1..n {
        layer = layer.iter().map(|v| r.evaluate(v)).collect::<Result<_>>()?;
        all.extend(layer.iter().copied());
    }
    for v in &all {
        let d = curve.distance_to(v);
        if d <= tol.eps_curve {
            return Err(Error::CurveHitsPostcritical { point: v.to_string(), distance: d });
        }
    }
    Ok(())
}

struct Tracks {
    branches: Vec<Vec<SpherePoint>>,
    params: Vec<f64>,
}

impl Tracks {
    fn push(&mut self, fib: &[SpherePoint], t: f64) {
        for (b, p) in self.branches.iter_mut().zip(fib) {
            b.push(*p);
        }
        self.params.push(t);
    }
}

fn lift_once(r: &RationalMap, curve: &JordanCurve, tol: &ToleranceConfig, opts: &LiftOptions) -> Result<Vec<JordanCurve>> {
    let s = curve.samples();
    let t = curve.params();
    let m = s.len();
    let d = r.degree();
    let fibers: Vec<Vec<SpherePoint>> = s.par_iter().map(|p| r.fiber(p, tol)).collect::<Result<_>>()?;
    let mut tracks = Tracks { branches: vec![Vec::with_capacity(m * 2); d], params: Vec::with_capacity(m * 2) };
    let mut cur = fibers[0].clone();
    for i in 0..m {
        tracks.push(&cur, t[i]);
        let (j, tb) = if i + 1 < m { (i + 1, t[i + 1]) } else { (0, t[0] + curve.period()) };
        cur = advance(r, (&s[i], t[i], &cur), (&s[j], tb, fibers[j].clone()), 0, tol, opts, &mut tracks)?;
    }
    // Where each branch lands after one loop.
    let start = &fibers[0];
    let mut perm = vec![usize::MAX; d];
    let mut used = vec![false; d];
    for (b, p) in cur.iter().enumerate() {
        let k = (0..d)
            .filter(|&k| !used[k])
            .min_by(|&x, &y| chordal_distance(p, &start[x]).total_cmp(&chordal_distance(p, &start[y])))
            .ok_or(Error::NearCriticalValue(0))?;
        used[k] = true;
        perm[b] = k;
    }
    let mut seen = vec![false; d];
    let mut comps = Vec::new();
    for j0 in 0..d {
        if seen[j0] {
            continue;
        }
        let mut samples = Vec::new();
        let mut params = Vec::new();
        let mut j = j0;
        let mut lap = 0.0;
        loop {
            seen[j] = true;
            samples.extend_from_slice(&tracks.branches[j]);
            params.extend(tracks.params.iter().map(|p| p + lap));
            lap += curve.period();
            j = perm[j];
            if j == j0 {
                break;
            }
        }
        comps.push(JordanCurve::from_lift(samples, params, lap));
    }
    Ok(comps)
}

/// Ordered fiber over `b`, inserting midpoints while matching is ambiguous.
#[allow(clippy::too_many_arguments)]
fn advance(
    r: &RationalMap,
    a: (&SpherePoint, f64, &[SpherePoint]),
    b: (&SpherePoint, f64, Vec<SpherePoint>),
    depth: u32,
    tol: &ToleranceConfig,
    opts: &LiftOptions,
    tracks: &mut Tracks,
) -> Result<Vec<SpherePoint>> {
    if let Some(ord) = try_match(a.2, &b.2, opts) {
        return Ok(ord);
    }
    if depth >= tol.max_refine_depth {
        return Err(Error::NearCriticalValue(depth));
    }
    let mid = midpoint(a.0, b.0);
    let tm = 0.5 * (a.1 + b.1);
    let mfib = r.fiber(&mid, tol)?;
    let mord = advance(r, a, (&mid, tm, mfib), depth + 1, tol, opts, tracks)?;
    tracks.push(&mord, tm);
    advance(r, (&mid, tm, &mord), b, depth + 1, tol, opts, tracks)
}

fn try_match(a: &[SpherePoint], b: &[SpherePoint], opts: &LiftOptions) -> Option<Vec<SpherePoint>> {
    let n = a.len();
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for p in a {
        let (mut k1, mut d1, mut d2) = (usize::MAX, f64::INFINITY, f64::INFINITY);
        for (k, q) in b.iter().enumerate() {
            let dist = chordal_distance(p, q);
            if dist < d1 {
                d2 = d1;
                d1 = dist;
                k1 = k;
            } else if dist < d2 {
                d2 = dist;
            }
        }
        if d1 > opts.max_gap || (n > 1 && d2 < opts.ambiguity_ratio * d1) || used[k1] {
            return None;
        }
        used[k1] = true;
        out.push(b[k1]);
    }
    Some(out)
}

/// Midpoint of a short chord, taken in the chart where both ends are small.
pub(crate) fn midpoint(a: &SpherePoint, b: &SpherePoint) -> SpherePoint {
    match (a.affine(), b.affine()) {
        (Some(x), Some(y)) if x.norm() <= 1.0 || y.norm() <= 1.0 => SpherePoint::finite(0.5 * (x + y)),
        _ => {
            // Work in w = 1/z.
            let wa = a.den() / a.num();
            let wb = b.den() / b.num();
            let w = 0.5 * (wa + wb);
            SpherePoint::from_homogeneous(crate::numeric::C64::new(1.0, 0.0), w).unwrap_or(SpherePoint::INFINITY)
        }
    }
}

/// Largest chordal distance between `R(x)` and the source polyline, over all lifted samples.
///
/// Lifted parameters must be those of `source`, offset by whole periods.
pub fn covering_residual(r: &RationalMap, source: &JordanCurve, lifted: &JordanCurve) -> Result<f64> {
    let src = source.samples();
    let ts = source.params();
    let n = src.len();
    let period = source.period();
    let mut worst: f64 = 0.0;
    for (x, &t) in lifted.samples().iter().zip(lifted.params()) {
        let y = r.evaluate(x)?;
        let u = t.rem_euclid(period);
        // Segment whose parameter interval contains `u`; wraps before the first sample.
        let i = ts.partition_point(|&s| s <= u).checked_sub(1).unwrap_or(n - 1);
        let d = segment_chordal_distance(&src[i], &src[(i + 1) % n], &y);
        worst = worst.max(d);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;
    use crate::numeric::C64;

    fn square() -> RationalMap {
        RationalMap::from_real(&[0.0, 0.0, 1.0], &[1.0]).unwrap()
    }

    #[test]
    fn circle_under_squaring() {
        let c = CurveSpec::circle(C64::new(0.0, 0.0), 4.0).sample(256).unwrap();
        let res = lift(&square(), &c, &ToleranceConfig::default()).unwrap();
        assert_eq!(res.component_count(), 1);
        assert_eq!(res.covering_degrees, vec![2]);
        for p in res.curves.components[0].samples() {
            assert!((p.affine().unwrap().norm() - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn off_centre_circle_splits() {
        // A circle not enclosing 0 lifts to two disjoint curves.
        let c = CurveSpec::circle(C64::new(3.0, 0.0), 1.0).sample(256).unwrap();
        let res = lift(&square(), &c, &ToleranceConfig::default()).unwrap();
        assert_eq!(res.component_count(), 2);
        assert_eq!(res.covering_degrees, vec![1, 1]);
    }

    #[test]
    fn covering_identity_holds() {
        let c = CurveSpec::circle(C64::new(0.3, 0.2), 1.7).sample(256).unwrap();
        let r = square();
        let res = lift(&r, &c, &ToleranceConfig::default()).unwrap();
        for comp in &res.curves.components {
            assert!(covering_residual(&r, &c, comp).unwrap() < 1e-8);
        }
    }
}
