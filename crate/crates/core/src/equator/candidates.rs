//! Candidate separating curves for a bipartition of the postcritical set.

use super::Bipartition;
use crate::curve::{side_partition, CurveSpec, JordanCurve, Piece};
use crate::error::{Error, Result};
use crate::map::PostcriticalSet;
use crate::numeric::{chordal_distance, MoebiusTransform, SpherePoint, ToleranceConfig, C64};
use std::f64::consts::TAU;

const RESOLUTION: usize = 512;
const FRACTIONS: [f64; 3] = [0.25, 0.5, 0.75];

/// Circles about the inner centroid and fattened convex hulls, built with
/// either colour inside, kept only when they induce `b`.
pub fn candidate_curves(set: &PostcriticalSet, b: &Bipartition, tol: &ToleranceConfig) -> Result<Vec<JordanCurve>> {
    let mut out = Vec::new();
    for (inner, outer) in [(&b.white, &b.black), (&b.black, &b.white)] {
        let Some(chart) = outer_chart(set, inner, outer) else { continue };
        let inv = chart.inverse();
        let inner_z: Vec<C64> = inner.iter().filter_map(|&i| chart.apply(&set.points[i]).affine()).collect();
        let outer_z: Vec<C64> = outer.iter().filter_map(|&i| chart.apply(&set.points[i]).affine()).collect();
        if inner_z.len() != inner.len() {
            continue;
        }
        for spec in circle_specs(&inner_z, &outer_z).into_iter().chain(hull_specs(&inner_z, &outer_z)) {
            let Ok(curve) = pull_back(&spec, &inv) else { continue };
            if induces(&curve, set, b, tol) {
                out.push(curve);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::NoSeparatingCurveFound);
    }
    Ok(out)
}

/// Sends the outer point farthest from the inner ones to ∞.
fn outer_chart(set: &PostcriticalSet, inner: &[usize], outer: &[usize]) -> Option<MoebiusTransform> {
    let far = outer.iter().copied().max_by(|&x, &y| {
        let dx = inner.iter().map(|&i| chordal_distance(&set.points[x], &set.points[i])).fold(f64::INFINITY, f64::min);
        let dy = inner.iter().map(|&i| chordal_distance(&set.points[y], &set.points[i])).fold(f64::INFINITY, f64::min);
        dx.total_cmp(&dy)
    })?;
    Some(match set.points[far].affine() {
        None => MoebiusTransform::identity(),
        Some(p) => MoebiusTransform::send_to_infinity(p),
    })
}

fn circle_specs(inner: &[C64], outer: &[C64]) -> Vec<CurveSpec> {
    let centre = inner.iter().sum::<C64>() / inner.len() as f64;
    let r_in = inner.iter().map(|z| (z - centre).norm()).fold(0.0, f64::max);
    let r_out = outer.iter().map(|z| (z - centre).norm()).fold(f64::INFINITY, f64::min);
    let radii: Vec<f64> = if r_out.is_infinite() {
        [0.5, 1.0, 2.0].iter().map(|f| r_in + f * r_in.max(1.0)).collect()
    } else if r_out > r_in {
        FRACTIONS.iter().map(|s| r_in + s * (r_out - r_in)).collect()
    } else {
        Vec::new()
    };
    radii.into_iter().filter(|&r| r > 0.0).map(|r| CurveSpec::circle(centre, r)).collect()
}

fn hull_specs(inner: &[C64], outer: &[C64]) -> Vec<CurveSpec> {
    let hull = convex_hull(inner);
    let d_out = outer.iter().map(|&z| distance_to_hull(&hull, z)).fold(f64::INFINITY, f64::min);
    let d_out = if d_out.is_infinite() { 1.0 } else { d_out };
    if !(d_out > 0.0) {
        return Vec::new();
    }
    FRACTIONS.iter().map(|s| fattened(&hull, s * d_out)).collect()
}

/// Counter-clockwise hull without collinear points.
fn convex_hull(pts: &[C64]) -> Vec<C64> {
    let mut p: Vec<C64> = pts.to_vec();
    p.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    p.dedup_by(|a, b| (*a - *b).norm() < 1e-12);
    if p.len() < 3 {
        return p;
    }
    let cross = |o: C64, a: C64, b: C64| (a - o).re * (b - o).im - (a - o).im * (b - o).re;
    let mut h: Vec<C64> = Vec::with_capacity(2 * p.len());
    for pass in 0..2 {
        let start = h.len();
        let iter: Box<dyn Iterator<Item = &C64>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &z in iter {
            while h.len() >= start + 2 && cross(h[h.len() - 2], h[h.len() - 1], z) <= 0.0 {
                h.pop();
            }
            h.push(z);
        }
        h.pop();
    }
    h
}

fn distance_to_hull(hull: &[C64], z: C64) -> f64 {
    let n = hull.len();
    if n >= 3 {
        let cross = |a: C64, b: C64| (b - a).re * (z - a).im - (b - a).im * (z - a).re;
        if (0..n).all(|i| cross(hull[i], hull[(i + 1) % n]) >= 0.0) {
            return 0.0;
        }
    }
    (0..n)
        .map(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            let ab = b - a;
            let t = if ab.norm_sqr() > 0.0 { (((z - a) * ab.conj()).re / ab.norm_sqr()).clamp(0.0, 1.0) } else { 0.0 };
            (z - (a + ab * t)).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Boundary of the `d`-neighbourhood of a convex polygon.
fn fattened(hull: &[C64], d: f64) -> CurveSpec {
    let n = hull.len();
    if n == 1 {
        return CurveSpec::circle(hull[0], d);
    }
    let normal = |i: usize| {
        let e = hull[(i + 1) % n] - hull[i];
        C64::new(e.im, -e.re) / e.norm()
    };
    let mut pieces = Vec::with_capacity(2 * n);
    for i in 0..n {
        let n_in = normal((i + n - 1) % n);
        let n_out = normal(i);
        let t0 = n_in.arg() / TAU;
        let mut dt = (n_out.arg() - n_in.arg()).rem_euclid(TAU) / TAU;
        if dt <= 0.0 {
            dt = 1.0;
        }
        pieces.push(Piece::arc(hull[i], d, t0, t0 + dt));
        pieces.push(Piece::segment(hull[i] + n_out * d, hull[(i + 1) % n] + n_out * d));
    }
    CurveSpec::ArcChain { pieces }
}

fn pull_back(spec: &CurveSpec, inv: &MoebiusTransform) -> Result<JordanCurve> {
    let mut res = RESOLUTION;
    loop {
        let pts: Vec<SpherePoint> = spec.points(res)?.into_iter().map(|z| inv.apply(&SpherePoint::finite(z))).collect();
        match JordanCurve::from_points(pts) {
            Err(Error::GapTooLarge { .. }) if res < 8 * RESOLUTION => res *= 2,
            other => return other,
        }
    }
}

fn induces(curve: &JordanCurve, set: &PostcriticalSet, b: &Bipartition, tol: &ToleranceConfig) -> bool {
    if set.points.iter().any(|p| curve.distance_to(p) <= tol.eps_curve) {
        return false;
    }
    let chart = crate::curve::designated_chart(std::slice::from_ref(curve), &set.points);
    match side_partition(curve, set, &chart) {
        Ok(s) => Bipartition::from_side(&s.inside, set.len()).map(|x| &x == b).unwrap_or(false),
        Err(_) => false,
    }
}
