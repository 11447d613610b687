use super::Basins;
use crate::curve::{lift_iterate, JordanCurve, LiftOptions};
use crate::error::Result;
use crate::map::RationalMap;
use crate::numeric::{chordal_distance, chordal_to_affine, SpherePoint, ToleranceConfig, C64};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Chordal offset of the two probes on either side of a sample.
pub const PROBE_OFFSET: f64 = 1e-2;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProximityReport {
    pub depth: u32,
    pub samples: usize,
    pub passed: usize,
    pub fraction: f64,
}

/// Pair directions, as angles from the normal; all cross the curve.
const PAIR_ANGLES: [f64; 7] = [0.0, 0.3927, -0.3927, 0.7854, -0.7854, 1.1781, -1.1781];

/// Probe pairs on either side of `p`, symmetric about it and tilted from the
/// normal of the chord `prev -> next`, each at chordal distance about
/// `delta`. Works in the chart where `p` is small.
fn probes(prev: &SpherePoint, p: &SpherePoint, next: &SpherePoint, delta: f64) -> Option<Vec<(SpherePoint, SpherePoint)>> {
    let (flip, z) = match p.affine() {
        Some(z) if z.norm() <= 1.0 => (false, z),
        _ => (true, p.den() / p.num()),
    };
    let chart = |q: &SpherePoint| if flip { q.den() / q.num() } else { q.affine().unwrap_or(C64::new(f64::INFINITY, 0.0)) };
    let t = chart(next) - chart(prev);
    if !t.norm().is_finite() || t.norm() == 0.0 {
        return None;
    }
    let normal = C64::new(-t.im, t.re) / t.norm();
    let len = chordal_to_affine(z, delta);
    let back = |w: C64| if flip { SpherePoint::from_homogeneous(C64::new(1.0, 0.0), w).unwrap_or(SpherePoint::INFINITY) } else { SpherePoint::finite(w) };
    Some(
        PAIR_ANGLES
            .iter()
            .map(|&a| {
                let step = normal * C64::from_polar(len, a);
                (back(z + step), back(z - step))
            })
            .collect(),
    )
}

/// Neighbours of sample `i` at least `delta` away along the curve, so the
/// chord reflects the curve at the probe scale.
fn chord_ends(s: &[SpherePoint], i: usize, delta: f64) -> (SpherePoint, SpherePoint) {
    let n = s.len();
    let reach = |dir: isize| {
        let mut k = 1;
        while k < n / 2 && chordal_distance(&s[i], &s[(i as isize + dir * k as isize).rem_euclid(n as isize) as usize]) < delta {
            k += 1;
        }
        s[(i as isize + dir * k as isize).rem_euclid(n as isize) as usize]
    };
    (reach(-1), reach(1))
}

/// Fraction of samples of the depth-`depth` lift with a pair of opposite
/// probes in different basins, i.e. samples within the probe offset of the
/// basin boundary, which is the Julia set.
pub fn julia_proximity_check(r: &RationalMap, equator: &JordanCurve, depth: u32, tol: &ToleranceConfig) -> Result<ProximityReport> {
    let basins = Basins::new(r, 1e-3, 500, tol)?;
    let curves: Vec<JordanCurve> = if depth == 0 {
        vec![equator.clone()]
    } else {
        lift_iterate(r, depth, equator, tol, &LiftOptions::default())?.pop().expect("depth >= 1").curves.components
    };
    let triples: Vec<(SpherePoint, SpherePoint, SpherePoint)> = curves
        .iter()
        .flat_map(|c| {
            let s = c.samples();
            let n = s.len();
            (0..n).map(move |i| {
                let (a, b) = chord_ends(s, i, PROBE_OFFSET);
                (a, s[i], b)
            })
        })
        .collect();
    let passed = triples
        .par_iter()
        .filter(|(a, p, b)| {
            probes(a, p, b, PROBE_OFFSET).is_some_and(|pairs| {
                pairs.iter().any(|(u, v)| {
                    let (lu, lv) = (basins.classify(u), basins.classify(v));
                    lu.is_some() && lv.is_some() && lu != lv
                })
            })
        })
        .count();
    let samples = triples.len();
    Ok(ProximityReport { depth, samples, passed, fraction: passed as f64 / samples.max(1) as f64 })
}
