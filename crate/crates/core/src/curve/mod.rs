//! Oriented closed polylines on the sphere, their lifts and winding sides.

mod lift;
mod spec;
mod winding;

pub use lift::{covering_residual, lift, lift_iterate, LiftOptions, LiftResult};
pub use spec::{CurveSpec, Piece};
pub use winding::{designated_chart, farthest_candidate, side_partition, winding_number, SideAssignment};

use crate::error::{Error, Result};
use crate::numeric::{chordal_distance, SpherePoint, C64};
use serde::{Deserialize, Serialize};

pub const MIN_SAMPLES: usize = 64;
pub const MAX_GAP: f64 = 0.1;

/// A closed polyline; orientation is the sample order.
///
/// `params` holds the source-curve parameter of each sample, measured in
/// loops of the original curve (a component that closes after L loops has
/// parameters in `[0, L)`). `period` is the total parameter length.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanCurve {
    samples: Vec<SpherePoint>,
    params: Vec<f64>,
    period: f64,
    spec: Option<CurveSpec>,
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    spec: Option<CurveSpec>,
    samples: Vec<Option<[f64; 2]>>,
}

impl Serialize for JordanCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveJson {
            spec: self.spec.clone(),
            samples: self.samples.iter().map(|p| p.affine().map(|z| [z.re, z.im])).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JordanCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CurveJson::deserialize(d)?;
        if raw.samples.is_empty() {
            if let Some(spec) = raw.spec {
                return spec.sample(512).map_err(serde::de::Error::custom);
            }
        }
        let pts = raw
            .samples
            .into_iter()
            .map(|s| s.map_or(SpherePoint::INFINITY, |[x, y]| SpherePoint::from_re_im(x, y)))
            .collect();
        JordanCurve::from_points_with_spec(pts, raw.spec).map_err(serde::de::Error::custom)
    }
}

impl JordanCurve {
    /// Validated curve from samples.
    pub fn from_points(samples: Vec<SpherePoint>) -> Result<Self> {
        Self::from_points_with_spec(samples, None)
    }

    pub fn from_points_with_spec(samples: Vec<SpherePoint>, spec: Option<CurveSpec>) -> Result<Self> {
        let n = samples.len();
        let params = (0..n).map(|i| i as f64 / n as f64).collect();
        let c = JordanCurve { samples, params, period: 1.0, spec };
        c.validate()?;
        Ok(c)
    }

    /// Builds a lifted curve without the self-intersection sweep.
    pub(crate) fn from_lift(samples: Vec<SpherePoint>, params: Vec<f64>, period: f64) -> Self {
        JordanCurve { samples, params, period, spec: None }
    }

    pub fn samples(&self) -> &[SpherePoint] {
        &self.samples
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn spec(&self) -> Option<&CurveSpec> {
        self.spec.as_ref()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.reverse();
        let mut params: Vec<f64> = self.params.iter().map(|t| self.period - t).collect();
        params.reverse();
        JordanCurve { samples, params, period: self.period, spec: None }
    }

    /// Affine samples; ∞ maps to a non-finite value.
    pub fn affine(&self) -> Vec<C64> {
        self.samples.iter().map(SpherePoint::to_complex).collect()
    }

    pub fn max_gap(&self) -> (usize, f64) {
        let n = self.samples.len();
        (0..n)
            .map(|i| (i, chordal_distance(&self.samples[i], &self.samples[(i + 1) % n])))
            .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a })
    }

    /// Minimum chordal distance from the samples to `p`.
    pub fn distance_to(&self, p: &SpherePoint) -> f64 {
        let n = self.samples.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            best = best.min(segment_chordal_distance(&self.samples[i], &self.samples[(i + 1) % n], p));
        }
        best
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples.len() < MIN_SAMPLES {
            return Err(Error::TooFewSamples(self.samples.len()));
        }
        let (index, gap) = self.max_gap();
        if gap >= MAX_GAP {
            return Err(Error::GapTooLarge { index, gap });
        }
        if let Some(i) = self.self_intersection() {
            return Err(Error::SelfIntersecting(i));
        }
        Ok(())
    }

    /// First segment found crossing a non-adjacent segment, via a uniform grid.
    pub fn self_intersection(&self) -> Option<usize> {
        let pts = self.planar();
        let n = pts.len();
        if n < 4 {
            return None;
        }
        let seg = |i: usize| (pts[i], pts[(i + 1) % n]);
        let mean: f64 = (0..n).map(|i| (seg(i).1 - seg(i).0).norm()).sum::<f64>() / n as f64;
        let cell = (mean * 4.0).max(1e-12);
        let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> = std::collections::HashMap::new();
        for i in 0..n {
            let (a, b) = seg(i);
            let (x0, x1) = ((a.re.min(b.re) / cell).floor() as i64, (a.re.max(b.re) / cell).floor() as i64);
            let (y0, y1) = ((a.im.min(b.im) / cell).floor() as i64, (a.im.max(b.im) / cell).floor() as i64);
            if (x1 - x0 + 1) * (y1 - y0 + 1) > 4096 {
                continue;
            }
            for x in x0..=x1 {
                for y in y0..=y1 {
                    grid.entry((x, y)).or_default().push(i);
                }
            }
        }
        let mut keys: Vec<_> = grid.keys().copied().collect();
        keys.sort();
        for k in keys {
            let bucket = &grid[&k];
            for (u, &i) in bucket.iter().enumerate() {
                for &j in &bucket[u + 1..] {
                    let adjacent = j == i + 1 || i == j + 1 || (i == 0 && j == n - 1) || (j == 0 && i == n - 1);
                    if adjacent {
                        continue;
                    }
                    let (a, b) = seg(i);
                    let (c, d) = seg(j);
                    if segments_cross(a, b, c, d) {
                        return Some(i.min(j));
                    }
                }
            }
        }
        None
    }

    /// Planar coordinates: affine when the curve stays finite, otherwise
    /// the image under `z -> 1/(z - q)` for a point `q` far from the curve.
    fn planar(&self) -> Vec<C64> {
        let near_inf = self.samples.iter().map(|p| p.den().norm()).fold(f64::INFINITY, f64::min);
        if near_inf > 1e-3 {
            return self.affine();
        }
        let candidates = [
            SpherePoint::INFINITY,
            SpherePoint::from_re_im(0.0, 0.0),
            SpherePoint::from_re_im(1.0, 0.0),
            SpherePoint::from_re_im(-1.0, 0.0),
            SpherePoint::from_re_im(0.0, 1.0),
            SpherePoint::from_re_im(0.0, -1.0),
        ];
        let chart = designated_chart(std::slice::from_ref(self), &candidates);
        self.samples.iter().map(|p| chart.apply(p).to_complex()).collect()
    }
}

fn cross(o: C64, a: C64, b: C64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn segments_cross(a: C64, b: C64, c: C64, d: C64) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Chordal distance from `p` to the segment `ab`, measured in the affine
/// plane and converted at the nearest point; exact enough for small segments.
pub(crate) fn segment_chordal_distance(a: &SpherePoint, b: &SpherePoint, p: &SpherePoint) -> f64 {
    // Same chart choice as the refinement midpoints.
    let project = |za: C64, zb: C64, zp: C64| {
        let ab = zb - za;
        let len2 = ab.norm_sqr();
        let t = if len2 > 0.0 { (((zp - za) * ab.conj()).re / len2).clamp(0.0, 1.0) } else { 0.0 };
        za + ab * t
    };
    match (a.affine(), b.affine(), p.affine()) {
        (Some(za), Some(zb), Some(zp)) if za.norm() <= 1.0 || zb.norm() <= 1.0 => {
            chordal_distance(&SpherePoint::finite(project(za, zb, zp)), p)
        }
        _ if a.num().norm() > 0.0 && b.num().norm() > 0.0 && p.num().norm() > 0.0 => {
            let w = project(a.den() / a.num(), b.den() / b.num(), p.den() / p.num());
            let q = SpherePoint::from_homogeneous(C64::new(1.0, 0.0), w).unwrap_or(SpherePoint::INFINITY);
            chordal_distance(&q, p)
        }
        _ => chordal_distance(a, p).min(chordal_distance(b, p)),
    }
}

/// Components of a preimage, with their provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiCurve {
    pub components: Vec<JordanCurve>,
    pub level: u32,
    pub source: Option<String>,
}

impl MultiCurve {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn total_samples(&self) -> usize {
        self.components.iter().map(JordanCurve::len).sum()
    }

    /// Minimum chordal distance between samples of different components.
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.components.len() {
            for j in (i + 1)..self.components.len() {
                for p in self.components[i].samples() {
                    for q in self.components[j].samples() {
                        best = best.min(chordal_distance(p, q));
                    }
                }
            }
        }
        best
    }
}
