//! Isotopy classes of closed curves in the punctured sphere, via words in
//! the free fundamental group of the punctured plane.
//!
//! One puncture is sent to ∞; every other puncture carries a vertical
//! upward ray. Reading the crossings of a closed curve with these rays gives
//! a word in generators `g_1 .. g_{m-1}`, where `g_i` is a small
//! counter-clockwise loop around puncture `i`. Free homotopy classes are
//! conjugacy classes, so two curves are compared through cyclically reduced
//! words up to rotation.

use crate::curve::{farthest_candidate, JordanCurve};
use crate::error::{Error, Result};
use crate::numeric::{MoebiusTransform, SpherePoint, C64};
use serde::{Deserialize, Serialize};
use std::fmt;

const MAX_ROTATIONS: usize = 100;
const SEPARATION: f64 = 1e-6;

/// Chart in which one puncture is at ∞ and the others have distinct x.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PunctureChart {
    pub chart: MoebiusTransform,
    /// Index (into the input points) of the puncture sent to ∞.
    pub at_infinity: usize,
    /// Indices of the finite punctures; generator `g_{k+1}` belongs to `punctures[k]`.
    pub punctures: Vec<usize>,
    /// Chart positions of the finite punctures (ray base points).
    pub positions: Vec<[f64; 2]>,
}

/// A word in the free group; letter `+k` is `g_k`, `-k` is its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveWord {
    pub letters: Vec<i32>,
    pub cyclically_reduced: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsotopyClass {
    OrientationPreserving,
    OrientationReversing,
    NotIsotopic,
    Inessential,
}

/// Chooses the puncture farthest from the curves as ∞ and rotates until the
/// remaining punctures have well separated x coordinates.
pub fn build_chart(points: &[SpherePoint], curves: &[JordanCurve]) -> Result<PunctureChart> {
    if points.len() < 2 {
        return Err(Error::Invalid("a puncture chart needs at least two points".into()));
    }
    let at_infinity = farthest_candidate(curves, points).ok_or(Error::ChartSearchFailed)?;
    let base = match points[at_infinity].affine() {
        Some(z) => MoebiusTransform::send_to_infinity(z),
        None => MoebiusTransform::identity(),
    };
    let punctures: Vec<usize> = (0..points.len()).filter(|&i| i != at_infinity).collect();
    let finite: Vec<C64> = punctures.iter().map(|&i| base.apply(&points[i]).to_complex()).collect();
    let scale = finite.iter().map(|z| z.norm()).fold(1.0, f64::max);
    // Rotation angles spread by the golden angle.
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    for k in 0..MAX_ROTATIONS {
        let theta = golden * k as f64;
        let rot = C64::from_polar(1.0, theta);
        let xs: Vec<f64> = finite.iter().map(|z| (z * rot).re).collect();
        let separated = (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| (xs[i] - xs[j]).abs() > SEPARATION * scale));
        if !separated {
            continue;
        }
        let chart = MoebiusTransform::rotation(theta).then_after(&base);
        let positions = finite.iter().map(|z| z * rot).map(|z| [z.re, z.im]).collect();
        return Ok(PunctureChart { chart, at_infinity, punctures, positions });
    }
    Err(Error::ChartSearchFailed)
}

impl PunctureChart {
    pub fn generator_count(&self) -> usize {
        self.punctures.len()
    }
}

/// Reads the ray crossings of `curve` and reduces the word.
pub fn curve_word(chart: &PunctureChart, curve: &JordanCurve) -> Result<CurveWord> {
    let pts: Vec<C64> = curve
        .samples()
        .iter()
        .map(|p| chart.chart.apply(p).affine().ok_or(Error::ChartDegenerate))
        .collect::<Result<_>>()?;
    let n = pts.len();
    let mut letters = Vec::new();
    let mut hits: Vec<(f64, i32)> = Vec::new();
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        hits.clear();
        for (k, pos) in chart.positions.iter().enumerate() {
            let (x, y) = (pos[0], pos[1]);
            // Half-open rule: a vertex exactly on the ray's line counts as right of it.
            let (ra, rb) = (a.re >= x, b.re >= x);
            if ra == rb {
                continue;
            }
            let s = (x - a.re) / (b.re - a.re);
            let yc = a.im + s * (b.im - a.im);
            let tolerance = 1e-12 * (1.0 + y.abs());
            if (yc - y).abs() <= tolerance {
                return Err(Error::TangentCrossing);
            }
            if yc > y {
                let g = k as i32 + 1;
                hits.push((s, if ra { g } else { -g }));
            }
        }
        hits.sort_by(|p, q| p.0.total_cmp(&q.0));
        letters.extend(hits.iter().map(|h| h.1));
    }
    Ok(CurveWord::reduced(letters))
}

impl CurveWord {
    /// Freely and cyclically reduced word.
    pub fn reduced(letters: Vec<i32>) -> Self {
        let mut stack: Vec<i32> = Vec::with_capacity(letters.len());
        for l in letters {
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        let (mut lo, mut hi) = (0, stack.len());
        while hi - lo >= 2 && stack[lo] == -stack[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        CurveWord { letters: stack[lo..hi].to_vec(), cyclically_reduced: true }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn inverse(&self) -> Self {
        CurveWord { letters: self.letters.iter().rev().map(|l| -l).collect(), cyclically_reduced: self.cyclically_reduced }
    }

    /// Lexicographically least rotation; equal for conjugate reduced words.
    pub fn canonical(&self) -> Vec<i32> {
        let n = self.letters.len();
        (0..n)
            .map(|r| self.letters[r..].iter().chain(&self.letters[..r]).copied().collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }

    pub fn is_conjugate(&self, other: &CurveWord) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

impl fmt::Display for CurveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("g{l}") } else { format!("g{}^-1", -l) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn classify_isotopy(w1: &CurveWord, w2: &CurveWord) -> IsotopyClass {
    if w1.is_empty() || w2.is_empty() {
        IsotopyClass::Inessential
    } else if w1.is_conjugate(w2) {
        IsotopyClass::OrientationPreserving
    } else if w1.is_conjugate(&w2.inverse()) {
        IsotopyClass::OrientationReversing
    } else {
        IsotopyClass::NotIsotopic
    }
}

/// Words of several curves read in one chart.
pub fn classify_in_chart(chart: &PunctureChart, a: &JordanCurve, b: &JordanCurve) -> Result<(IsotopyClass, CurveWord, CurveWord)> {
    let wa = curve_word(chart, a)?;
    let wb = curve_word(chart, b)?;
    Ok((classify_isotopy(&wa, &wb), wa, wb))
}

/// Fails with `ChartMismatch` when two charts differ.
pub fn ensure_same_chart(a: &PunctureChart, b: &PunctureChart) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ChartMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;

    fn w(l: &[i32]) -> CurveWord {
        CurveWord::reduced(l.to_vec())
    }

    fn three_points() -> Vec<SpherePoint> {
        vec![SpherePoint::from_re_im(0.0, 0.0), SpherePoint::from_re_im(3.0, 0.0), SpherePoint::INFINITY]
    }

    #[test]
    fn reduction() {
        assert_eq!(w(&[1, 2, -2, -1, 3]).letters, vec![3]);
        assert_eq!(w(&[-1, 2, 3, 1]).letters, vec![2, 3]);
        assert!(w(&[1, -1]).is_empty());
    }

    #[test]
    fn classification_examples() {
        use IsotopyClass::*;
        assert_eq!(classify_isotopy(&w(&[1, 2]), &w(&[2, 1])), OrientationPreserving);
        assert_eq!(classify_isotopy(&w(&[1, 2]), &w(&[-2, -1])), OrientationReversing);
        assert_eq!(classify_isotopy(&w(&[1]), &w(&[2])), NotIsotopic);
        assert_eq!(classify_isotopy(&w(&[]), &w(&[2])), Inessential);
    }

    #[test]
    fn chart_keeps_infinity_when_far() {
        let c = CurveSpec::circle(C64::new(0.0, 0.0), 1.0).sample(256).unwrap();
        let chart = build_chart(&three_points(), &[c]).unwrap();
        assert_eq!(chart.at_infinity, 2);
        assert_eq!(chart.generator_count(), 2);
    }

    #[test]
    fn small_circles_give_generators() {
        let pts = vec![SpherePoint::from_re_im(0.0, 0.0), SpherePoint::from_re_im(1.0, 0.0), SpherePoint::INFINITY];
        let c0 = CurveSpec::circle(C64::new(0.0, 0.0), 0.3).sample(256).unwrap();
        let c1 = CurveSpec::circle(C64::new(1.0, 0.0), 0.3).sample(256).unwrap();
        let both = CurveSpec::circle(C64::new(0.5, 0.0), 0.9).sample(256).unwrap();
        let chart = build_chart(&pts, &[c0.clone(), c1.clone(), both.clone()]).unwrap();
        assert_eq!(chart.at_infinity, 2);
        let g0 = curve_word(&chart, &c0).unwrap();
        let g1 = curve_word(&chart, &c1).unwrap();
        assert_eq!(g0.len(), 1);
        assert_eq!(g1.len(), 1);
        assert!(g0.letters[0] > 0 && g1.letters[0] > 0);
        assert_ne!(g0, g1);
        assert_eq!(curve_word(&chart, &c0.reversed()).unwrap(), g0.inverse());
        assert_eq!(curve_word(&chart, &both).unwrap().len(), 2);
    }
}
