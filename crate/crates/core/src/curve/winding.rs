use super::JordanCurve;
use crate::error::{Error, Result};
use crate::map::PostcriticalSet;
use crate::numeric::{chordal_distance, MoebiusTransform, SpherePoint};
use serde::{Deserialize, Serialize};

/// Postcritical indices on each side of a curve, in a recorded chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideAssignment {
    pub inside: Vec<usize>,
    pub outside: Vec<usize>,
    pub chart: MoebiusTransform,
}

/// Index of the candidate farthest from all curves; near-ties go to the
/// candidate closest to ∞.
pub fn farthest_candidate(curves: &[JordanCurve], candidates: &[SpherePoint]) -> Option<usize> {
    let origin = SpherePoint::from_re_im(0.0, 0.0);
    candidates
        .iter()
        .map(|p| (curves.iter().map(|c| c.distance_to(p)).fold(f64::INFINITY, f64::min), chordal_distance(p, &origin)))
        .enumerate()
        .fold(None::<(usize, (f64, f64))>, |acc, x| match acc {
            Some(a) if a.1 .0 > x.1 .0 + 1e-12 => Some(a),
            Some(a) if (a.1 .0 - x.1 .0).abs() <= 1e-12 && a.1 .1 >= x.1 .1 => Some(a),
            _ => Some(x),
        })
        .map(|(i, _)| i)
}

/// Chart sending the candidate farthest from all curves to ∞.
pub fn designated_chart(curves: &[JordanCurve], candidates: &[SpherePoint]) -> MoebiusTransform {
    match farthest_candidate(curves, candidates).and_then(|i| candidates[i].affine()) {
        None => MoebiusTransform::identity(),
        Some(z) => MoebiusTransform::send_to_infinity(z),
    }
}

pub fn winding_number(curve: &JordanCurve, p: &SpherePoint, chart: &MoebiusTransform) -> Result<i32> {
    let q = match chart.apply(p).affine() {
        Some(q) => q,
        None => return Ok(0),
    };
    let mut pts = Vec::with_capacity(curve.len());
    for s in curve.samples() {
        match chart.apply(s).affine() {
            Some(z) => pts.push(z - q),
            None => return Err(Error::ChartDegenerate),
        }
    }
    let n = pts.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        if a.norm() < 1e-9 {
            return Err(Error::PointOnCurve);
        }
        total += (b / a).arg();
    }
    let w = total / std::f64::consts::TAU;
    let r = w.round();
    if (w - r).abs() >= 0.05 {
        return Err(Error::PointOnCurve);
    }
    Ok(r as i32)
}

pub fn side_partition(curve: &JordanCurve, points: &PostcriticalSet, chart: &MoebiusTransform) -> Result<SideAssignment> {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (i, p) in points.points.iter().enumerate() {
        match winding_number(curve, p, chart)? {
            0 => outside.push(i),
            1 | -1 => inside.push(i),
            w => return Err(Error::Invalid(format!("winding number {w} around a Jordan curve"))),
        }
    }
    Ok(SideAssignment { inside, outside, chart: *chart })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;
    use crate::numeric::C64;

    #[test]
    fn unit_circle_windings() {
        let c = CurveSpec::circle(C64::new(0.0, 0.0), 1.0).sample(128).unwrap();
        let id = MoebiusTransform::identity();
        assert_eq!(winding_number(&c, &SpherePoint::from_re_im(0.0, 0.0), &id).unwrap(), 1);
        assert_eq!(winding_number(&c, &SpherePoint::from_re_im(2.0, 0.0), &id).unwrap(), 0);
        assert_eq!(winding_number(&c.reversed(), &SpherePoint::from_re_im(0.0, 0.0), &id).unwrap(), -1);
    }

    #[test]
    fn chart_moving_a_point_to_infinity() {
        let c = CurveSpec::circle(C64::new(0.0, 0.0), 1.0).sample(128).unwrap();
        let chart = MoebiusTransform::send_to_infinity(C64::new(0.0, 0.0));
        // In this chart the old exterior becomes the bounded side.
        assert_ne!(winding_number(&c, &SpherePoint::INFINITY, &chart).unwrap(), 0);
        assert_eq!(winding_number(&c, &SpherePoint::from_re_im(0.0, 0.0), &chart).unwrap(), 0);
    }
}
