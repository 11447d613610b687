use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

pub type C64 = Complex64;

/// A point of the Riemann sphere in homogeneous coordinates `[num : den]`,
/// scaled so that the larger of the two moduli is exactly 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    num: C64,
    den: C64,
}

impl SpherePoint {
    pub const INFINITY: SpherePoint = SpherePoint {
        num: C64 { re: 1.0, im: 0.0 },
        den: C64 { re: 0.0, im: 0.0 },
    };

    /// Builds a point from homogeneous coordinates. Returns `None` when both
    /// vanish or either is not finite.
    pub fn from_homogeneous(num: C64, den: C64) -> Option<Self> {
        if !(num.re.is_finite() && num.im.is_finite() && den.re.is_finite() && den.im.is_finite()) {
            return None;
        }
        let m = num.norm().max(den.norm());
        if m == 0.0 {
            return None;
        }
        Some(SpherePoint { num: num / m, den: den / m })
    }

    pub fn finite(z: C64) -> Self {
        Self::from_homogeneous(z, C64::new(1.0, 0.0)).unwrap_or(Self::INFINITY)
    }

    pub fn from_re_im(re: f64, im: f64) -> Self {
        Self::finite(C64::new(re, im))
    }

    pub fn num(&self) -> C64 {
        self.num
    }

    pub fn den(&self) -> C64 {
        self.den
    }

    pub fn is_infinity(&self) -> bool {
        self.den == C64::new(0.0, 0.0)
    }

    /// Rounds a point within `eps` (in normalized homogeneous coordinates)
    /// of 0 or ∞ onto it exactly.
    pub fn snapped(&self, eps: f64) -> Self {
        if self.den.norm() <= eps {
            SpherePoint::INFINITY
        } else if self.num.norm() <= eps {
            SpherePoint::finite(C64::new(0.0, 0.0))
        } else {
            *self
        }
    }

    /// The affine coordinate, or `None` at ∞.
    pub fn affine(&self) -> Option<C64> {
        if self.is_infinity() {
            None
        } else {
            Some(self.num / self.den)
        }
    }

    /// Affine coordinate with ∞ mapped to a non-finite value.
    pub fn to_complex(&self) -> C64 {
        self.affine().unwrap_or(C64::new(f64::INFINITY, f64::INFINITY))
    }

    pub fn chordal(&self, other: &SpherePoint) -> f64 {
        chordal_distance(self, other)
    }
}

impl From<C64> for SpherePoint {
    fn from(z: C64) -> Self {
        SpherePoint::finite(z)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            None => write!(f, "inf"),
            Some(z) if z.im >= 0.0 => write!(f, "{}+{}i", z.re, z.im),
            Some(z) => write!(f, "{}-{}i", z.re, -z.im),
        }
    }
}

/// Chordal distance on the unit-sphere model, with values in `[0, 2]`.
pub fn chordal_distance(p: &SpherePoint, q: &SpherePoint) -> f64 {
    // |z1 w2 - z2 w1| / (|(z1,w1)| |(z2,w2)|), times 2.
    let cross = p.num * q.den - q.num * p.den;
    let np = (p.num.norm_sqr() + p.den.norm_sqr()).sqrt();
    let nq = (q.num.norm_sqr() + q.den.norm_sqr()).sqrt();
    (2.0 * cross.norm() / (np * nq)).min(2.0)
}

/// Converts a chordal step at `z` into the matching affine step length.
pub fn chordal_to_affine(z: C64, delta: f64) -> f64 {
    0.5 * delta * (1.0 + z.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_infinity_are_antipodal() {
        let d = chordal_distance(&SpherePoint::finite(C64::new(0.0, 0.0)), &SpherePoint::INFINITY);
        assert!((d - 2.0).abs() < 1e-15);
    }

    #[test]
    fn normalization_keeps_max_modulus_one() {
        let p = SpherePoint::from_homogeneous(C64::new(3.0, 4.0), C64::new(0.5, 0.0)).unwrap();
        assert!((p.num().norm().max(p.den().norm()) - 1.0).abs() < 1e-14);
        assert!((p.affine().unwrap() - C64::new(6.0, 8.0)).norm() < 1e-12);
    }

    #[test]
    fn rejects_zero_vector() {
        assert!(SpherePoint::from_homogeneous(C64::new(0.0, 0.0), C64::new(0.0, 0.0)).is_none());
    }
}
