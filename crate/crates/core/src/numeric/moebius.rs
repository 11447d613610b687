use super::sphere::{SpherePoint, C64};
use serde::{Deserialize, Serialize};

/// `z -> (a z + b) / (c z + d)`, stored with determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusTransform {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl MoebiusTransform {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Option<Self> {
        let det = a * d - b * c;
        if det.norm() <= 1e-12 * (a.norm() + b.norm()) * (c.norm() + d.norm()) || det.norm() == 0.0 {
            return None;
        }
        let s = det.sqrt();
        Some(MoebiusTransform { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        MoebiusTransform { a: one, b: zero, c: zero, d: one }
    }

    pub fn rotation(theta: f64) -> Self {
        let h = C64::from_polar(1.0, theta / 2.0);
        let zero = C64::new(0.0, 0.0);
        MoebiusTransform { a: h, b: zero, c: zero, d: h.conj() }
    }

    /// `z -> 1 / (z - p)`, sending `p` to ∞ and ∞ to 0.
    pub fn send_to_infinity(p: C64) -> Self {
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        // Determinant -1; scaled by 1/i.
        let i = C64::new(0.0, 1.0);
        MoebiusTransform { a: zero, b: -i * one, c: -i * one, d: i * p }
    }

    pub fn inverse(&self) -> Self {
        MoebiusTransform { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &MoebiusTransform) -> Self {
        MoebiusTransform {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        moebius_apply(self, p)
    }
}

pub fn moebius_apply(m: &MoebiusTransform, p: &SpherePoint) -> SpherePoint {
    let (z, w) = (p.num(), p.den());
    SpherePoint::from_homogeneous(m.a * z + m.b * w, m.c * z + m.d * w)
        .expect("invertible transform never maps to the zero vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::sphere::chordal_distance;

    #[test]
    fn inversion_swaps_zero_and_infinity() {
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let m = MoebiusTransform::new(zero, one, one, zero).unwrap();
        assert!(m.apply(&SpherePoint::finite(zero)).is_infinity());
    }

    #[test]
    fn affine_scaling_fixes_infinity() {
        let m = MoebiusTransform::new(C64::new(-2.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)).unwrap();
        assert!(m.apply(&SpherePoint::INFINITY).is_infinity());
    }

    #[test]
    fn inverse_round_trip() {
        let m = MoebiusTransform::new(C64::new(1.0, 2.0), C64::new(-0.5, 0.0), C64::new(0.3, -1.0), C64::new(2.0, 0.1)).unwrap();
        let p = SpherePoint::from_re_im(0.25, -3.0);
        let q = m.apply(&m.inverse().apply(&p));
        assert!(chordal_distance(&p, &q) < 1e-12);
    }
}
