//! Bicritical maps `(a z^k + b) / (c z^k + d)` with `ad - bc = 1`.

use crate::error::{Error, Result};
use crate::map::RationalMap;
use crate::numeric::{Polynomial, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicriticalParams {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub k: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaMembership {
    pub in_omega1: bool,
    pub in_omega2: bool,
    pub in_omega3: bool,
    pub in_omega4: bool,
    pub in_omega_plus: bool,
    pub in_omega_minus: bool,
}

impl BicriticalParams {
    pub fn new(a: C64, b: C64, c: C64, d: C64, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Invalid(format!("bicritical exponent must be at least 2, got {k}")));
        }
        let det = a * d - b * c;
        if (det - 1.0).norm() > 1e-10 {
            return Err(Error::Invalid(format!("ad - bc = {det}, expected 1")));
        }
        Ok(BicriticalParams { a, b, c, d, k })
    }

    /// Rescales `(a, b, c, d)` by `1/sqrt(ad - bc)` (principal branch).
    pub fn normalized(a: C64, b: C64, c: C64, d: C64, k: u32) -> Result<Self> {
        let s = (a * d - b * c).sqrt();
        if s.norm() == 0.0 {
            return Err(Error::Invalid("singular parameter matrix".into()));
        }
        Self::new(a / s, b / s, c / s, d / s, k)
    }

    pub fn negated(&self) -> Self {
        BicriticalParams { a: -self.a, b: -self.b, c: -self.c, d: -self.d, k: self.k }
    }
}

pub fn bicritical_map(p: &BicriticalParams) -> Result<RationalMap> {
    let k = p.k as usize;
    let num = &Polynomial::monomial(p.a, k) + &Polynomial::constant(p.b);
    let den = &Polynomial::monomial(p.c, k) + &Polynomial::constant(p.d);
    RationalMap::new(num, den)
}

pub fn omega_membership(p: &BicriticalParams) -> OmegaMembership {
    let k = p.k;
    let (a, b, c, d) = (p.a, p.b, p.c, p.d);
    let m = [a, b, c, d].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let tol = 1e-9 * m.powi(k as i32 + 1).max(f64::MIN_POSITIVE);
    let zero = |x: C64| x.norm() <= tol;
    let in_omega1 = zero(c * b.powu(k) + d.powu(k + 1));
    let in_omega2 = zero(a.powu(k + 1) + b * c.powu(k));
    let in_omega3 = zero(a * b.powu(k - 1) + d.powu(k));
    let in_omega4 = zero(a.powu(k) + d * c.powu(k - 1));
    OmegaMembership {
        in_omega1,
        in_omega2,
        in_omega3,
        in_omega4,
        in_omega_plus: in_omega1 && in_omega2,
        in_omega_minus: in_omega3 && in_omega4,
    }
}

fn unit(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// A parameter in the plus family: critical 4-cycle `0 -> b/d -> ∞ -> a/c -> 0`.
pub fn omega_plus(k: u32) -> Result<BicriticalParams> {
    let one = C64::new(1.0, 0.0);
    if k % 2 == 1 {
        BicriticalParams::normalized(one, -one, one, one, k)
    } else {
        let zeta = unit(TAU / (k as f64 + 1.0));
        BicriticalParams::normalized(one, -one, -one, zeta, k)
    }
}

/// A parameter in the minus family: critical 2-cycles `0 <-> b/d`, `∞ <-> a/c`.
///
/// For `k = 3` this is the sample with map `(-z^3 + i) / (i z^3 - 1)`; for
/// `k >= 4` the root of unity construction `(z^k - ζ) / (z^k - 1)` with
/// `ζ^(k-1) = 1` is used.
pub fn omega_minus(k: u32) -> Result<BicriticalParams> {
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match k {
        2 => omega_minus_two(one),
        3 => BicriticalParams::normalized(-one, i, i, -one, 3),
        _ => {
            let zeta = unit(TAU / (k as f64 - 1.0));
            BicriticalParams::normalized(one, -zeta, one, -one, k)
        }
    }
}

/// `(0, b, -1/b, 0)`, whose map is `-b^2 / z^2`.
pub fn omega_minus_two(b: C64) -> Result<BicriticalParams> {
    let zero = C64::new(0.0, 0.0);
    BicriticalParams::new(zero, b, -1.0 / b, zero, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_parameters_in_no_family() {
        let one = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        let m = omega_membership(&BicriticalParams::new(one, z, z, one, 3).unwrap());
        assert!(!(m.in_omega1 || m.in_omega2 || m.in_omega3 || m.in_omega4));
    }

    #[test]
    fn samples_in_their_families() {
        for k in 2..=6 {
            assert!(omega_membership(&omega_plus(k).unwrap()).in_omega_plus, "plus k={k}");
        }
        for k in 3..=6 {
            assert!(omega_membership(&omega_minus(k).unwrap()).in_omega_minus, "minus k={k}");
        }
        assert!(omega_membership(&omega_minus_two(C64::new(2.0, 0.0)).unwrap()).in_omega_minus);
    }
}
