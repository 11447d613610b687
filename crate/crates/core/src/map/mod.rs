//! Rational maps of the Riemann sphere.

mod compose;
mod critical;
mod orbit;

pub use compose::compose;
pub use critical::{critical_points, critical_values, CriticalPoint};
pub use orbit::{orbit_closure, postcritical_set, FunctionalGraph, PostcriticalSet};

use crate::error::{Error, Result};
use crate::numeric::{poly_roots, Polynomial, SpherePoint, ToleranceConfig, C64};
use serde::{Deserialize, Serialize};

/// `num(z) / den(z)` with coprime numerator and denominator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
    degree: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawMap {
    num: Polynomial,
    den: Polynomial,
}

impl TryFrom<RawMap> for RationalMap {
    type Error = Error;
    fn try_from(raw: RawMap) -> Result<Self> {
        RationalMap::new(raw.num, raw.den)
    }
}

impl From<RationalMap> for RawMap {
    fn from(m: RationalMap) -> Self {
        RawMap { num: m.num, den: m.den }
    }
}

impl RationalMap {
    /// Validates degree ≥ 1 and the absence of a common root.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        let m = Self::new_unchecked(num, den)?;
        m.check_coprime()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("denominator is identically zero".into()));
        }
        let degree = num.degree().max(den.degree());
        if num.is_zero() || degree == 0 {
            return Err(Error::DegreeTooLow { min: 1, got: 0 });
        }
        Ok(RationalMap { num, den, degree })
    }

    /// Builds a map from real coefficient slices, lowest degree first.
    pub fn from_real(num: &[f64], den: &[f64]) -> Result<Self> {
        Self::new(Polynomial::from_real(num), Polynomial::from_real(den))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn check_coprime(&self) -> Result<()> {
        let (a, b) = if self.num.degree() <= self.den.degree() {
            (&self.num, &self.den)
        } else {
            (&self.den, &self.num)
        };
        if a.degree() == 0 {
            return Ok(());
        }
        let roots = poly_roots(a, &ToleranceConfig::default())?;
        for r in roots {
            if b.eval(r).norm() <= 1e-9 * b.abs_eval(r.norm().max(1.0)) {
                return Err(Error::CommonFactor(SpherePoint::finite(r).to_string()));
            }
        }
        Ok(())
    }

    /// Homogeneous evaluation; exact at poles and at ∞.
    pub fn evaluate(&self, p: &SpherePoint) -> Result<SpherePoint> {
        let (z, w) = (p.num(), p.den());
        let a = self.num.eval_homogeneous(z, w, self.degree);
        let b = self.den.eval_homogeneous(z, w, self.degree);
        let tiny = 1e-14 * self.num.scale().max(self.den.scale());
        if a.norm() < tiny && b.norm() < tiny {
            return Err(Error::IndeterminatePoint(p.to_string()));
        }
        SpherePoint::from_homogeneous(a, b).ok_or_else(|| Error::IndeterminatePoint(p.to_string()))
    }

    /// Evaluation at an affine point; panics only on an invalid map.
    pub fn eval_c(&self, z: C64) -> SpherePoint {
        self.evaluate(&SpherePoint::finite(z)).unwrap_or(SpherePoint::INFINITY)
    }

    /// All solutions of `R(z) = q`, with multiplicity.
    pub fn fiber(&self, q: &SpherePoint, tol: &ToleranceConfig) -> Result<Vec<SpherePoint>> {
        let d = self.degree;
        // q1 * num - q0 * den, homogeneous of degree d.
        let p = &self.num.scaled(q.den()) - &self.den.scaled(q.num());
        let lead = p.coeff(d).norm();
        let constant = p.coeff(0).norm();
        let mut out = Vec::with_capacity(d);
        if lead >= constant {
            let roots = poly_roots(&p, tol)?;
            out.extend(roots.into_iter().map(SpherePoint::finite));
            out.resize(d, SpherePoint::INFINITY);
        } else {
            let rev = p.reversed(d);
            let roots = poly_roots(&rev, tol)?;
            for w in roots {
                out.push(SpherePoint::from_homogeneous(C64::new(1.0, 0.0), w).unwrap());
            }
            // The reversed polynomial has degree d here since its leading term is p(0).
        }
        Ok(out)
    }
}

/// `R^n`, kept lazy: fibers are solved one step at a time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterateSpec {
    pub base: RationalMap,
    pub power: u32,
}

impl IterateSpec {
    pub fn new(base: RationalMap, power: u32) -> Result<Self> {
        if power == 0 {
            return Err(Error::Invalid("iterate power must be at least 1".into()));
        }
        Ok(IterateSpec { base, power })
    }
}

/// Common interface of a map and its lazy iterates.
pub trait Dynamics: Sync {
    fn degree(&self) -> usize;
    fn evaluate(&self, p: &SpherePoint) -> Result<SpherePoint>;
    fn fiber(&self, q: &SpherePoint, tol: &ToleranceConfig) -> Result<Vec<SpherePoint>>;
    fn base_map(&self) -> &RationalMap;
    fn power(&self) -> u32;
}

impl Dynamics for RationalMap {
    fn degree(&self) -> usize {
        self.degree
    }
    fn evaluate(&self, p: &SpherePoint) -> Result<SpherePoint> {
        RationalMap::evaluate(self, p)
    }
    fn fiber(&self, q: &SpherePoint, tol: &ToleranceConfig) -> Result<Vec<SpherePoint>> {
        RationalMap::fiber(self, q, tol)
    }
    fn base_map(&self) -> &RationalMap {
        self
    }
    fn power(&self) -> u32 {
        1
    }
}

impl Dynamics for IterateSpec {
    fn degree(&self) -> usize {
        self.base.degree.pow(self.power)
    }
    fn evaluate(&self, p: &SpherePoint) -> Result<SpherePoint> {
        let mut x = *p;
        for _ in 0..self.power {
            x = self.base.evaluate(&x)?;
        }
        Ok(x)
    }
    fn fiber(&self, q: &SpherePoint, tol: &ToleranceConfig) -> Result<Vec<SpherePoint>> {
        let mut layer = vec![*q];
        for _ in 0..self.power {
            let mut next = Vec::with_capacity(layer.len() * self.base.degree);
            for y in &layer {
                next.extend(self.base.fiber(y, tol)?);
            }
            layer = next;
        }
        Ok(layer)
    }
    fn base_map(&self) -> &RationalMap {
        &self.base
    }
    fn power(&self) -> u32 {
        self.power
    }
}
