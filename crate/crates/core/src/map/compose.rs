use super::RationalMap;
use crate::error::{Error, Result};
use crate::numeric::{poly_roots, Polynomial, ToleranceConfig};

const DEGREE_BUDGET: usize = 64;

/// Explicit coefficients of `r1 ∘ r2`, with common linear factors removed.
pub fn compose(r1: &RationalMap, r2: &RationalMap) -> Result<RationalMap> {
    let (d1, d2) = (r1.degree(), r2.degree());
    if d1 * d2 > DEGREE_BUDGET {
        return Err(Error::DegreeBudgetExceeded(d1 * d2));
    }
    let (n2, m2) = (r2.num(), r2.den());
    // Powers n2^i and m2^(d1-i) for i = 0..=d1.
    let npow: Vec<Polynomial> = (0..=d1).map(|i| n2.pow(i)).collect();
    let mpow: Vec<Polynomial> = (0..=d1).map(|i| m2.pow(i)).collect();
    let homog = |p: &Polynomial| {
        let mut acc = Polynomial::zero();
        for i in 0..=d1 {
            let c = p.coeff(i);
            if c.norm() != 0.0 {
                acc = &acc + &(&npow[i] * &mpow[d1 - i]).scaled(c);
            }
        }
        acc
    };
    let mut num = homog(r1.num());
    let mut den = homog(r1.den());
    // Strip shared roots, testing the roots of the smaller-degree side.
    let tol = ToleranceConfig::default();
    let num_is_small = num.degree() <= den.degree();
    let probe = if num_is_small { num.clone() } else { den.clone() };
    if probe.degree() > 0 {
        for r in poly_roots(&probe, &tol)? {
            let other = if num_is_small { &den } else { &num };
            let shared = other.degree() > 0
                && other.eval(r).norm() <= 1e-9 * other.abs_eval(r.norm().max(1.0));
            let this = if num_is_small { &num } else { &den };
            let still_root = this.degree() > 0
                && this.eval(r).norm() <= 1e-9 * this.abs_eval(r.norm().max(1.0));
            if shared && still_root {
                num = num.deflate(r);
                den = den.deflate(r);
            }
        }
    }
    RationalMap::new_unchecked(num, den)
}
