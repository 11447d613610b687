//! Simultaneous polynomial root finding (Aberth–Ehrlich iteration).

use super::poly::Polynomial;
use super::sphere::C64;
use super::tolerance::ToleranceConfig;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_ab3e;

/// All roots of `p`, counted with multiplicity.
///
/// Roots of a cluster (multiple root) are returned individually and are only
/// as accurate as the conditioning allows.
pub fn poly_roots(p: &Polynomial, tol: &ToleranceConfig) -> Result<Vec<C64>> {
    let d = p.degree();
    if p.is_zero() || d == 0 {
        return Err(Error::DegreeTooLow { min: 1, got: d });
    }
    // Exact roots at the origin are split off first.
    let k = p.low_zero_count(0.0);
    let q = p.shift_down(k);
    let mut roots = vec![C64::new(0.0, 0.0); k];
    let m = q.degree();
    if m == 1 {
        roots.push(-q.coeff(0) / q.coeff(1));
    } else if m > 1 {
        roots.extend(aberth(&q, tol)?);
    }
    Ok(roots)
}

fn aberth(p: &Polynomial, tol: &ToleranceConfig) -> Result<Vec<C64>> {
    let d = p.degree();
    let lead = p.leading();
    let coeffs = p.coeffs();
    let bound = 1.0
        + coeffs[..d]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    // Start radius: geometric-mean modulus estimate, clamped by the Cauchy bound.
    let gm = (coeffs[0] / lead).norm().powf(1.0 / d as f64);
    let radius = if gm > 0.0 && gm.is_finite() { gm.min(bound) } else { bound };
    let mut z: Vec<C64> = (0..d)
        .map(|j| {
            let theta = std::f64::consts::TAU * (j as f64) / (d as f64) + 0.4;
            C64::from_polar(radius, theta)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut done = vec![false; d];
    let eps = f64::EPSILON;
    let mut stall = 0usize;
    for sweep in 0..tol.max_iter {
        let mut moved = 0.0f64;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let zk = z[k];
            let ratio = newton_ratio(p, zk);
            let ratio = match ratio {
                Some(r) => r,
                None => {
                    done[k] = true;
                    continue;
                }
            };
            let mut s = C64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != k {
                    let diff = zk - zj;
                    if diff.norm() > 0.0 {
                        s += 1.0 / diff;
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - ratio * s;
            let step = if denom.norm() > 0.0 { ratio / denom } else { ratio };
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] = zk - step;
            let rel = step.norm() / (1.0 + z[k].norm());
            moved = moved.max(rel);
            let res = p.eval(z[k]).norm();
            let scale = p.abs_eval(z[k].norm());
            if rel <= 4.0 * eps || res <= 4.0 * (d as f64) * eps * scale {
                done[k] = true;
            }
        }
        if done.iter().all(|&b| b) {
            break;
        }
        if moved < 1e-3 {
            stall += 1;
        } else {
            stall = 0;
        }
        // Perturb the unconverged roots when progress stalls for a long time.
        if stall > 50 && sweep % 50 == 0 {
            for k in 0..d {
                if !done[k] {
                    let jitter = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    let s = 1e-3 * (1.0 + z[k].norm());
                    z[k] += jitter * s;
                }
            }
        }
    }
    for &r in &z {
        let res = p.eval(r).norm();
        let scale = p.abs_eval(r.norm().max(1.0));
        if !(res <= tol.eps_root * scale) {
            return Err(Error::NonConvergence { degree: d, sweeps: tol.max_iter });
        }
    }
    Ok(z)
}

/// Aberth sweeps from `start` driven by a caller-supplied Newton ratio `p / p'`.
///
/// `ratio` returns `None` at an exact root. Iteration stops once every step
/// is below `rel_step` relative to the root or after `max_sweeps`.
pub fn refine_roots(start: &[C64], ratio: impl Fn(C64) -> Option<C64>, rel_step: f64, max_sweeps: usize) -> Vec<C64> {
    let mut z = start.to_vec();
    let mut done = vec![false; z.len()];
    for _ in 0..max_sweeps {
        for k in 0..z.len() {
            if done[k] {
                continue;
            }
            let Some(r) = ratio(z[k]) else {
                done[k] = true;
                continue;
            };
            let s: C64 = z.iter().enumerate().filter(|&(j, zj)| j != k && (z[k] - zj).norm() > 0.0).map(|(_, zj)| 1.0 / (z[k] - zj)).sum();
            let denom = C64::new(1.0, 0.0) - r * s;
            let step = if denom.norm() > 0.0 { r / denom } else { r };
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] -= step;
            if step.norm() <= rel_step * (1.0 + z[k].norm()) {
                done[k] = true;
            }
        }
        if done.iter().all(|&b| b) {
            break;
        }
    }
    z
}

/// `p(z) / p'(z)`, evaluated through the reversed polynomial when `|z| > 1`.
fn newton_ratio(p: &Polynomial, z: C64) -> Option<C64> {
    let d = p.degree();
    if z.norm() <= 1.0 {
        let (v, dv) = p.eval_with_derivative(z);
        if v.norm() == 0.0 {
            return None;
        }
        Some(v / dv)
    } else {
        let w = 1.0 / z;
        let rev = p.reversed(d);
        let (q, dq) = rev.eval_with_derivative(w);
        if q.norm() == 0.0 {
            return None;
        }
        let denom = w * (C64::new(d as f64, 0.0) - w * dq / q);
        Some(1.0 / denom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn quadratic_with_root_at_origin() {
        let r = sorted(poly_roots(&Polynomial::from_real(&[0.0, 2.0, 1.0]), &ToleranceConfig::default()).unwrap());
        assert!((r[0] + 2.0).norm() < 1e-14);
        assert!(r[1].norm() < 1e-14);
    }

    #[test]
    fn fourth_roots_of_unity() {
        let r = poly_roots(&Polynomial::from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]), &ToleranceConfig::default()).unwrap();
        assert_eq!(r.len(), 4);
        for z in r {
            assert!((z.powu(4) - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn double_root_cluster_is_reported_twice() {
        let p = Polynomial::from_real(&[1.0, -2.0, 1.0]);
        let r = poly_roots(&p, &ToleranceConfig::default()).unwrap();
        assert_eq!(r.len(), 2);
        for z in r {
            assert!((z - 1.0).norm() < 1e-7);
        }
    }

    #[test]
    fn wide_dynamic_range() {
        let p = Polynomial::from_roots(&[C64::new(1e-4, 0.0), C64::new(1.0, 1.0), C64::new(1e4, -3.0)]);
        let r = sorted(poly_roots(&p, &ToleranceConfig::default()).unwrap());
        assert!((r[0] - 1e-4).norm() < 1e-12);
        assert!((r[2] - C64::new(1e4, -3.0)).norm() < 1e-8);
    }
}
