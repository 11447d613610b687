use super::RationalMap;
use crate::error::{Error, Result};
use crate::numeric::{chordal_distance, poly_roots, Polynomial, SpherePoint, ToleranceConfig, C64};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    pub point: SpherePoint,
    pub multiplicity: usize,
}

const TRIM: f64 = 1e-13;
/// Roots of the Wronskian closer than this (relative) are treated as one
/// multiple root.
const CLUSTER: f64 = 2e-3;

/// Critical points with multiplicity; multiplicities sum to `2d - 2`.
///
/// Numerically split multiple roots are regrouped and replaced by the
/// refined cluster centre, so a critical point of multiplicity m is reported
/// once with `multiplicity = m`.
pub fn critical_points(r: &RationalMap, tol: &ToleranceConfig) -> Result<Vec<CriticalPoint>> {
    let d = r.degree();
    if d < 2 {
        return Err(Error::DegreeTooLow { min: 2, got: d });
    }
    let total = 2 * d - 2;
    let w = wronskian(r).trimmed(TRIM);
    let mut out = Vec::new();
    let at_zero = w.low_zero_count(TRIM).min(w.degree());
    if at_zero > 0 {
        out.push(CriticalPoint { point: SpherePoint::finite(C64::new(0.0, 0.0)), multiplicity: at_zero });
    }
    let core = w.shift_down(at_zero);
    if core.degree() > 0 {
        let roots = poly_roots(&core, tol)?;
        for (c, m) in cluster(&core, roots) {
            out.push(CriticalPoint { point: SpherePoint::finite(c), multiplicity: m });
        }
    }
    let finite: usize = out.iter().map(|c| c.multiplicity).sum();
    if finite < total {
        out.push(CriticalPoint { point: SpherePoint::INFINITY, multiplicity: total - finite });
    }
    Ok(out)
}

/// Distinct critical values, merged within `eps_orbit`.
pub fn critical_values(r: &RationalMap, tol: &ToleranceConfig) -> Result<Vec<SpherePoint>> {
    let mut vals: Vec<SpherePoint> = Vec::new();
    for c in critical_points(r, tol)? {
        let v = r.evaluate(&c.point)?.snapped(tol.eps_root);
        if !vals.iter().any(|u| chordal_distance(u, &v) <= tol.eps_orbit) {
            vals.push(v);
        }
    }
    Ok(vals)
}

/// `num' den - num den'` (its degree drops when ∞ is critical).
pub(crate) fn wronskian(r: &RationalMap) -> Polynomial {
    let (n, d) = (r.num(), r.den());
    &(&n.derivative() * d) - &(n * &d.derivative())
}

fn cluster(p: &Polynomial, roots: Vec<C64>) -> Vec<(C64, usize)> {
    let n = roots.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn find(g: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while g[i] != i {
            g[i] = g[g[i]];
            i = g[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = 1.0f64.max(roots[i].norm()).max(roots[j].norm());
            if (roots[i] - roots[j]).norm() < CLUSTER * scale {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                if a != b {
                    group[b] = a;
                }
            }
        }
    }
    let mut out: Vec<(C64, usize, usize)> = Vec::new();
    for i in 0..n {
        let g = find(&mut group, i);
        match out.iter_mut().find(|(_, _, id)| *id == g) {
            Some(entry) => {
                entry.0 += roots[i];
                entry.1 += 1;
            }
            None => out.push((roots[i], 1, g)),
        }
    }
    out.into_iter()
        .map(|(sum, m, _)| {
            let centre = sum / m as f64;
            (if m > 1 { refine_multiple(p, centre, m) } else { centre }, m)
        })
        .collect()
}

/// Newton on the (m-1)-th derivative, where a root of multiplicity m is simple.
fn refine_multiple(p: &Polynomial, start: C64, m: usize) -> C64 {
    let q = p.nth_derivative(m - 1);
    let mut z = start;
    for _ in 0..30 {
        let (v, dv) = q.eval_with_derivative(z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        if !(step.norm() < CLUSTER * (1.0 + z.norm())) {
            return start;
        }
        z -= step;
        if step.norm() < 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}
