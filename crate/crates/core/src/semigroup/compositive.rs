//! Postcritical sets of compositions of postcritically finite maps.

use crate::error::Result;
use crate::map::{critical_values, orbit_closure, postcritical_set, FunctionalGraph, PostcriticalSet, RationalMap};
use crate::numeric::{SpherePoint, ToleranceConfig};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompositiveReport {
    pub p1: Vec<SpherePoint>,
    pub p2: Vec<SpherePoint>,
    pub v1: Vec<SpherePoint>,
    /// Postcritical set of `R1 ∘ R2`.
    pub p12: Vec<SpherePoint>,
    pub v12: Vec<SpherePoint>,
    /// Both maps send `P1 ∪ P2` into itself.
    pub lemma_hypothesis: bool,
    /// `P12 ⊂ P1 ∪ P2`.
    pub containment: bool,
    /// `P2 ⊂ P1 = V1` and `R2(P1) ⊂ P1`.
    pub corollary_hypothesis: bool,
    /// `P12 = V12 = P1`; evaluated only under the corollary hypothesis.
    pub corollary_equality: Option<bool>,
}

impl CompositiveReport {
    /// False when a hypothesis holds but its conclusion does not.
    pub fn consistent(&self) -> bool {
        (!self.lemma_hypothesis || self.containment) && self.corollary_equality != Some(false)
    }
}

/// `P(R1 ∘ R2)` without expanding the composition: the critical values are
/// `R1(V(R2)) ∪ V(R1)`, followed under `z -> R1(R2(z))`.
pub fn postcritical_of_composition(
    r1: &RationalMap,
    r2: &RationalMap,
    tol: &ToleranceConfig,
) -> Result<(PostcriticalSet, FunctionalGraph, Vec<SpherePoint>)> {
    let mut seeds: Vec<SpherePoint> = critical_values(r2, tol)?.iter().map(|v| r1.evaluate(v)).collect::<Result<_>>()?;
    seeds.extend(critical_values(r1, tol)?);
    let (set, graph) = orbit_closure(&seeds, |z| r1.evaluate(&r2.evaluate(z)?), tol)?;
    let v12 = dedup(seeds.iter().map(|v| v.snapped(tol.eps_root)).collect(), tol.eps_orbit);
    Ok((set, graph, v12))
}

pub fn compositive_trick_check(r1: &RationalMap, r2: &RationalMap, tol: &ToleranceConfig) -> Result<CompositiveReport> {
    let eps = tol.eps_orbit;
    let p1 = postcritical_set(r1, tol)?.0.points;
    let p2 = postcritical_set(r2, tol)?.0.points;
    let v1 = critical_values(r1, tol)?;
    let (p12, _, v12) = postcritical_of_composition(r1, r2, tol)?;
    let p12 = p12.points;
    let union = dedup(p1.iter().chain(&p2).copied().collect(), eps);
    let maps_into = |r: &RationalMap, from: &[SpherePoint], to: &[SpherePoint]| -> Result<bool> {
        Ok(from.iter().map(|p| r.evaluate(p)).collect::<Result<Vec<_>>>()?.iter().all(|q| contains(to, q, eps)))
    };
    let lemma_hypothesis = maps_into(r1, &union, &union)? && maps_into(r2, &union, &union)?;
    let containment = subset(&p12, &union, eps);
    let corollary_hypothesis = subset(&p2, &p1, eps) && same_set(&p1, &v1, eps) && maps_into(r2, &p1, &p1)?;
    let corollary_equality = corollary_hypothesis.then(|| same_set(&p12, &p1, eps) && same_set(&v12, &p1, eps));
    Ok(CompositiveReport { p1, p2, v1, p12, v12, lemma_hypothesis, containment, corollary_hypothesis, corollary_equality })
}

fn contains(set: &[SpherePoint], p: &SpherePoint, eps: f64) -> bool {
    set.iter().any(|q| q.chordal(p) <= eps)
}

fn subset(a: &[SpherePoint], b: &[SpherePoint], eps: f64) -> bool {
    a.iter().all(|p| contains(b, p, eps))
}

fn same_set(a: &[SpherePoint], b: &[SpherePoint], eps: f64) -> bool {
    subset(a, b, eps) && subset(b, a, eps)
}

fn dedup(points: Vec<SpherePoint>, eps: f64) -> Vec<SpherePoint> {
    let mut out: Vec<SpherePoint> = Vec::new();
    for p in points {
        if !contains(&out, &p, eps) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::compose;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn squaring_with_itself() {
        let sq = RationalMap::from_real(&[0.0, 0.0, 1.0], &[1.0]).unwrap();
        let rep = compositive_trick_check(&sq, &sq, &tol()).unwrap();
        assert_eq!(rep.p12.len(), 2);
        assert!(rep.lemma_hypothesis && rep.containment);
        assert_eq!(rep.corollary_equality, Some(true));
    }

    #[test]
    fn basilica_after_squaring() {
        let b = RationalMap::from_real(&[-1.0, 0.0, 1.0], &[1.0]).unwrap();
        let sq = RationalMap::from_real(&[0.0, 0.0, 1.0], &[1.0]).unwrap();
        let rep = compositive_trick_check(&b, &sq, &tol()).unwrap();
        assert!(rep.containment);
        // Expanded composition z^4 - 1 as an independent route.
        let direct = postcritical_set(&compose(&b, &sq).unwrap(), &tol()).unwrap().0;
        assert_eq!(direct.len(), rep.p12.len());
        assert!(subset(&direct.points, &rep.p12, 1e-9));
    }
}
