//! Equator and orientation-reversing equator verdicts, and fold reports.

mod candidates;

pub use candidates::candidate_curves;

use crate::curve::{designated_chart, lift_iterate, side_partition, JordanCurve, LiftOptions, SideAssignment};
use crate::error::{Error, Result};
use crate::isotopy::{build_chart, classify_in_chart, IsotopyClass};
use crate::map::{postcritical_set, FunctionalGraph, PostcriticalSet, RationalMap};
use crate::numeric::ToleranceConfig;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Two-colouring of the postcritical indices; index 0 is always white.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    pub white: Vec<usize>,
    pub black: Vec<usize>,
}

impl Bipartition {
    /// Canonical form of the split `side` / complement of `0..m`.
    pub fn from_side(side: &[usize], m: usize) -> Result<Self> {
        let mut in_side = vec![false; m];
        for &i in side {
            if i >= m {
                return Err(Error::Invalid(format!("index {i} out of range")));
            }
            in_side[i] = true;
        }
        let flip = !in_side.first().copied().unwrap_or(false);
        let white: Vec<usize> = (0..m).filter(|&i| in_side[i] != flip).collect();
        let black: Vec<usize> = (0..m).filter(|&i| in_side[i] == flip).collect();
        if white.is_empty() || black.is_empty() {
            return Err(Error::Invalid("trivial bipartition".into()));
        }
        Ok(Bipartition { white, black })
    }

    fn colour(&self, m: usize) -> Vec<bool> {
        let mut c = vec![false; m];
        for &i in &self.white {
            c[i] = true;
        }
        c
    }
}

/// All `2^(m-1) - 1` canonical bipartitions of `m` points.
pub fn enumerate_bipartitions(m: usize) -> Vec<Bipartition> {
    if m < 2 {
        return Vec::new();
    }
    (0u64..(1u64 << (m - 1)) - 1)
        .map(|mask| {
            // Bit j set: point j + 1 is white. Mask all ones would be trivial.
            let white: Vec<usize> = std::iter::once(0).chain((1..m).filter(|&i| mask >> (i - 1) & 1 == 1)).collect();
            let black: Vec<usize> = (1..m).filter(|&i| mask >> (i - 1) & 1 == 0).collect();
            Bipartition { white, black }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartitionStatus {
    Immune,
    Swapping,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDynamics {
    /// Entry `n - 1` is the status under the `n`-th iterate.
    pub levels: Vec<PartitionStatus>,
}

impl PartitionDynamics {
    pub fn at(&self, n: u32) -> PartitionStatus {
        self.levels[n as usize - 1]
    }
}

pub fn partition_status(g: &FunctionalGraph, b: &Bipartition, n: u32) -> PartitionStatus {
    let colour = b.colour(g.node_count);
    let (mut keep, mut swap) = (true, true);
    for i in 0..g.node_count {
        let same = colour[g.iterate(i, n)] == colour[i];
        keep &= same;
        swap &= !same;
    }
    if keep {
        PartitionStatus::Immune
    } else if swap {
        PartitionStatus::Swapping
    } else {
        PartitionStatus::Neither
    }
}

pub fn partition_dynamics(g: &FunctionalGraph, b: &Bipartition, depth: u32) -> PartitionDynamics {
    PartitionDynamics { levels: (1..=depth).map(|n| partition_status(g, b, n)).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "components")]
pub enum Outcome {
    Equator,
    OREquator,
    Splits(usize),
    NotIsotopic,
    Inessential,
    PartitionIncompatible,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Diagnostics {
    pub bipartition: Bipartition,
    pub status: PartitionStatus,
    pub sides: SideAssignment,
    pub components: Option<usize>,
    pub lifted_samples: Option<usize>,
    pub source_word: Option<String>,
    pub lift_word: Option<String>,
    pub isotopy: Option<IsotopyClass>,
    /// Set when the isotopy verdict contradicts the partition dynamics.
    pub inconsistency: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquatorVerdict {
    pub outcome: Outcome,
    pub level: u32,
    pub diagnostics: Diagnostics,
}

/// Postcritical data shared by many classifications of one map.
#[derive(Clone, Debug)]
pub struct MapContext<'a> {
    pub map: &'a RationalMap,
    pub set: PostcriticalSet,
    pub graph: FunctionalGraph,
    pub tol: ToleranceConfig,
}

impl<'a> MapContext<'a> {
    pub fn new(map: &'a RationalMap, tol: &ToleranceConfig) -> Result<Self> {
        let (set, graph) = postcritical_set(map, tol)?;
        Ok(MapContext { map, set, graph, tol: *tol })
    }

    pub fn bipartition_of(&self, curve: &JordanCurve) -> Result<(Bipartition, SideAssignment)> {
        let chart = designated_chart(std::slice::from_ref(curve), &self.set.points);
        let sides = side_partition(curve, &self.set, &chart)?;
        Ok((Bipartition::from_side(&sides.inside, self.set.len())?, sides))
    }

    pub fn classify(&self, n: u32, curve: &JordanCurve) -> Result<EquatorVerdict> {
        if n == 0 {
            return Err(Error::Invalid("level must be at least 1".into()));
        }
        let (bipartition, sides) = self.bipartition_of(curve)?;
        let status = partition_status(&self.graph, &bipartition, n);
        let mut diagnostics = Diagnostics {
            bipartition,
            status,
            sides,
            components: None,
            lifted_samples: None,
            source_word: None,
            lift_word: None,
            isotopy: None,
            inconsistency: None,
        };
        let verdict = |outcome, diagnostics| Ok(EquatorVerdict { outcome, level: n, diagnostics });
        if status == PartitionStatus::Neither {
            return verdict(Outcome::PartitionIncompatible, diagnostics);
        }
        let lifts = lift_iterate(self.map, n, curve, &self.tol, &LiftOptions::default())?;
        let lifted = lifts.into_iter().last().expect("n >= 1");
        let count = lifted.component_count();
        diagnostics.components = Some(count);
        diagnostics.lifted_samples = Some(lifted.curves.total_samples());
        if count > 1 {
            return verdict(Outcome::Splits(count), diagnostics);
        }
        let lift = &lifted.curves.components[0];
        let chart = build_chart(&self.set.points, &[curve.clone(), lift.clone()])?;
        let (class, ws, wl) = classify_in_chart(&chart, curve, lift)?;
        diagnostics.source_word = Some(ws.to_string());
        diagnostics.lift_word = Some(wl.to_string());
        diagnostics.isotopy = Some(class);
        let outcome = match class {
            IsotopyClass::OrientationPreserving if status == PartitionStatus::Immune => Outcome::Equator,
            IsotopyClass::OrientationReversing if status == PartitionStatus::Swapping => Outcome::OREquator,
            IsotopyClass::OrientationPreserving | IsotopyClass::OrientationReversing => {
                diagnostics.inconsistency = Some(format!("isotopy {class:?} contradicts partition status {status:?}"));
                Outcome::NotIsotopic
            }
            IsotopyClass::NotIsotopic => Outcome::NotIsotopic,
            IsotopyClass::Inessential => Outcome::Inessential,
        };
        verdict(outcome, diagnostics)
    }
}

/// Side partition, dynamics gate, lift through `R^n`, then isotopy of the
/// lift against the source curve.
pub fn classify_curve(r: &RationalMap, n: u32, curve: &JordanCurve, tol: &ToleranceConfig) -> Result<EquatorVerdict> {
    MapContext::new(r, tol)?.classify(n, curve)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "level")]
pub enum Conclusion {
    MatingAtFold(u32),
    ORMatingEvidence,
    NoEquatorFoundUpTo(u32),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Finding {
    pub level: u32,
    pub bipartition: Bipartition,
    pub status: PartitionStatus,
    pub candidate: usize,
    pub injected: bool,
    pub outcome: Option<Outcome>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrEvidence {
    pub level: u32,
    pub candidate: usize,
    /// Verdict of the same curve at twice the level, when that was in range.
    pub doubled: Option<Outcome>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnmatabilityReport {
    pub map_id: String,
    pub depth: u32,
    /// The fold search assumes a hyperbolic map; this is the caller's assertion.
    pub hyperbolic_asserted: bool,
    pub postcritical_points: usize,
    pub findings: Vec<Finding>,
    pub or_evidence: Vec<OrEvidence>,
    pub conclusion: Conclusion,
}

/// Breadth-first search over levels `1..=depth` for equators among the
/// injected curves and generated candidates.
pub fn fold_report(
    map_id: &str,
    r: &RationalMap,
    depth: u32,
    injected: &[JordanCurve],
    tol: &ToleranceConfig,
) -> Result<UnmatabilityReport> {
    let ctx = MapContext::new(r, tol)?;
    let m = ctx.set.len();
    let mut pool: Vec<(Bipartition, JordanCurve, bool)> = Vec::new();
    for c in injected {
        if let Ok((b, _)) = ctx.bipartition_of(c) {
            pool.push((b, c.clone(), true));
        }
    }
    for b in enumerate_bipartitions(m) {
        if let Ok(cs) = candidate_curves(&ctx.set, &b, tol) {
            pool.extend(cs.into_iter().map(|c| (b.clone(), c, false)));
        }
    }
    let mut report = UnmatabilityReport {
        map_id: map_id.to_string(),
        depth,
        hyperbolic_asserted: true,
        postcritical_points: m,
        findings: Vec::new(),
        or_evidence: Vec::new(),
        conclusion: Conclusion::NoEquatorFoundUpTo(depth),
    };
    for n in 1..=depth {
        let active: Vec<usize> = (0..pool.len())
            .filter(|&i| partition_status(&ctx.graph, &pool[i].0, n) != PartitionStatus::Neither)
            .collect();
        let results: Vec<(usize, Result<EquatorVerdict>)> = active.par_iter().map(|&i| (i, ctx.classify(n, &pool[i].1))).collect();
        let mut equator = false;
        for (i, res) in results {
            let (b, _, inj) = &pool[i];
            let mut finding = Finding {
                level: n,
                bipartition: b.clone(),
                status: partition_status(&ctx.graph, b, n),
                candidate: i,
                injected: *inj,
                outcome: None,
                error: None,
            };
            match res {
                Ok(v) => {
                    if v.outcome == Outcome::Equator {
                        equator = true;
                    }
                    if v.outcome == Outcome::OREquator {
                        let doubled = if 2 * n <= depth {
                            Some(ctx.classify(2 * n, &pool[i].1).map(|v| v.outcome).unwrap_or(Outcome::NotIsotopic))
                        } else {
                            None
                        };
                        report.or_evidence.push(OrEvidence { level: n, candidate: i, doubled });
                    }
                    finding.outcome = Some(v.outcome);
                }
                Err(e) => finding.error = Some(e.to_string()),
            }
            report.findings.push(finding);
        }
        if equator {
            report.conclusion = Conclusion::MatingAtFold(n);
            return Ok(report);
        }
    }
    if !report.or_evidence.is_empty() {
        report.conclusion = Conclusion::ORMatingEvidence;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{SpherePoint, C64};

    fn four_cycle() -> FunctionalGraph {
        FunctionalGraph::new(vec![1, 2, 3, 0])
    }

    #[test]
    fn counts_of_bipartitions() {
        assert_eq!(enumerate_bipartitions(2).len(), 1);
        assert_eq!(enumerate_bipartitions(3).len(), 3);
        assert_eq!(enumerate_bipartitions(4).len(), 7);
        for b in enumerate_bipartitions(5) {
            assert!(b.white.contains(&0));
            assert_eq!(b.white.len() + b.black.len(), 5);
        }
    }

    #[test]
    fn four_cycle_statuses() {
        let g = four_cycle();
        // Opposite points of the cycle: swapped by the map, kept by its square.
        let opposite = Bipartition::from_side(&[0, 2], 4).unwrap();
        assert_eq!(partition_dynamics(&g, &opposite, 3).levels, vec![PartitionStatus::Swapping, PartitionStatus::Immune, PartitionStatus::Swapping]);
        // Adjacent points: swapped only by the square.
        let adjacent = Bipartition::from_side(&[0, 1], 4).unwrap();
        assert_eq!(partition_status(&g, &adjacent, 2), PartitionStatus::Swapping);
        assert_eq!(partition_status(&g, &adjacent, 4), PartitionStatus::Immune);
    }

    #[test]
    fn canonical_form_flips_complement() {
        let a = Bipartition::from_side(&[1, 2], 4).unwrap();
        let b = Bipartition::from_side(&[0, 3], 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.white, vec![0, 3]);
    }

    #[test]
    fn squaring_circle_is_equator() {
        let r = RationalMap::from_real(&[0.0, 0.0, 1.0], &[1.0]).unwrap();
        let c = crate::curve::CurveSpec::circle(C64::new(0.0, 0.0), 1.5).sample(256).unwrap();
        let v = classify_curve(&r, 1, &c, &ToleranceConfig::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Equator);
        let _ = SpherePoint::INFINITY;
    }

    #[test]
    fn inverse_square_circle_is_or_equator() {
        let r = RationalMap::from_real(&[-1.0], &[0.0, 0.0, 1.0]).unwrap();
        let c = crate::curve::CurveSpec::circle(C64::new(0.0, 0.0), 1.5).sample(256).unwrap();
        let tol = ToleranceConfig::default();
        assert_eq!(classify_curve(&r, 1, &c, &tol).unwrap().outcome, Outcome::OREquator);
        assert_eq!(classify_curve(&r, 2, &c, &tol).unwrap().outcome, Outcome::Equator);
    }
}
