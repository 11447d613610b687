use super::{critical_values, RationalMap};
use crate::error::{Error, Result};
use crate::numeric::{chordal_distance, SpherePoint, ToleranceConfig};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PostcriticalSet {
    pub points: Vec<SpherePoint>,
    pub labels: Vec<Option<String>>,
    pub finite: bool,
}

impl PostcriticalSet {
    pub fn new(points: Vec<SpherePoint>) -> Self {
        let labels = vec![None; points.len()];
        PostcriticalSet { points, labels, finite: true }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the stored point within `eps` of `p`.
    pub fn find(&self, p: &SpherePoint, eps: f64) -> Option<usize> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, q)| (i, chordal_distance(p, q)))
            .filter(|&(_, d)| d <= eps)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    }
}

/// The action of a map on a finite invariant set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionalGraph {
    pub node_count: usize,
    pub successor: Vec<usize>,
}

impl FunctionalGraph {
    pub fn new(successor: Vec<usize>) -> Self {
        FunctionalGraph { node_count: successor.len(), successor }
    }

    /// Image of node `i` under the `n`-th iterate.
    pub fn iterate(&self, i: usize, n: u32) -> usize {
        (0..n).fold(i, |x, _| self.successor[x])
    }

    /// Period of `i` if it is periodic.
    pub fn period(&self, i: usize) -> Option<usize> {
        let mut x = self.successor[i];
        for p in 1..=self.node_count {
            if x == i {
                return Some(p);
            }
            x = self.successor[x];
        }
        None
    }

    /// Lists every directed cycle once, starting from its smallest node.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.node_count {
            if let Some(p) = self.period(i) {
                let cyc: Vec<usize> = (0..p).map(|k| self.iterate(i, k as u32)).collect();
                if cyc.iter().min() == Some(&i) {
                    out.push(cyc);
                }
            }
        }
        out
    }
}

/// Forward orbits of the critical values, closed up within `eps_orbit`.
///
/// Every detected cycle is followed for one more full lap and must land back
/// on its starting point, so slowly converging orbits are not mistaken for
/// periodic ones.
pub fn postcritical_set(r: &RationalMap, tol: &ToleranceConfig) -> Result<(PostcriticalSet, FunctionalGraph)> {
    orbit_closure(&critical_values(r, tol)?, |p| r.evaluate(p), tol)
}

/// Forward orbits of `seeds` under `f`, closed up within `eps_orbit`, with
/// the same cycle confirmation as [`postcritical_set`].
pub fn orbit_closure<F>(seeds: &[SpherePoint], f: F, tol: &ToleranceConfig) -> Result<(PostcriticalSet, FunctionalGraph)>
where
    F: Fn(&SpherePoint) -> Result<SpherePoint>,
{
    let mut points: Vec<SpherePoint> = Vec::new();
    for v in seeds {
        let v = v.snapped(tol.eps_root);
        if !points.iter().any(|p| chordal_distance(p, &v) <= tol.eps_orbit) {
            points.push(v);
        }
    }
    let mut successor = Vec::new();
    let mut i = 0;
    while i < points.len() {
        if points.len() > tol.max_iter {
            return Err(Error::OrbitBudgetExceeded(tol.max_iter));
        }
        let image = f(&points[i])?.snapped(tol.eps_root);
        let hit = points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, chordal_distance(p, &image)))
            .filter(|&(_, d)| d <= tol.eps_orbit)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(j, _)| j);
        match hit {
            Some(j) => successor.push(j),
            None => {
                points.push(image);
                successor.push(points.len() - 1);
            }
        }
        i += 1;
    }
    let graph = FunctionalGraph::new(successor);
    for cycle in graph.cycles() {
        let start = points[cycle[0]];
        let mut x = start;
        for &node in cycle.iter().cycle().skip(1).take(cycle.len()) {
            x = f(&x)?;
            if chordal_distance(&x, &points[node]) > tol.eps_orbit {
                return Err(Error::OrbitBudgetExceeded(tol.max_iter));
            }
        }
    }
    Ok((PostcriticalSet::new(points), graph))
}
