use super::JordanCurve;
use crate::error::{Error, Result};
use crate::numeric::{SpherePoint, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Parametric description of a closed curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveSpec {
    /// `center + radius e^{2πit}`, positively oriented.
    Circle { center: [f64; 2], radius: f64 },
    /// Pieces joined end to end; each piece may be traversed backwards to
    /// make the chain close up.
    ArcChain { pieces: Vec<Piece> },
    /// Closed polygon through the vertices in order.
    Polygon { vertices: Vec<[f64; 2]> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    /// `center + radius e^{2πit}` for `t` from `t0` to `t1`.
    Arc { center: [f64; 2], radius: f64, t0: f64, t1: f64 },
    Segment { from: [f64; 2], to: [f64; 2] },
}

fn c(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

impl Piece {
    pub fn arc(center: C64, radius: f64, t0: f64, t1: f64) -> Self {
        Piece::Arc { center: [center.re, center.im], radius, t0, t1 }
    }

    pub fn segment(from: C64, to: C64) -> Self {
        Piece::Segment { from: [from.re, from.im], to: [to.re, to.im] }
    }

    fn at(&self, s: f64) -> C64 {
        match self {
            Piece::Arc { center, radius, t0, t1 } => {
                let t = t0 + (t1 - t0) * s;
                c(*center) + C64::from_polar(*radius, TAU * t)
            }
            Piece::Segment { from, to } => c(*from) + (c(*to) - c(*from)) * s,
        }
    }

    fn length(&self) -> f64 {
        match self {
            Piece::Arc { radius, t0, t1, .. } => TAU * radius * (t1 - t0).abs(),
            Piece::Segment { from, to } => (c(*to) - c(*from)).norm(),
        }
    }
}

impl CurveSpec {
    pub fn circle(center: C64, radius: f64) -> Self {
        CurveSpec::Circle { center: [center.re, center.im], radius }
    }

    pub fn polygon(vertices: &[C64]) -> Self {
        CurveSpec::Polygon { vertices: vertices.iter().map(|z| [z.re, z.im]).collect() }
    }

    /// Uniform sampling by arc length, validated as a Jordan curve.
    pub fn sample(&self, resolution: usize) -> Result<JordanCurve> {
        let pts = self.points(resolution)?;
        JordanCurve::from_points_with_spec(pts.into_iter().map(SpherePoint::finite).collect(), Some(self.clone()))
    }

    pub(crate) fn points(&self, n: usize) -> Result<Vec<C64>> {
        match self {
            CurveSpec::Circle { center, radius } => {
                if !(*radius > 0.0) {
                    return Err(Error::Invalid("circle radius must be positive".into()));
                }
                Ok((0..n).map(|i| c(*center) + C64::from_polar(*radius, TAU * i as f64 / n as f64)).collect())
            }
            CurveSpec::Polygon { vertices } => {
                let pieces: Vec<Piece> = (0..vertices.len())
                    .map(|i| Piece::Segment { from: vertices[i], to: vertices[(i + 1) % vertices.len()] })
                    .collect();
                sample_chain(&pieces, &vec![false; pieces.len()], n)
            }
            CurveSpec::ArcChain { pieces } => {
                let rev = orient_chain(pieces)?;
                sample_chain(pieces, &rev, n)
            }
        }
    }
}

/// Chooses a direction per piece so consecutive endpoints agree.
fn orient_chain(pieces: &[Piece]) -> Result<Vec<bool>> {
    if pieces.len() < 2 {
        return Err(Error::BrokenChain(0));
    }
    let tol = 1e-9;
    let ends = |p: &Piece, rev: bool| if rev { (p.at(1.0), p.at(0.0)) } else { (p.at(0.0), p.at(1.0)) };
    'first: for first_rev in [false, true] {
        let mut rev = vec![first_rev];
        let mut cur_end = ends(&pieces[0], first_rev).1;
        for (i, p) in pieces.iter().enumerate().skip(1) {
            let fwd = (ends(p, false).0 - cur_end).norm() <= tol;
            let bwd = (ends(p, true).0 - cur_end).norm() <= tol;
            if fwd {
                rev.push(false);
                cur_end = ends(p, false).1;
            } else if bwd {
                rev.push(true);
                cur_end = ends(p, true).1;
            } else if first_rev {
                return Err(Error::BrokenChain(i));
            } else {
                continue 'first;
            }
        }
        if (cur_end - ends(&pieces[0], first_rev).0).norm() <= tol {
            return Ok(rev);
        }
        if first_rev {
            return Err(Error::BrokenChain(pieces.len() - 1));
        }
    }
    Err(Error::BrokenChain(0))
}

fn sample_chain(pieces: &[Piece], rev: &[bool], n: usize) -> Result<Vec<C64>> {
    let lengths: Vec<f64> = pieces.iter().map(Piece::length).collect();
    let total: f64 = lengths.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Invalid("degenerate curve".into()));
    }
    // Largest-remainder allocation of sample counts, at least 2 per piece.
    let mut counts: Vec<usize> = lengths.iter().map(|l| ((l / total) * n as f64).floor().max(2.0) as usize).collect();
    let mut assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = (lengths[a] / total) * n as f64 - counts[a] as f64;
        let fb = (lengths[b] / total) * n as f64 - counts[b] as f64;
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    let mut k = 0;
    while assigned < n {
        counts[order[k % order.len()]] += 1;
        assigned += 1;
        k += 1;
    }
    let mut out = Vec::with_capacity(assigned);
    for (i, p) in pieces.iter().enumerate() {
        for j in 0..counts[i] {
            let s = j as f64 / counts[i] as f64;
            out.push(p.at(if rev[i] { 1.0 - s } else { s }));
        }
    }
    Ok(out)
}
