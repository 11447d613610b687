//! Basin rendering for hyperbolic postcritically finite maps, curve
//! overlays and figure output.

mod figure;
mod julia;

pub use figure::{overlay_figure, CurveLayer, FigureMetadata, FigureOutput, LayerMetadata};
pub use julia::{julia_proximity_check, ProximityReport};

use crate::error::{Error, Result};
use crate::map::{critical_points, postcritical_set, RationalMap};
use crate::numeric::{chordal_distance, SpherePoint, ToleranceConfig, C64};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Curve colours by lift depth: source, then depths 1 to 4.
pub const DEPTH_COLOURS: [[u8; 3]; 5] = [[0, 0, 255], [0, 160, 0], [0, 0, 0], [230, 200, 0], [140, 0, 170]];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderConfig {
    pub center: [f64; 2],
    /// Width of the square window in the affine chart.
    pub width: f64,
    /// Pixels per side.
    pub resolution: usize,
    pub max_iter: usize,
    /// Chordal capture radius around attracting cycle points.
    pub eps_basin: f64,
    /// One colour per attracting cycle, reused cyclically.
    pub palette: Vec<[u8; 3]>,
    pub depth_colours: Vec<[u8; 3]>,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            center: [0.0, 0.0],
            width: 4.0,
            resolution: 400,
            max_iter: 500,
            eps_basin: 1e-3,
            palette: vec![[250, 214, 165], [170, 205, 240], [200, 235, 190], [235, 190, 220], [230, 230, 170], [190, 190, 235]],
            depth_colours: DEPTH_COLOURS.to_vec(),
        }
    }
}

impl RenderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.resolution < 64 || !(self.eps_basin > 0.0) || !(self.width > 0.0) || self.palette.is_empty() || self.depth_colours.is_empty() {
            return Err(Error::Invalid("render config needs resolution >= 64, positive width and eps_basin, and non-empty palettes".into()));
        }
        Ok(())
    }

    /// Affine coordinate of the centre of pixel `(col, row)`; row 0 is the top.
    pub fn pixel_center(&self, col: usize, row: usize) -> C64 {
        let step = self.width / self.resolution as f64;
        C64::new(
            self.center[0] - self.width / 2.0 + (col as f64 + 0.5) * step,
            self.center[1] + self.width / 2.0 - (row as f64 + 0.5) * step,
        )
    }

    /// Fractional pixel position of an affine point.
    pub fn to_pixel(&self, z: C64) -> (f64, f64) {
        let scale = self.resolution as f64 / self.width;
        ((z.re - self.center[0] + self.width / 2.0) * scale, (self.center[1] + self.width / 2.0 - z.im) * scale)
    }
}

/// Attracting cycle points of a hyperbolic postcritically finite map.
///
/// A point is labelled by the cycle point whose basin under the cycle's
/// return map contains it, so `R` shifts labels along the cycle.
#[derive(Clone, Debug)]
pub struct Basins {
    map: RationalMap,
    /// Attracting cycle points; labels index this list.
    pub points: Vec<SpherePoint>,
    /// Cycle index of each point.
    pub cycle_of: Vec<usize>,
    /// Index of the image of each point.
    pub successor: Vec<usize>,
    /// Index of the preimage of each point inside its cycle.
    predecessor: Vec<usize>,
    pub cycle_count: usize,
    eps: f64,
    max_iter: usize,
}

impl Basins {
    /// Fails with `NotHyperbolic` unless every critical point is periodic.
    pub fn new(r: &RationalMap, eps_basin: f64, max_iter: usize, tol: &ToleranceConfig) -> Result<Self> {
        let (set, graph) = postcritical_set(r, tol)?;
        for c in critical_points(r, tol)? {
            let periodic = set
                .find(&c.point, tol.eps_orbit.max(1e-7))
                .map(|i| graph.period(i).is_some())
                .unwrap_or(false);
            if !periodic {
                return Err(Error::NotHyperbolic);
            }
        }
        let cycles = graph.cycles();
        let mut index = vec![usize::MAX; set.len()];
        let mut points = Vec::new();
        let mut cycle_of = Vec::new();
        for (ci, cyc) in cycles.iter().enumerate() {
            for &node in cyc {
                index[node] = points.len();
                points.push(set.points[node]);
                cycle_of.push(ci);
            }
        }
        let successor: Vec<usize> = cycles.iter().flatten().map(|&node| index[graph.successor[node]]).collect();
        let mut predecessor = vec![0; points.len()];
        for (i, &s) in successor.iter().enumerate() {
            predecessor[s] = i;
        }
        Ok(Basins { map: r.clone(), points, cycle_of, successor, predecessor, cycle_count: cycles.len(), eps: eps_basin, max_iter })
    }

    /// Label of `z`, or `None` when unresolved within the cap.
    pub fn classify(&self, z: &SpherePoint) -> Option<usize> {
        let mut x = *z;
        for n in 0..=self.max_iter {
            if let Some(k) = self.points.iter().position(|p| chordal_distance(p, &x) < self.eps) {
                // Walk back n steps along the cycle.
                return Some((0..n).fold(k, |j, _| self.predecessor[j]));
            }
            x = self.map.evaluate(&x).ok()?;
        }
        None
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasinImage {
    pub config: RenderConfig,
    /// Row-major labels; `-1` is unresolved.
    pub labels: Vec<i32>,
    pub cycle_points: Vec<SpherePoint>,
    pub cycle_of: Vec<usize>,
    pub successor: Vec<usize>,
}

impl BasinImage {
    pub fn size(&self) -> usize {
        self.config.resolution
    }

    pub fn label(&self, col: usize, row: usize) -> Option<usize> {
        let l = self.labels[row * self.size() + col];
        (l >= 0).then_some(l as usize)
    }

    pub fn resolved_fraction(&self) -> f64 {
        self.labels.iter().filter(|&&l| l >= 0).count() as f64 / self.labels.len() as f64
    }

    /// Resolved pixel with a differently labelled 4-neighbour.
    pub fn is_boundary(&self, col: usize, row: usize) -> bool {
        let n = self.size();
        let here = self.labels[row * n + col];
        let nb = [(col.wrapping_sub(1), row), (col + 1, row), (col, row.wrapping_sub(1)), (col, row + 1)];
        nb.iter().any(|&(c, r)| c < n && r < n && self.labels[r * n + c] != here)
    }

    pub fn rgb(&self) -> image::RgbImage {
        let n = self.size();
        let mut img = image::RgbImage::new(n as u32, n as u32);
        for row in 0..n {
            for col in 0..n {
                let px = match self.label(col, row) {
                    _ if self.is_boundary(col, row) => [40, 40, 40],
                    None => [128, 128, 128],
                    Some(l) => {
                        let base = self.config.palette[self.cycle_of[l] % self.config.palette.len()];
                        // Alternate shades within a cycle.
                        let shade = if l % 2 == 0 { 0 } else { 25 };
                        base.map(|c| c.saturating_sub(shade))
                    }
                };
                img.put_pixel(col as u32, row as u32, image::Rgb(px));
            }
        }
        img
    }
}

/// Per-pixel basin labels, computed in parallel and assembled in row order.
pub fn basin_render(r: &RationalMap, cfg: &RenderConfig, tol: &ToleranceConfig) -> Result<BasinImage> {
    cfg.validate()?;
    let basins = Basins::new(r, cfg.eps_basin, cfg.max_iter, tol)?;
    let n = cfg.resolution;
    let labels: Vec<i32> = (0..n * n)
        .into_par_iter()
        .map(|i| {
            let z = SpherePoint::finite(cfg.pixel_center(i % n, i / n));
            basins.classify(&z).map_or(-1, |l| l as i32)
        })
        .collect();
    Ok(BasinImage { config: cfg.clone(), labels, cycle_points: basins.points.clone(), cycle_of: basins.cycle_of.clone(), successor: basins.successor.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RenderConfig {
        RenderConfig { resolution: 64, ..RenderConfig::default() }
    }

    #[test]
    fn squaring_splits_at_unit_circle() {
        let r = RationalMap::from_real(&[0.0, 0.0, 1.0], &[1.0]).unwrap();
        let img = basin_render(&r, &small(), &ToleranceConfig::default()).unwrap();
        assert_eq!(img.cycle_points.len(), 2);
        assert_eq!(img.resolved_fraction(), 1.0);
        let zero = img.cycle_points.iter().position(|p| p.affine().map_or(false, |z| z.norm() < 1e-12)).unwrap();
        for row in 0..64 {
            for col in 0..64 {
                let z = small().pixel_center(col, row);
                if (z.norm() - 1.0).abs() > 0.05 {
                    assert_eq!(img.label(col, row) == Some(zero), z.norm() < 1.0);
                }
            }
        }
    }

    #[test]
    fn chebyshev_is_rejected() {
        let r = RationalMap::from_real(&[-2.0, 0.0, 1.0], &[1.0]).unwrap();
        assert!(matches!(basin_render(&r, &small(), &ToleranceConfig::default()), Err(Error::NotHyperbolic)));
    }

    #[test]
    fn config_guard() {
        let cfg = RenderConfig { resolution: 10, ..RenderConfig::default() };
        assert!(cfg.validate().is_err());
    }
}
