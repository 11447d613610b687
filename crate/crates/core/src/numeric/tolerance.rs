use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ToleranceConfig {
    /// Relative residual accepted by the root finder.
    pub eps_root: f64,
    /// Chordal radius within which orbit points are merged.
    pub eps_orbit: f64,
    /// Minimum chordal distance between a curve and the postcritical set.
    pub eps_curve: f64,
    pub max_iter: usize,
    pub max_refine_depth: u32,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_root: 1e-12,
            eps_orbit: 1e-9,
            eps_curve: 1e-3,
            max_iter: 1000,
            max_refine_depth: 24,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.eps_root > 0.0
            && self.eps_orbit > 0.0
            && self.eps_curve > 0.0
            && self.max_iter >= 1
            && self.max_refine_depth >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("tolerances out of range: {self:?}")))
        }
    }
}
