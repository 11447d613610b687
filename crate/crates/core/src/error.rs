use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("root finder did not converge after {sweeps} sweeps (degree {degree})")]
    NonConvergence { degree: usize, sweeps: usize },
    #[error("both homogeneous values vanish at {0}; numerator and denominator share a root")]
    IndeterminatePoint(String),
    #[error("numerator and denominator share a root near {0}")]
    CommonFactor(String),
    #[error("orbit budget of {0} points exceeded without closing up")]
    OrbitBudgetExceeded(usize),
    #[error("composition degree {0} exceeds the budget of 64")]
    DegreeBudgetExceeded(usize),
    #[error("degree must be at least {min}, got {got}")]
    DegreeTooLow { min: usize, got: usize },
    #[error("curve has only {0} samples; at least 64 are required")]
    TooFewSamples(usize),
    #[error("curve is self-intersecting near sample {0}")]
    SelfIntersecting(usize),
    #[error("chordal gap {gap:.3e} after sample {index} exceeds 0.1")]
    GapTooLarge { index: usize, gap: f64 },
    #[error("arc chain does not close: piece {0} does not meet its neighbour")]
    BrokenChain(usize),
    #[error("curve passes within {distance:.3e} of postcritical point {point}")]
    CurveHitsPostcritical { point: String, distance: f64 },
    #[error("branch matching still ambiguous after {0} bisections; curve passes too close to a critical value")]
    NearCriticalValue(u32),
    #[error("point lies on the curve")]
    PointOnCurve,
    #[error("chart sends a curve point to infinity")]
    ChartDegenerate,
    #[error("no chart rotation separates the punctures after 100 attempts")]
    ChartSearchFailed,
    #[error("ray crossing is not transverse")]
    TangentCrossing,
    #[error("words come from different charts")]
    ChartMismatch,
    #[error("no separating curve found for the bipartition")]
    NoSeparatingCurveFound,
    #[error("finite maps have different sizes {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("set size {0} exceeds the enumeration guard of 8")]
    SizeGuard(usize),
    #[error("no one-per-pair selection generates the non-bijections")]
    NoSubsetFound,
    #[error("map is not hyperbolic: no attracting cycle found")]
    NotHyperbolic,
    #[error("unknown catalog id '{0}'")]
    UnknownId(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
