//! Sphere points, polynomials, root finding and Möbius transforms.

pub mod moebius;
pub mod poly;
pub mod roots;
pub mod sphere;
pub mod tolerance;

pub use moebius::{moebius_apply, MoebiusTransform};
pub use poly::Polynomial;
pub use roots::{poly_roots, refine_roots};
pub use sphere::{chordal_distance, chordal_to_affine, SpherePoint, C64};
pub use tolerance::ToleranceConfig;
