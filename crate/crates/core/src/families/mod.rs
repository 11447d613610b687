pub mod bicritical;
pub mod capture;
pub mod catalog;

pub use bicritical::{bicritical_map, omega_membership, omega_minus, omega_minus_two, omega_plus, BicriticalParams, OmegaMembership};
pub use capture::{capture_map, capture_parameters, capture_polynomial, capture_value_symbolic, IntPoly, RationalInParam};
pub use catalog::{full_catalog, lookup_curve, lookup_map, paper_curves, realization_catalog, CatalogEntry, ExpectedGraph, GraphCheck, PaperCurve};
