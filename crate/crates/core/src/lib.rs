//! Certified computation for the triharmonic Lane–Emden equation
//! `(-Δ)^3 u = |u|^{p-1} u`: exact critical exponents, stability coefficient
//! algebra, sign certificates, and floating-point checks of the monotonicity
//! formula and the radial problem.

pub mod certificate;
pub mod certifier;
pub mod coefficients;
pub mod exact_algebra;
pub mod exponents;
pub mod numerics;

pub use certificate::{Certificate, Status, Witness};
