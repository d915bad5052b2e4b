//! Floating-point validation: energies and derivative formulas on analytic single-mode
//! test functions, the finite-difference referee, the Jordan decomposition, the radial
//! initial value problem, and the Pohozaev balance.

pub mod energy;
pub mod forms;
pub mod jordan;
pub mod monotonicity;
pub mod profile;
pub mod quadrature;
pub mod radial;

pub use energy::{fd_check, fitted_order, DerivativeBreakdown, EnergyConfig, EnergyModel, EnergyReport, FormulaVariant};
pub use profile::{identity_suite, HarmonicTestFunction, IdentityResidual, ModeOperators, RadialKind};
pub use quadrature::QuadError;
pub use monotonicity::{monotonicity_bound_check, AdjustedEnergy, MonotonicityReport, MonotonicitySample, SplitWeights};
pub use jordan::{jordan_residual, max_d1_on_grid, JordanParams};
pub use radial::{pohozaev_residual, radial_ivp_solve, singular_annulus_solve, singular_deviation, PohozaevReport, RadialError, RadialNode, RadialProfile, RadialStart};
