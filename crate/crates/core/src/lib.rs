//! Numerical laboratory for mKdV soliton gases.
//!
//! Three independent routes to the same solution:
//!
//! * [`nsoliton`]: exact finite-N soliton formulas,
//! * [`fredholm`]: Nyström-discretized Fredholm determinants of the continuum kernel,
//! * [`outer_model`]: the large-time theta-function model (elliptic background plus a dressed trial soliton).
//!
//! [`dynamics`] builds the interaction observables (phase shift, peak trajectory,
//! kinetic velocity identities) on top of the model, and [`validation`] runs the
//! numbered cross-checks between all of them.

pub mod dynamics;
pub mod error;
pub mod fredholm;
pub mod modulation;
pub mod nsoliton;
pub mod outer_model;
pub mod quadrature;
pub mod scenario;
pub mod specfun;
pub mod validation;

pub use error::{Error, Result};
pub use modulation::{BandParams, PhaseState};
pub use num_complex::Complex64;
pub use scenario::{ChiConvention, GasSpec, Numerics, Reflection, RegionTag, Scenario, Sector, Side, TrialSolitonSpec};
