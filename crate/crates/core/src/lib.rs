//! Runge–Kutta discontinuous Galerkin solver for the one-dimensional
//! Savage–Hutter equations of a granular avalanche on a curved chute.
//!
//! The spatial operator uses a modal P² basis with a local Lax–Friedrichs
//! flux whose mass dissipation is switched off between resting cells; time
//! stepping is three-stage SSP Runge–Kutta with a minmod slope limiter,
//! wet/dry front treatment and a Coulomb reposing test after every stage.

// `!(x > 0.0)` also rejects NaN, which is the point in parameter checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod config;
pub mod dg;
pub mod error;
pub mod exec;
pub mod field;
pub mod geometry;
pub mod limiter;
pub mod mesh;
pub mod output;
pub mod physics;
pub mod run;
pub mod stopping;
pub mod time;

pub use config::{load_config, RunConfig};
pub use dg::Discretization;
pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{InitialPile, ModalField, PileShape};
pub use mesh::Mesh;
pub use physics::{ConservedState, PhysicalParams, StressRegime};
pub use run::{run_case, run_cases, RunOutcome};
pub use stopping::{CellFlags, StoppingParams, Wetness};
pub use time::{Solver, StageSettings, TimeParams};
