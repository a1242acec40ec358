//! Simulation toolkit for density fluctuations of weakly interacting
//! diffusing particles on the torus: the microscopic particle system, a
//! conservative-noise grid SDE for the density, the deterministic grid
//! density limit, dual backward test-function machinery, and statistical
//! comparison of sampled fluctuation laws in weak distances.

pub mod error;
pub mod fit;
pub mod fourier;
pub mod grid;
pub mod operators;
pub mod potentials;
pub mod rng;

pub use error::{Error, Result};
pub use grid::{GridField, PeriodicGrid};
pub use operators::{DiffOps, OperatorOrder};
