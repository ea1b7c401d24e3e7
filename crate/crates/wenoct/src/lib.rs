//! High-order finite-difference WENO solver for ideal MHD with unstaggered
//! constrained transport.
//!
//! The base scheme is a 5th-order characteristic-wise flux-split FD-WENO
//! discretization of the eight-component MHD system, advanced with the
//! 10-stage low-storage SSP-RK4 integrator. In constrained-transport mode the
//! magnetic vector potential is evolved alongside the conserved variables with
//! a Hamilton-Jacobi WENO scheme, and after every stage the magnetic field is
//! replaced by a 4th-order discrete curl of the potential, which keeps the
//! discrete divergence of B at roundoff level.

pub mod advect;
pub mod boundary;
pub mod config;
pub mod convergence;
pub mod curl;
pub mod diag;
pub mod driver;
pub mod eigen;
pub mod error;
pub mod grid;
pub mod hcl;
pub mod hj;
pub mod output;
pub mod problems;
pub mod ssprk;
pub mod state;
pub mod weno;

pub use error::{Result, SolverError};

/// Ratio of specific heats used by every benchmark.
pub const GAMMA: f64 = 5.0 / 3.0;
