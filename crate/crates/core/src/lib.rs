//! Optimal search paths for reaching an unknown shoreline.
//!
//! A searcher starts at the origin and must reach an unknown straight line
//! (in the plane) or an unknown point (on the line). This crate computes the
//! best logarithmic spiral `r = e^{κθ}` under the min-max and min-mean
//! criteria, the analogous zig-zag "logarithmic coil" on the line, and the
//! randomized coil, and cross-checks every closed form against an
//! independent simulation.
//!
//! Modules:
//! * [`numerics`]: root finding, scalar minimization, 2-D Newton, adaptive
//!   quadrature, Lambert W and a counter-based random stream.
//! * [`spiral_geometry`]: tangent lines and contact angles of the spiral.
//! * [`spiral_objectives`]: the two spiral objectives and their optima.
//! * [`coil`]: the one-dimensional coil, its travel distance and averages.
//! * [`simulate`]: marching and Monte Carlo oracles.
//! * [`golden`]: reference constants shared by the CLI and the tests.
//! * [`acceptance`]: the acceptance criteria as runnable checks.

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod coil;
mod error;
pub mod golden;
pub mod numerics;
pub mod simulate;
pub mod spiral_geometry;
pub mod spiral_objectives;

pub use error::{Error, Result};
