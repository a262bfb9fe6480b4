//! Shared numerical kernels.
//!
//! Everything here is pure except [`RandomStream`], which owns its position.

mod lambert;
mod minimize;
mod newton;
mod quad;
mod rng;
mod root;

pub use lambert::lambert_w0;
pub use minimize::minimize_scalar;
pub use newton::{solve_system2, SystemReport, DEFAULT_MAX_ITER as NEWTON_MAX_ITER};
pub use quad::integrate;
pub use rng::RandomStream;
pub use root::find_root;

use crate::{Error, Result};

/// Default absolute tolerance for roots.
pub const ROOT_TOL: f64 = 1e-12;
/// Default tolerance for argmin locations.
pub const ARGMIN_TOL: f64 = 1e-10;

/// A closed interval `[lo, hi]` with `lo < hi`, both finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::DegenerateBracket { lo, hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Outcome of a scalar root search or minimization.
///
/// In root mode `value` is the residual `f(x)`; in minimization mode it is
/// the objective at the argmin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveReport {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub(crate) fn checked(f: &impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFiniteEvaluation { at: x })
    }
}
