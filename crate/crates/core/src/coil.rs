//! The logarithmic coil: a zig-zag search of the line with turning points
//! `(-γ)^k`, `x(t) = (-γ)^{⌊t⌋} (1 - (γ + 1)(t - ⌊t⌋))`.
//!
//! The ship reaches `X > 0` on the sweep ending at `γ^{2i+2}` where
//! `γ^{2i} < X <= γ^{2i+2}`, and `X < 0` on the sweep ending at `-γ^{2i+1}`
//! where `γ^{2i-1} < -X <= γ^{2i+1}`. The half-open brackets decide the
//! boundary cases: a target exactly at a turning point is reached at the tip
//! of the earlier sweep.

use std::f64::consts::E;

use crate::numerics::{lambert_w0, minimize_scalar, Bracket, ARGMIN_TOL};
use crate::{Error, Result};

/// Search bracket in `γ` for the min-max coil.
pub const MINMAX_BRACKET: (f64, f64) = (1.2, 5.0);
/// Search bracket in `γ` for both min-mean criteria.
pub const MINMEAN_BRACKET: (f64, f64) = (1.5, 12.0);
/// Search bracket in `γ` used to confirm the mixed-strategy optimum.
pub const MIXED_BRACKET: (f64, f64) = (1.5, 10.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coil {
    gamma: f64,
}

/// Travel distance to a target, with the bracket index that located it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoilHit {
    pub target: f64,
    pub index: i32,
    pub delta: f64,
}

impl CoilHit {
    pub fn ratio(&self) -> f64 {
        self.delta / self.target.abs()
    }
}

/// Period extrema of the normalized average `I(X)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IExtrema {
    pub min_value: f64,
    pub max_value: f64,
}

/// The randomized coil's expected ratio `E[δ(X)]/X = 1 + (γ + 1)/ln γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedStrategy {
    pub gamma: f64,
    pub expected_ratio: f64,
}

/// Optimal `γ` under each of the two deterministic min-mean criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinMeanCoil {
    /// `γ` minimizing the period minimum of `I`.
    pub gamma_for_min: f64,
    pub mean_min: f64,
    /// `γ` minimizing the period maximum of `I`.
    pub gamma_for_max: f64,
    pub mean_max: f64,
}

impl Coil {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 1.0 && gamma.is_finite() {
            Ok(Self { gamma })
        } else {
            Err(Error::Domain(format!("coil expansion ratio must exceed 1, got {gamma}")))
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    fn pow(&self, k: i32) -> f64 {
        self.gamma.powi(k)
    }

    /// Ship position at time `t`.
    pub fn position(&self, t: f64) -> f64 {
        let k = t.floor();
        let turn = (-self.gamma).powf(k);
        turn * (1.0 - (self.gamma + 1.0) * (t - k))
    }

    /// Distance travelled from `t = -∞` to `t`; segment `k` has length
    /// `(γ + 1) γ^k`.
    pub fn path_length_to(&self, t: f64) -> f64 {
        let g = self.gamma;
        let k = t.floor();
        let seg = (g + 1.0) * g.powf(k);
        seg / (g - 1.0) + (t - k) * seg
    }

    /// Bracket index `i` of a nonzero target (see the module docs).
    pub fn bracket_index(&self, target: f64) -> Result<i32> {
        if target == 0.0 || target.is_nan() {
            return Err(Error::TargetAtOrigin);
        }
        let lg = self.gamma.ln();
        if target > 0.0 {
            let mut i = (target.ln() / (2.0 * lg) - 1.0).ceil() as i32;
            while !(self.pow(2 * i) < target) {
                i -= 1;
            }
            while !(target <= self.pow(2 * i + 2)) {
                i += 1;
            }
            Ok(i)
        } else {
            let y = -target;
            let mut i = (y.ln() / (2.0 * lg) - 0.5).ceil() as i32;
            while !(self.pow(2 * i - 1) < y) {
                i -= 1;
            }
            while !(y <= self.pow(2 * i + 1)) {
                i += 1;
            }
            Ok(i)
        }
    }

    /// Travel distance `δ(X)`: `X + 2γ^{2i+2}/(γ-1)` for `X > 0` and
    /// `-X + 2γ^{2i+1}/(γ-1)` for `X < 0`.
    pub fn delta(&self, target: f64) -> Result<CoilHit> {
        let i = self.bracket_index(target)?;
        let g = self.gamma;
        let delta = if target > 0.0 {
            target + 2.0 * self.pow(2 * i + 2) / (g - 1.0)
        } else {
            -target + 2.0 * self.pow(2 * i + 1) / (g - 1.0)
        };
        Ok(CoilHit { target, index: i, delta })
    }

    /// Supremum of `δ(X)/|X|`, approached as `X → γ^{2k}` from above:
    /// `(2γ² + γ - 1)/(γ - 1)`.
    pub fn worst_case_ratio(&self) -> f64 {
        let g = self.gamma;
        (2.0 * g * g + g - 1.0) / (g - 1.0)
    }

    /// `I(X) = (1/2X) ∫_{-X}^{X} δ(x)/|x| dx` for `X > 0`, from the per-sweep
    /// integrals with the infinite tails summed in closed form.
    pub fn i_of_x(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("I(X) requires X > 0, got {x}")));
        }
        let g = self.gamma;
        let i = self.bracket_index(x)?;
        let j = self.bracket_index(-x)?;
        // Every full sweep contributes γ^{2p} (resp. γ^{2q-1}) times this.
        let per_sweep = (g * g - 1.0) + 4.0 * g * g * g.ln() / (g - 1.0);
        let geometric = 1.0 / (g * g - 1.0);
        let positive_tail = per_sweep * self.pow(2 * i) * geometric;
        let negative_tail = -per_sweep * self.pow(2 * j - 1) * geometric;
        let total = positive_tail + f_term(i, g, x) - negative_tail - g_term(j, g, -x);
        Ok(total / (2.0 * x))
    }

    /// Closed-form period extrema of `I`:
    /// `1 + γ(γ+1) ln γ/(γ-1)²` and `1 + (1/e)(γ+1)/(γ-1) γ^{γ/(γ-1)}`.
    pub fn i_extrema(&self) -> IExtrema {
        let g = self.gamma;
        IExtrema {
            min_value: 1.0 + g * (g + 1.0) * g.ln() / ((g - 1.0) * (g - 1.0)),
            max_value: 1.0 + (g + 1.0) / (g - 1.0) * g.powf(g / (g - 1.0)) / E,
        }
    }
}

/// `∫_{γ^{2i}}^{X} δ(x)/x dx = (X - γ^{2i}) + 2γ^{2i+2}/(γ-1) (ln X - 2i ln γ)`
/// for `γ^{2i} < X <= γ^{2i+2}`.
pub fn f_term(i: i32, gamma: f64, x: f64) -> f64 {
    let lg = gamma.ln();
    (x - gamma.powi(2 * i))
        + 2.0 * gamma.powi(2 * i + 2) / (gamma - 1.0) * (x.ln() - 2.0 * i as f64 * lg)
}

/// `∫_{X}^{-γ^{2j-1}} (1/x)(-x + 2γ^{2j+1}/(γ-1)) dx` for
/// `-γ^{2j+1} <= X < -γ^{2j-1}`; the negative of the corresponding piece of
/// `∫ δ(x)/|x|`.
pub fn g_term(j: i32, gamma: f64, x: f64) -> f64 {
    let lg = gamma.ln();
    (x + gamma.powi(2 * j - 1))
        - 2.0 * gamma.powi(2 * j + 1) / (gamma - 1.0) * ((-x).ln() - (2 * j - 1) as f64 * lg)
}

/// Min-max coil by scalar search of the worst-case ratio; returns `(γ, ratio)`.
///
/// The minimizer is checked against the critical point of
/// `(2γ² + γ - 1)/(γ - 1)`, whose derivative is `2γ(γ - 2)/(γ - 1)²`.
pub fn optimal_minmax_coil() -> Result<(f64, f64)> {
    let report = minimize_scalar(
        |g| (2.0 * g * g + g - 1.0) / (g - 1.0),
        Bracket::new(MINMAX_BRACKET.0, MINMAX_BRACKET.1)?,
        ARGMIN_TOL,
    )?;
    let analytic = 2.0;
    if (report.x - analytic).abs() > 1e-8 {
        return Err(Error::NoConvergence { iterations: report.iterations, residual: report.x - analytic });
    }
    Ok((report.x, report.value))
}

/// Minimizes both `I` extrema over `γ`.
pub fn optimal_minmean_coil() -> Result<MinMeanCoil> {
    let bracket = Bracket::new(MINMEAN_BRACKET.0, MINMEAN_BRACKET.1)?;
    let lower = minimize_scalar(|g| Coil { gamma: g }.i_extrema().min_value, bracket, ARGMIN_TOL)?;
    let upper = minimize_scalar(|g| Coil { gamma: g }.i_extrema().max_value, bracket, ARGMIN_TOL)?;
    Ok(MinMeanCoil {
        gamma_for_min: lower.x,
        mean_min: lower.value,
        gamma_for_max: upper.x,
        mean_max: upper.value,
    })
}

/// Expected ratio of the coil with a uniformly random phase on `[0, 2)`.
/// Independent of the target for `X > 0`.
pub fn mixed_expected_ratio(gamma: f64) -> Result<MixedStrategy> {
    if !(gamma > 1.0) {
        return Err(Error::Domain(format!("mixed strategy requires gamma > 1, got {gamma}")));
    }
    Ok(MixedStrategy { gamma, expected_ratio: 1.0 + (gamma + 1.0) / gamma.ln() })
}

/// Optimal mixed strategy `γ = 1/W(1/e)`, confirmed by scalar search.
pub fn optimal_mixed() -> Result<MixedStrategy> {
    let gamma = 1.0 / lambert_w0(1.0 / E)?;
    let report = minimize_scalar(
        |g| 1.0 + (g + 1.0) / g.ln(),
        Bracket::new(MIXED_BRACKET.0, MIXED_BRACKET.1)?,
        ARGMIN_TOL,
    )?;
    if (report.x - gamma).abs() > 1e-9 {
        return Err(Error::NoConvergence { iterations: report.iterations, residual: report.x - gamma });
    }
    mixed_expected_ratio(gamma)
}
