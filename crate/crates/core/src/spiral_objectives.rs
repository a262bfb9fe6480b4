//! Min-max and min-mean objectives for the logarithmic spiral at unit
//! shoreline distance, and their characterization through the angle pair
//! `(α, β)` with `κ = tan α`, `sec α = e^{κθ0}` and `sec β = e^{κθ1}`.
//!
//! Every length here is for `R = 1`; lengths for other `R` scale linearly
//! and the optimal `κ` does not change.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::numerics::{minimize_scalar, solve_system2, Bracket, SolveReport, ARGMIN_TOL};
use crate::spiral_geometry::{arclength, closing_angle, second_contact, Spiral, TangentContact};
use crate::{Error, Result};

/// Search bracket in `κ` for the min-max spiral.
pub const MINMAX_BRACKET: (f64, f64) = (0.05, 1.0);
/// Search bracket in `κ` for the min-mean spiral.
pub const MINMEAN_BRACKET: (f64, f64) = (0.1, 1.0);

/// Newton start for the min-max angle system: `α = arctan 0.2125 ≈ 0.2094`,
/// `β = arcsec(13.81 · sin α) ≈ 1.215`, rounded.
pub const MINMAX_GUESS: AnglePair = AnglePair { alpha: 0.2, beta: 1.2 };
/// Newton start for the min-mean angle system: `α = arctan 0.3732 ≈ 0.357`,
/// `β = arcsec(7.03 · sin α) ≈ 1.15`, rounded. That `β` is only a rough
/// start (the solution has `β ≈ 1.397`) but lies in the basin.
pub const MINMEAN_GUESS: AnglePair = AnglePair { alpha: 0.36, beta: 1.1 };

const SYSTEM_TOL: f64 = 1e-12;

/// The angle pair `(α, β)`, both in `(0, π/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePair {
    pub alpha: f64,
    pub beta: f64,
}

impl AnglePair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let ok = |a: f64| a > 0.0 && a < FRAC_PI_2;
        if ok(alpha) && ok(beta) {
            Ok(Self { alpha, beta })
        } else {
            Err(Error::Domain(format!("angles must lie in (0, pi/2), got ({alpha}, {beta})")))
        }
    }

    /// The pair realized by the spiral with growth rate `kappa`: `α = arctan κ`
    /// and `β = θ0 + 2π - α - θ1`.
    pub fn from_kappa(kappa: f64) -> Result<Self> {
        let contact = second_contact(&Spiral::unit(kappa)?)?;
        Self::new(kappa.atan(), closing_angle(&contact))
    }

    pub fn kappa(&self) -> f64 {
        self.alpha.tan()
    }
}

/// Optimal spiral: growth rate, objective value and the matching angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub kappa: f64,
    pub objective_value: f64,
    pub alpha: f64,
    pub beta: f64,
    pub report: SolveReport,
}

fn unit_contact(kappa: f64) -> Result<TangentContact> {
    second_contact(&Spiral::unit(kappa)?)
}

/// Worst-case arclength `sqrt(1 + κ²)/κ · e^{κθ1}` to a shoreline at unit
/// distance.
pub fn minmax_objective(kappa: f64) -> Result<f64> {
    let c = unit_contact(kappa)?;
    Ok(arclength(kappa, c.theta1))
}

/// `e^{κθ1}/κ`: the min-max objective with the `sqrt(1 + κ²)` factor of the
/// arclength dropped. Kept to reproduce the optimum it leads to.
pub fn erroneous_objective(kappa: f64) -> Result<f64> {
    let c = unit_contact(kappa)?;
    Ok((kappa * c.theta1).exp() / kappa)
}

fn arcosh(u: f64) -> f64 {
    (u + (u * u - 1.0).max(0.0).sqrt()).ln()
}

/// Mean first-contact arclength over shoreline directions uniform on a full
/// turn, at unit distance:
///
/// `sqrt(1+κ²)/(2πκ) · [v/κ + arcosh v - u/κ + arcosh u]`,
/// `u = e^{κθ0}`, `v = e^{κθ1}`.
pub fn minmean_objective(kappa: f64) -> Result<f64> {
    let c = unit_contact(kappa)?;
    let u = (kappa * c.theta0).exp();
    let v = (kappa * c.theta1).exp();
    Ok(kappa.hypot(1.0) / (TAU * kappa) * (v / kappa + arcosh(v) - u / kappa + arcosh(u)))
}

/// The mean objective written as `w csc α / 2π` with
/// `w = (v - u) cot α + arcosh v + arcosh u`, `u = sec α`, `v = sec β`.
pub fn minmean_objective_from_angles(pair: &AnglePair) -> f64 {
    let (a, b) = (pair.alpha, pair.beta);
    let sec_a = 1.0 / a.cos();
    let sec_b = 1.0 / b.cos();
    let ln_a = (sec_a + a.tan()).ln();
    let ln_b = (sec_b + b.tan()).ln();
    (ln_a + ln_b - (sec_a - sec_b) / a.tan()) / a.sin() / TAU
}

/// The worst-case objective `csc α sec β`.
pub fn minmax_objective_from_angles(pair: &AnglePair) -> f64 {
    1.0 / (pair.alpha.sin() * pair.beta.cos())
}

/// `cos α / cos β - e^{(2π - α - β) tan α}`: zero for every pair realized by
/// an actual spiral, whatever the objective.
pub fn contact_constraint_residual(pair: &AnglePair) -> f64 {
    let (a, b) = (pair.alpha, pair.beta);
    a.cos() / b.cos() - ((TAU - a - b) * a.tan()).exp()
}

/// Residuals of the min-max stationarity system:
/// `(cot α + cot β - (2π - α - β) sec² α, contact constraint)`.
pub fn minmax_angle_residuals(pair: &AnglePair) -> (f64, f64) {
    let (a, b) = (pair.alpha, pair.beta);
    let sec_a = 1.0 / a.cos();
    let first = 1.0 / a.tan() + 1.0 / b.tan() - (TAU - a - b) * sec_a * sec_a;
    (first, contact_constraint_residual(pair))
}

/// `Φ = (-2 csc α + ln(sec α + tan α) + ln(sec β + tan β))(cot α + cot β)`.
pub fn phi(pair: &AnglePair) -> f64 {
    let (a, b) = (pair.alpha, pair.beta);
    let lead = -2.0 / a.sin() + (1.0 / a.cos() + a.tan()).ln() + (1.0 / b.cos() + b.tan()).ln();
    lead * (1.0 / a.tan() + 1.0 / b.tan())
}

/// `Ψ = (α + β - 2π)(sec α csc β + csc α sec β) sec α`.
pub fn psi(pair: &AnglePair) -> f64 {
    let (a, b) = (pair.alpha, pair.beta);
    let (sec_a, sec_b) = (1.0 / a.cos(), 1.0 / b.cos());
    let (csc_a, csc_b) = (1.0 / a.sin(), 1.0 / b.sin());
    (a + b - TAU) * (sec_a * csc_b + csc_a * sec_b) * sec_a
}

/// `Ξ = sec α - cot α csc β + (tan α cot β - csc α csc β) sec α
///      - (cot² α + csc² α) sec β`.
pub fn xi(pair: &AnglePair) -> f64 {
    let (a, b) = (pair.alpha, pair.beta);
    let (sec_a, sec_b) = (1.0 / a.cos(), 1.0 / b.cos());
    let (csc_a, csc_b) = (1.0 / a.sin(), 1.0 / b.sin());
    let (cot_a, cot_b) = (1.0 / a.tan(), 1.0 / b.tan());
    sec_a - cot_a * csc_b + (a.tan() * cot_b - csc_a * csc_b) * sec_a
        - (cot_a * cot_a + csc_a * csc_a) * sec_b
}

/// Residuals of the min-mean stationarity system: `(Φ + Ψ - Ξ, contact
/// constraint)`.
pub fn minmean_angle_residuals(pair: &AnglePair) -> (f64, f64) {
    (phi(pair) + psi(pair) - xi(pair), contact_constraint_residual(pair))
}

fn solve_angles(residuals: fn(&AnglePair) -> (f64, f64), guess: AnglePair) -> Result<AnglePair> {
    let report = solve_system2(
        |alpha, beta| residuals(&AnglePair { alpha, beta }),
        (guess.alpha, guess.beta),
        SYSTEM_TOL,
    )?;
    AnglePair::new(report.point.0, report.point.1)
}

/// Solves the min-max angle system by Newton's method from `guess`.
pub fn solve_minmax_angles(guess: AnglePair) -> Result<AnglePair> {
    solve_angles(minmax_angle_residuals, guess)
}

/// Solves the min-mean angle system by Newton's method from `guess`.
pub fn solve_minmean_angles(guess: AnglePair) -> Result<AnglePair> {
    solve_angles(minmean_angle_residuals, guess)
}

fn optimize(objective: fn(f64) -> Result<f64>, bracket: (f64, f64)) -> Result<Optimum> {
    // The objective is smooth wherever the contact solver succeeds; a failure
    // inside the bracket surfaces as a non-finite evaluation.
    let report = minimize_scalar(
        |k| objective(k).unwrap_or(f64::NAN),
        Bracket::new(bracket.0, bracket.1)?,
        ARGMIN_TOL,
    )?;
    let pair = AnglePair::from_kappa(report.x)?;
    Ok(Optimum {
        kappa: report.x,
        objective_value: report.value,
        alpha: pair.alpha,
        beta: pair.beta,
        report,
    })
}

/// Spiral minimizing the worst-case arclength, by scalar search over `κ`.
pub fn minimize_minmax() -> Result<Optimum> {
    optimize(minmax_objective, MINMAX_BRACKET)
}

/// Spiral minimizing the mean arclength, by scalar search over `κ`.
pub fn minimize_minmean() -> Result<Optimum> {
    optimize(minmean_objective, MINMEAN_BRACKET)
}

/// Minimizer of [`erroneous_objective`] on the min-max bracket.
pub fn minimize_erroneous() -> Result<Optimum> {
    optimize(erroneous_objective, MINMAX_BRACKET)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_pair_bounds() {
        assert!(AnglePair::new(0.0, 1.0).is_err());
        assert!(AnglePair::new(0.3, FRAC_PI_2).is_err());
        assert!(AnglePair::new(0.3, 1.0).is_ok());
    }

    #[test]
    fn psi_is_negative() {
        for a in [0.05, 0.3, 0.8, 1.5] {
            for b in [0.05, 0.7, 1.2, 1.55] {
                assert!(psi(&AnglePair::new(a, b).unwrap()) < 0.0);
            }
        }
    }

    #[test]
    fn objectives_agree_with_angle_forms() {
        for k in [0.1, 0.2124695594, 0.5, 1.3] {
            let pair = AnglePair::from_kappa(k).unwrap();
            let mm = minmax_objective(k).unwrap();
            assert!((mm - minmax_objective_from_angles(&pair)).abs() < 1e-11 * mm);
            let mean = minmean_objective(k).unwrap();
            assert!((mean - minmean_objective_from_angles(&pair)).abs() < 1e-12 * mean.max(1.0) * 10.0);
            let err = erroneous_objective(k).unwrap();
            assert!((mm / err - k.hypot(1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn mean_below_worst_case() {
        for k in [0.06, 0.15, 0.3, 0.6, 1.0, 1.5] {
            assert!(minmean_objective(k).unwrap() < minmax_objective(k).unwrap());
        }
    }

    #[test]
    fn newton_guesses_converge() {
        let mm = solve_minmax_angles(MINMAX_GUESS).unwrap();
        assert!((mm.kappa() - 0.2124695594).abs() < 1e-9);
        let mean = solve_minmean_angles(MINMEAN_GUESS).unwrap();
        assert!((mean.kappa() - 0.3732051316).abs() < 1e-9);
    }
}
