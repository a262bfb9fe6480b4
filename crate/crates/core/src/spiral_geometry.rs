//! Geometry of the logarithmic spiral `r = e^{κθ}` against the lines tangent
//! to the circle of radius `R` about the origin.
//!
//! Angles are never wrapped modulo `2π`, so `ω0 < θ0 < θ1 < θ0 + 2π` holds
//! literally. Line membership is tested in the product form
//! `e^{κθ} cos(θ - ω) - R` rather than through `sec`, which has poles.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::numerics::{find_root, Bracket};
use crate::{Error, Result};

/// Tolerance for the second-contact root in `θ`. Tighter than the default
/// root tolerance because the objectives are minimized over `κ` afterwards.
const CONTACT_TOL: f64 = 1e-15;

/// A logarithmic spiral with growth rate `kappa` searching for a shoreline
/// at distance `radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spiral {
    kappa: f64,
    radius: f64,
}

impl Spiral {
    pub fn new(kappa: f64, radius: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::Domain(format!("spiral growth rate must be positive, got {kappa}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Domain(format!("shoreline distance must be positive, got {radius}")));
        }
        Ok(Self { kappa, radius })
    }

    /// The spiral at unit shoreline distance.
    pub fn unit(kappa: f64) -> Result<Self> {
        Self::new(kappa, 1.0)
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Cartesian point at polar angle `theta`.
    pub fn point(&self, theta: f64) -> (f64, f64) {
        let r = (self.kappa * theta).exp();
        (r * theta.cos(), r * theta.sin())
    }

    /// Signed overshoot `e^{κθ} cos(θ - ω) - R` past the tangent line at `ω`.
    /// Positive on the far side of the line.
    pub fn line_excess(&self, omega: f64, theta: f64) -> f64 {
        (self.kappa * theta).exp() * (theta - omega).cos() - self.radius
    }
}

/// The line `a x + b y + c = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineGeneral {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LineGeneral {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if a == 0.0 && b == 0.0 {
            return Err(Error::DegenerateLine);
        }
        Ok(Self { a, b, c })
    }

    /// Line through `(x0, y0)` with slope `m`.
    pub fn through_point(x0: f64, y0: f64, m: f64) -> Self {
        Self { a: m, b: -1.0, c: y0 - m * x0 }
    }
}

/// The line tangent to the spiral at `θ0` is also tangent to the circle at
/// `ω0`; the spiral crosses that line again at `θ1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentContact {
    pub theta0: f64,
    pub omega0: f64,
    pub theta1: f64,
}

/// Distance `|c| / sqrt(a² + b²)` from the origin to `line`.
pub fn line_distance_to_origin(line: &LineGeneral) -> Result<f64> {
    if line.a == 0.0 && line.b == 0.0 {
        return Err(Error::DegenerateLine);
    }
    Ok(line.c.abs() / line.a.hypot(line.b))
}

/// Polar radius `R sec(θ - ω)` of the line tangent to the radius-`R` circle
/// at angle `omega`, seen at polar angle `theta`.
pub fn circle_tangent_radius(radius: f64, omega: f64, theta: f64) -> Result<f64> {
    let c = (theta - omega).cos();
    if c <= 0.0 {
        return Err(Error::OutsideHalfPlane(theta - omega));
    }
    Ok(radius / c)
}

/// Slope `dy/dx = (κ sin θ + cos θ) / (κ cos θ - sin θ)` of the spiral.
pub fn spiral_tangent_slope(kappa: f64, theta: f64) -> Result<f64> {
    let (s, c) = theta.sin_cos();
    let den = kappa * c - s;
    if den == 0.0 || den.abs() <= 1e-15 * (kappa * s + c).abs() {
        return Err(Error::VerticalTangent(theta));
    }
    Ok((kappa * s + c) / den)
}

/// The closed-form first tangency: `θ0 = (ln R + ½ ln(1 + κ²)) / κ` and
/// `ω0 = θ0 - arccos(1/sqrt(1 + κ²))`. Returns `(θ0, ω0)`.
pub fn tangent_contact(spiral: &Spiral) -> (f64, f64) {
    let k = spiral.kappa;
    let theta0 = (spiral.radius.ln() + 0.5 * k.mul_add(k, 1.0).ln()) / k;
    // arccos(1/sqrt(1+κ²)) == arctan κ, and the latter is well conditioned.
    let omega0 = theta0 - k.atan();
    (theta0, omega0)
}

/// Solves for the second contact `θ1` of the tangent line at `ω0`.
///
/// `F(θ) = e^{κθ} cos(θ - ω0) - R` is strictly increasing on
/// `[ω0 + 3π/2, ω0 + 2π]` with `F < 0` at the left end and `F > 0` at the
/// right end; the sign conditions are checked rather than assumed.
pub fn second_contact(spiral: &Spiral) -> Result<TangentContact> {
    let (theta0, omega0) = tangent_contact(spiral);
    let lo = omega0 + 1.5 * PI;
    let hi = omega0 + TAU;
    let f = |t: f64| spiral.line_excess(omega0, t);
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo < 0.0 && fhi > 0.0) {
        return Err(Error::Domain(format!(
            "second contact not bracketed for kappa = {}: F({lo}) = {flo}, F({hi}) = {fhi}",
            spiral.kappa
        )));
    }
    let report = find_root(f, Bracket::new(lo, hi)?, CONTACT_TOL)?;
    Ok(TangentContact { theta0, omega0, theta1: report.x })
}

/// `θ1(R) = θ1(1) + ln R / κ`.
pub fn scale_theta1(kappa: f64, theta1_at_unit: f64, radius: f64) -> f64 {
    theta1_at_unit + radius.ln() / kappa
}

/// Arclength from the pole (`θ = -∞`) to `theta`: `sqrt(1 + κ²)/κ · e^{κθ}`.
pub fn arclength(kappa: f64, theta: f64) -> f64 {
    kappa.hypot(1.0) / kappa * (kappa * theta).exp()
}

/// Angle `β = ω0 + 2π - θ1` between the second contact and the next
/// tangency of the same line; lies in `(0, π/2)`.
pub fn closing_angle(contact: &TangentContact) -> f64 {
    let beta = contact.omega0 + TAU - contact.theta1;
    debug_assert!(beta > 0.0 && beta < FRAC_PI_2 + 1e-12);
    beta
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn line_distance() {
        assert_eq!(line_distance_to_origin(&LineGeneral::new(0.0, 1.0, -1.0).unwrap()).unwrap(), 1.0);
        assert_eq!(line_distance_to_origin(&LineGeneral::new(3.0, 4.0, -10.0).unwrap()).unwrap(), 2.0);
        assert_eq!(LineGeneral::new(0.0, 0.0, 1.0), Err(Error::DegenerateLine));
    }

    #[test]
    fn tangent_line_distance_identity() {
        // R²(1 + κ²) = e^{2κθ} for the tangent at θ: κ = 1, θ = 0 gives 1/sqrt(2).
        let (k, t) = (1.0_f64, 0.0_f64);
        let m = spiral_tangent_slope(k, t).unwrap();
        let r = (k * t).exp();
        let line = LineGeneral::new(m, -1.0, r * (t.sin() - m * t.cos())).unwrap();
        let d = line_distance_to_origin(&line).unwrap();
        assert!((d - r / k.hypot(1.0)).abs() < 1e-15);
    }

    #[test]
    fn circle_tangent() {
        assert!((circle_tangent_radius(1.0, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((circle_tangent_radius(1.0, 0.0, PI / 3.0).unwrap() - 2.0).abs() < 1e-14);
        assert!(matches!(circle_tangent_radius(1.0, 0.0, 2.0), Err(Error::OutsideHalfPlane(_))));
    }

    #[test]
    fn circle_tangent_matches_cartesian_line() {
        // y = R sin ω - cot ω (x - R cos ω), intersected with the ray at θ.
        let (rad, w, t) = (2.0_f64, 1.0_f64, 1.5_f64);
        let cot = 1.0 / w.tan();
        let r = (rad * w.sin() + cot * rad * w.cos()) / (t.sin() + cot * t.cos());
        assert!((circle_tangent_radius(rad, w, t).unwrap() - r).abs() < 1e-13);
        assert!((r - 2.0 / 0.5_f64.cos()).abs() < 1e-13);
    }

    #[test]
    fn slope_values() {
        assert!((spiral_tangent_slope(1.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((spiral_tangent_slope(0.25, 0.0).unwrap() - 4.0).abs() < 1e-15);
        // κ cos θ = sin θ
        assert!(spiral_tangent_slope(1.0, std::f64::consts::FRAC_PI_4).is_err());
    }

    #[test]
    fn slope_matches_finite_difference() {
        let (k, t, h) = (0.5_f64, 0.3_f64, 1e-6);
        let x = |t: f64| (k * t).exp() * t.cos();
        let y = |t: f64| (k * t).exp() * t.sin();
        let fd = (y(t + h) - y(t - h)) / (x(t + h) - x(t - h));
        assert!((spiral_tangent_slope(k, t).unwrap() - fd).abs() < 1e-8);
    }

    #[test]
    fn unit_kappa_contact() {
        let (t0, w0) = tangent_contact(&Spiral::unit(1.0).unwrap());
        assert!((t0 - 0.5 * LN_2).abs() < 1e-15);
        assert!((w0 - (0.5 * LN_2 - PI / 4.0)).abs() < 1e-15);
        // The tangent line there touches the unit circle.
        let m = spiral_tangent_slope(1.0, t0).unwrap();
        let r = t0.exp();
        let line = LineGeneral::through_point(r * t0.cos(), r * t0.sin(), m);
        assert!((line_distance_to_origin(&line).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn contact_angle_is_atan_kappa() {
        let k = 0.212_469_559_4;
        let (t0, w0) = tangent_contact(&Spiral::unit(k).unwrap());
        assert!((t0 - w0 - k.atan()).abs() < 1e-15);
        assert!(((t0 - w0).cos() * k.hypot(1.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn second_contact_grid_oracle() {
        let s = Spiral::unit(0.5).unwrap();
        let c = second_contact(&s).unwrap();
        let f = |t: f64| s.line_excess(c.omega0, t);
        let start = c.theta0 + 0.01;
        let end = c.theta0 + TAU;
        let n = 1_000_000;
        let h = (end - start) / n as f64;
        let mut prev = f(start);
        let mut first = None;
        for k in 1..=n {
            let t = start + k as f64 * h;
            let cur = f(t);
            if prev < 0.0 && cur >= 0.0 {
                first = Some((t - h, t));
                break;
            }
            prev = cur;
        }
        let (lo, hi) = first.expect("grid found no sign change");
        assert!(lo <= c.theta1 && c.theta1 <= hi);
        assert!(c.omega0 < c.theta0 && c.theta0 < c.theta1 && c.theta1 < c.theta0 + TAU);
    }

    #[test]
    fn arclength_values() {
        assert!((arclength(1.0, 0.0) - 2f64.sqrt()).abs() < 1e-15);
        assert!((arclength(1.0, LN_2) - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        let k = 0.3;
        assert!((arclength(k, 2.0 + TAU) / arclength(k, 2.0) - (TAU * k).exp()).abs() < 1e-12);
    }

    #[test]
    fn scale_theta1_values() {
        assert_eq!(scale_theta1(0.5, 7.0, 1.0), 7.0);
        assert!((scale_theta1(0.5, 7.0, std::f64::consts::E) - 9.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_spiral() {
        assert!(Spiral::new(0.0, 1.0).is_err());
        assert!(Spiral::new(1.0, -1.0).is_err());
    }
}
