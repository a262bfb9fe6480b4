//! Simulation oracles for the closed forms.
//!
//! Nothing here calls the root finders or closed-form travel distances it is
//! meant to check: the spiral is marched on a grid and refined by its own
//! bisection, and the coil is walked segment by segment.
//!
//! Monte Carlo runs are split into fixed-size shards. Shard `k` draws from
//! `RandomStream::shard(seed, k)` and shard statistics are merged in index
//! order, so results are bit-identical whatever the thread count.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::coil::Coil;
use crate::numerics::RandomStream;
use crate::spiral_geometry::{arclength, tangent_contact, Spiral};
use crate::{Error, Result};

/// Samples per Monte Carlo shard.
pub const SHARD_SIZE: usize = 1 << 14;

/// A local maximum of the line excess within this distance of zero counts as
/// a (grazing) contact.
pub const GRAZE_TOL: f64 = 1e-12;

/// Coarser marching step suited to large Monte Carlo runs. The step only
/// locates crossings; their accuracy comes from the bisection to
/// `refine_tol`, and tangential double crossings are caught by the local
/// maximum check.
pub const MONTE_CARLO_MARCH_STEP: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub seed: u64,
    pub samples: usize,
    /// Grid step: radians for the spiral, `t` units for the coil.
    pub march_step: f64,
    pub refine_tol: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self { seed: 0, samples: 100_000, march_step: 1e-3, refine_tol: 1e-10 }
    }
}

impl SimConfig {
    pub fn new(seed: u64, samples: usize) -> Self {
        Self { seed, samples, ..Self::default() }
    }

    pub fn with_march_step(mut self, step: f64) -> Self {
        self.march_step = step;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 || !(self.march_step > 0.0) || !(self.refine_tol > 0.0) {
            return Err(Error::Domain(format!("invalid simulation config {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
    pub min: f64,
    pub max: f64,
}

impl SampleStats {
    /// `(mean - reference) / std_error`.
    pub fn z_score(&self, reference: f64) -> f64 {
        (self.mean - reference) / self.std_error
    }
}

#[derive(Debug, Clone, Copy)]
struct Accumulator {
    n: usize,
    mean: f64,
    m2: f64,
    min: f64,
    max: f64,
}

impl Accumulator {
    fn new() -> Self {
        Self { n: 0, mean: 0.0, m2: 0.0, min: f64::INFINITY, max: f64::NEG_INFINITY }
    }

    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
        self.min = self.min.min(x);
        self.max = self.max.max(x);
    }

    fn merge(self, other: Self) -> Self {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let mean = self.mean + d * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + d * d * (self.n as f64 * other.n as f64) / n as f64;
        Self { n, mean, m2, min: self.min.min(other.min), max: self.max.max(other.max) }
    }

    fn stats(&self) -> SampleStats {
        let var = if self.n > 1 { self.m2 / (self.n - 1) as f64 } else { 0.0 };
        SampleStats {
            mean: self.mean.clamp(self.min, self.max),
            std_error: (var / self.n as f64).sqrt(),
            n: self.n,
            min: self.min,
            max: self.max,
        }
    }
}

fn sharded<F>(cfg: &SimConfig, sample: F) -> Result<SampleStats>
where
    F: Fn(&mut RandomStream) -> Result<f64> + Sync,
{
    cfg.validate()?;
    let shards = cfg.samples.div_ceil(SHARD_SIZE);
    let parts: Vec<Accumulator> = (0..shards)
        .into_par_iter()
        .map(|k| {
            let mut stream = RandomStream::shard(cfg.seed, k as u64);
            let count = SHARD_SIZE.min(cfg.samples - k * SHARD_SIZE);
            let mut acc = Accumulator::new();
            for _ in 0..count {
                acc.push(sample(&mut stream)?);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(Accumulator::new(), Accumulator::merge).stats())
}

/// First point where the unit-distance spiral reaches a shoreline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstContact {
    pub theta_hit: f64,
    pub arclength: f64,
}

fn bisect(f: impl Fn(f64) -> f64, mut below: f64, mut above: f64, tol: f64) -> f64 {
    while (above - below).abs() > tol {
        let mid = 0.5 * (below + above);
        if mid == below || mid == above {
            break;
        }
        if f(mid) >= 0.0 {
            above = mid;
        } else {
            below = mid;
        }
    }
    0.5 * (below + above)
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const R: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - R * (b - a);
    let mut x2 = a + R * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - R * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + R * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Marches the spiral `r = e^{κθ}` until it first reaches the line tangent
/// to the unit circle at angle `omega`.
///
/// `omega` is reduced to `[ω0, ω0 + 2π)`. The march starts at
/// `min(0, ω) - 2π`, where the spiral is well inside the unit circle, and
/// gives up after four turns. A sign change of the excess is refined by
/// bisection; a discrete local maximum of the excess is refined by golden
/// section so that tangential contacts between grid points are not missed.
pub fn spiral_first_contact(kappa: f64, omega: f64, cfg: &SimConfig) -> Result<FirstContact> {
    cfg.validate()?;
    let spiral = Spiral::unit(kappa)?;
    let (_, omega0) = tangent_contact(&spiral);
    let omega = omega0 + (omega - omega0).rem_euclid(TAU);
    let excess = |t: f64| spiral.line_excess(omega, t);
    let hit = |theta_hit: f64| FirstContact { theta_hit, arclength: arclength(kappa, theta_hit) };

    let h = cfg.march_step;
    let start = omega.min(0.0) - TAU;
    let end = start + 4.0 * TAU;
    let steps = ((end - start) / h).ceil() as usize;
    let (step_sin, step_cos) = h.sin_cos();
    let growth = (kappa * h).exp();

    let mut r = 0.0;
    let (mut s, mut c) = (0.0, 0.0);
    let mut prev: Option<(f64, f64)> = None;
    let mut prev2: Option<(f64, f64)> = None;
    for k in 0..=steps {
        let t = start + k as f64 * h;
        if k % 64 == 0 {
            // Resynchronize the rotation recurrence.
            r = (kappa * t).exp();
            (s, c) = (t - omega).sin_cos();
        }
        let fk = r * c - 1.0;
        if fk >= 0.0 {
            if t < start + PI {
                return Err(Error::Domain(format!("march for kappa = {kappa} started beyond the shoreline")));
            }
            let (tp, _) = prev.expect("march cannot start beyond the shoreline");
            return Ok(hit(bisect(excess, tp, t, cfg.refine_tol)));
        }
        if let (Some((t2, f2)), Some((_, f1))) = (prev2, prev) {
            if f1 > f2 && f1 >= fk {
                let (tm, fm) = golden_max(excess, t2, t);
                if fm >= 0.0 {
                    return Ok(hit(bisect(excess, t2, tm, cfg.refine_tol)));
                }
                if fm >= -GRAZE_TOL {
                    return Ok(hit(tm));
                }
            }
        }
        prev2 = prev;
        prev = Some((t, fk));
        r *= growth;
        (c, s) = (c * step_cos - s * step_sin, s * step_cos + c * step_sin);
    }
    Err(Error::NoContact(end))
}

/// Mean first-contact arclength over shoreline directions `ω` uniform on
/// `[ω0, ω0 + 2π)`, all at unit distance.
pub fn monte_carlo_mean_arclength(kappa: f64, cfg: &SimConfig) -> Result<SampleStats> {
    let (_, omega0) = tangent_contact(&Spiral::unit(kappa)?);
    sharded(cfg, |stream| {
        let omega = stream.next_uniform(omega0, omega0 + TAU);
        Ok(spiral_first_contact(kappa, omega, cfg)?.arclength)
    })
}

/// Travel distance to `target` found by walking the coil one linear sweep at
/// a time, starting six sweeps below the target's magnitude.
pub fn coil_marching_delta(gamma: f64, target: f64) -> Result<f64> {
    let coil = Coil::new(gamma)?;
    if target == 0.0 || !target.is_finite() {
        return Err(Error::TargetAtOrigin);
    }
    let g = coil.gamma();
    let first = (target.abs().ln() / g.ln()).floor() as i32 - 6;
    // Σ_{k < first} (γ + 1) γ^k
    let mut travelled = (g + 1.0) * g.powi(first) / (g - 1.0);
    for k in first..first + 64 {
        let from = (-g).powi(k);
        let to = (-g).powi(k + 1);
        if !to.is_finite() {
            return Err(Error::Overflow);
        }
        if from.min(to) <= target && target <= from.max(to) {
            return Ok(travelled + (target - from).abs());
        }
        travelled += (to - from).abs();
    }
    Err(Error::Overflow)
}

/// Travel distance ratio `δ/X` of the coil whose turning points are shifted
/// to `±γ^{j + phase}`.
pub fn phase_shifted_ratio(gamma: f64, phase: f64, target: f64) -> f64 {
    let lg = gamma.ln();
    let turn = |i: i32| (lg * (2 * i) as f64 + lg * phase).exp();
    let mut i = ((target.ln() / lg - phase) / 2.0 - 1.0).ceil() as i32;
    while !(turn(i) < target) {
        i -= 1;
    }
    while !(target <= turn(i + 1)) {
        i += 1;
    }
    (target + 2.0 * turn(i + 1) / (gamma - 1.0)) / target
}

/// Ratio statistics of the randomized coil: per sample the phase `H` is
/// uniform on `[0, 2)`.
pub fn mixed_strategy_sample(gamma: f64, target: f64, cfg: &SimConfig) -> Result<SampleStats> {
    Coil::new(gamma)?;
    if !(target > 0.0 && target.is_finite()) {
        return Err(Error::Domain(format!("mixed strategy targets must be positive, got {target}")));
    }
    sharded(cfg, |stream| Ok(phase_shifted_ratio(gamma, stream.next_uniform(0.0, 2.0), target)))
}

/// The fixed coil against targets log-uniform over one period `[X0, γ² X0)`,
/// using [`coil_marching_delta`]. By self-similarity its mean ratio equals
/// the mixed strategy's expectation.
pub fn coil_log_uniform_sample(gamma: f64, base: f64, cfg: &SimConfig) -> Result<SampleStats> {
    Coil::new(gamma)?;
    if !(base > 0.0 && base.is_finite()) {
        return Err(Error::Domain(format!("period base must be positive, got {base}")));
    }
    let span = 2.0 * gamma.ln();
    sharded(cfg, |stream| {
        let x = base * stream.next_uniform(0.0, span).exp();
        Ok(coil_marching_delta(gamma, x)? / x)
    })
}

/// Largest `δ(X)/|X|` over a log-spaced grid of both signs spanning three
/// periods, plus probes just past each turning point where the supremum is
/// approached.
pub fn scan_worst_ratio(gamma: f64, points: usize) -> Result<f64> {
    let coil = Coil::new(gamma)?;
    if points < 100 {
        return Err(Error::Domain(format!("scan needs at least 100 points, got {points}")));
    }
    let lg = gamma.ln();
    let half = points / 2;
    let mut worst = f64::NEG_INFINITY;
    let mut probe = |x: f64| -> Result<()> {
        worst = worst.max(coil.delta(x)?.ratio());
        Ok(())
    };
    for p in 0..half {
        let x = (6.0 * lg * (p as f64 + 0.5) / half as f64).exp();
        probe(x)?;
        probe(-x)?;
    }
    for k in 0..3 {
        probe(gamma.powi(2 * k) * (1.0 + 1e-9))?;
        probe(-gamma.powi(2 * k + 1) * (1.0 + 1e-9))?;
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accumulator_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.25).collect();
        let mut whole = Accumulator::new();
        xs.iter().for_each(|&x| whole.push(x));
        let mut a = Accumulator::new();
        let mut b = Accumulator::new();
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        let merged = a.merge(b).stats();
        let whole = whole.stats();
        assert!((merged.mean - whole.mean).abs() < 1e-12);
        assert!((merged.std_error - whole.std_error).abs() < 1e-12);
        assert_eq!((merged.min, merged.max, merged.n), (whole.min, whole.max, whole.n));
    }

    #[test]
    fn marching_point_values() {
        assert!((coil_marching_delta(2.0, 1.0).unwrap() - 3.0).abs() < 1e-12);
        assert!((coil_marching_delta(2.0, -1.0).unwrap() - 5.0).abs() < 1e-12);
        assert!((coil_marching_delta(2.0, 3.0).unwrap() - 11.0).abs() < 1e-12);
        assert!(coil_marching_delta(2.0, 0.0).is_err());
    }

    #[test]
    fn marching_overflow() {
        assert_eq!(coil_marching_delta(2.0, 1e308), Err(Error::Overflow));
    }

    #[test]
    fn scan_needs_points() {
        assert!(scan_worst_ratio(2.0, 10).is_err());
    }

    #[test]
    fn invalid_config() {
        let cfg = SimConfig { samples: 0, ..SimConfig::default() };
        assert!(mixed_strategy_sample(2.0, 1.0, &cfg).is_err());
        assert!(mixed_strategy_sample(2.0, -1.0, &SimConfig::new(1, 10)).is_err());
    }
}
