//! The acceptance criteria as runnable checks.
//!
//! Each check recomputes its quantities from scratch and compares them with
//! [`crate::golden`] at the pinned tolerances. `shoreline check` and the
//! `acceptance` test target both run these.

use std::f64::consts::{E, LN_2};
use std::fmt;
use std::time::{Duration, Instant};

use crate::coil::{optimal_minmax_coil, optimal_minmean_coil, optimal_mixed, Coil};
use crate::golden::{self, matches_significant, tol};
use crate::numerics::RandomStream;
use crate::simulate::{
    coil_marching_delta, mixed_strategy_sample, monte_carlo_mean_arclength, scan_worst_ratio, SimConfig,
    MONTE_CARLO_MARCH_STEP,
};
use crate::spiral_geometry::{
    line_distance_to_origin, scale_theta1, second_contact, spiral_tangent_slope, LineGeneral, Spiral,
};
use crate::spiral_objectives::{
    minimize_erroneous, minimize_minmax, minimize_minmean, minmax_angle_residuals, minmax_objective,
    minmax_objective_from_angles, minmean_angle_residuals, minmean_objective_from_angles, solve_minmax_angles,
    solve_minmean_angles, MINMAX_GUESS, MINMEAN_GUESS,
};
use crate::Result;

/// Seed for every seeded acceptance run.
pub const SEED: u64 = 20_160_312;
/// Samples for the Monte Carlo criteria.
pub const MONTE_CARLO_SAMPLES: usize = 1_000_000;
/// Random cases per property check.
pub const PROPERTY_CASES: usize = 1000;

#[derive(Debug, Clone)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

/// Accumulates sub-checks of one criterion.
struct Checks {
    passed: bool,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Self { passed: true, notes: Vec::new() }
    }

    fn close(&mut self, what: &str, got: f64, want: f64, tolerance: f64) {
        let ok = (got - want).abs() <= tolerance;
        self.record(ok, format!("{what} = {got:.12} (want {want}, tol {tolerance:e})"));
    }

    fn record(&mut self, ok: bool, note: String) {
        self.passed &= ok;
        self.notes.push(if ok { note } else { format!("{note} <-- FAILED") });
    }

    fn timed(&mut self, what: &str, elapsed: Duration, limit: Duration) {
        self.record(elapsed < limit, format!("{what} runtime {:.2}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()));
    }

    fn finish(self, id: u32, title: &'static str) -> Criterion {
        Criterion { id, title, passed: self.passed, detail: self.notes.join("; ") }
    }
}

fn run(id: u32, title: &'static str, body: impl FnOnce(&mut Checks) -> Result<()>) -> Criterion {
    let mut checks = Checks::new();
    if let Err(e) = body(&mut checks) {
        checks.record(false, format!("error: {e}"));
    }
    checks.finish(id, title)
}

pub fn minmax_spiral() -> Criterion {
    run(1, "min-max spiral", |c| {
        let start = Instant::now();
        let opt = minimize_minmax()?;
        c.timed("minimization", start.elapsed(), Duration::from_secs(1));
        c.close("kappa", opt.kappa, golden::MINMAX_KAPPA, tol::KAPPA);
        c.close("objective", opt.objective_value, golden::MINMAX_ARCLENGTH, tol::OBJECTIVE);
        c.close("e^kappa", opt.kappa.exp(), golden::MINMAX_EXP_KAPPA, tol::EXP_KAPPA);
        Ok(())
    })
}

pub fn minmax_angle_system() -> Criterion {
    run(2, "min-max angle system", |c| {
        let opt = minimize_minmax()?;
        let pair = solve_minmax_angles(MINMAX_GUESS)?;
        let (r1, r2) = minmax_angle_residuals(&pair);
        let res = r1.abs().max(r2.abs());
        c.record(res < tol::SYSTEM_RESIDUAL, format!("residual {res:e} (< {:e})", tol::SYSTEM_RESIDUAL));
        c.close("tan(alpha)", pair.kappa(), opt.kappa, tol::KAPPA);
        c.close("csc(alpha) sec(beta)", minmax_objective_from_angles(&pair), opt.objective_value, tol::OBJECTIVE);
        Ok(())
    })
}

pub fn minmean_spiral() -> Criterion {
    run(3, "min-mean spiral", |c| {
        let opt = minimize_minmean()?;
        c.close("kappa", opt.kappa, golden::MINMEAN_KAPPA, tol::KAPPA);
        c.close("objective", opt.objective_value, golden::MINMEAN_ARCLENGTH, tol::OBJECTIVE);
        c.close("e^kappa", opt.kappa.exp(), golden::MINMEAN_EXP_KAPPA, tol::EXP_KAPPA);
        let pair = solve_minmean_angles(MINMEAN_GUESS)?;
        let (r1, r2) = minmean_angle_residuals(&pair);
        let res = r1.abs().max(r2.abs());
        c.record(res < tol::SYSTEM_RESIDUAL, format!("angle-system residual {res:e}"));
        c.close("angle-system tan(alpha)", pair.kappa(), opt.kappa, tol::KAPPA);
        c.close("angle-system objective", minmean_objective_from_angles(&pair), opt.objective_value, tol::OBJECTIVE);
        Ok(())
    })
}

pub fn erroneous_estimates() -> Criterion {
    run(4, "erroneous-objective estimates", |c| {
        let opt = minimize_erroneous()?;
        c.record(
            matches_significant(opt.kappa, golden::ERRONEOUS_KAPPA, 5),
            format!("argmin {:.8} vs {} (5 significant digits)", opt.kappa, golden::ERRONEOUS_KAPPA),
        );
        let true_length = minmax_objective(opt.kappa)?;
        c.record(
            matches_significant(true_length, golden::ERRONEOUS_ARCLENGTH, 4),
            format!(
                "true arclength at argmin {true_length:.6} vs {} (4 significant digits); \
                 erroneous objective minimum is {:.6}",
                golden::ERRONEOUS_ARCLENGTH,
                opt.objective_value
            ),
        );
        Ok(())
    })
}

pub fn monte_carlo_concordance() -> Criterion {
    run(5, "Monte Carlo concordance", |c| {
        let cfg = SimConfig::new(SEED, MONTE_CARLO_SAMPLES).with_march_step(MONTE_CARLO_MARCH_STEP);
        let start = Instant::now();
        let stats = monte_carlo_mean_arclength(golden::MINMEAN_KAPPA, &cfg)?;
        c.timed("simulation", start.elapsed(), Duration::from_secs(60));
        let z = stats.z_score(golden::MINMEAN_ARCLENGTH);
        c.record(
            z.abs() <= tol::Z_SCORE,
            format!("mean {:.8} +- {:.2e} over n = {}, z = {z:.3}", stats.mean, stats.std_error, stats.n),
        );
        Ok(())
    })
}

pub fn coil_minmax() -> Criterion {
    run(6, "coil min-max", |c| {
        let (gamma, ratio) = optimal_minmax_coil()?;
        c.close("gamma", gamma, golden::COIL_MINMAX_GAMMA, tol::COIL_MINMAX);
        c.close("ratio", ratio, golden::COIL_MINMAX_RATIO, tol::COIL_MINMAX);
        let scanned = scan_worst_ratio(2.0, 100_000)?;
        c.record(
            scanned >= golden::COIL_MINMAX_RATIO - tol::SCAN_SUPREMUM,
            format!("scanned sup {scanned:.12} >= 9 - {:e}", tol::SCAN_SUPREMUM),
        );
        Ok(())
    })
}

pub fn coil_point_values() -> Criterion {
    run(7, "coil point values", |c| {
        let g = 2.0;
        let coil = Coil::new(g)?;
        let plus = 1.0 + 2.0 / (g - 1.0);
        let minus = 1.0 + 2.0 * g / (g - 1.0);
        c.close("delta(1)", coil.delta(1.0)?.delta, 3.0, tol::COIL_POINT);
        c.close("delta(-1)", coil.delta(-1.0)?.delta, 5.0, tol::COIL_POINT);
        c.close("1 + 2/(g-1)", plus, 3.0, tol::COIL_POINT);
        c.close("1 + 2g/(g-1)", minus, 5.0, tol::COIL_POINT);
        c.close("marching delta(1)", coil_marching_delta(g, 1.0)?, plus, tol::COIL_POINT);
        c.close("marching delta(-1)", coil_marching_delta(g, -1.0)?, minus, tol::COIL_POINT);
        Ok(())
    })
}

/// Min and max of `I` on a log-uniform grid of `points` over `[x0, γ² x0]`.
pub fn scan_i_period(coil: &Coil, x0: f64, points: usize) -> Result<(f64, f64)> {
    let span = 2.0 * coil.gamma().ln();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..points {
        let x = x0 * (span * k as f64 / (points - 1) as f64).exp();
        let v = coil.i_of_x(x)?;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

pub fn i_extrema() -> Criterion {
    run(8, "I(X) extrema", |c| {
        let coil = Coil::new(2.0)?;
        let ext = coil.i_extrema();
        c.close("min", ext.min_value, 1.0 + 6.0 * LN_2, tol::I_CLOSED_FORM);
        c.close("max", ext.max_value, 1.0 + 12.0 / E, tol::I_CLOSED_FORM);
        c.record(
            matches_significant(ext.min_value, golden::I_MIN_AT_TWO_QUOTED, 5)
                && matches_significant(ext.max_value, golden::I_MAX_AT_TWO_QUOTED, 5),
            format!("quoted {} and {}", golden::I_MIN_AT_TWO_QUOTED, golden::I_MAX_AT_TWO_QUOTED),
        );
        let (lo, hi) = scan_i_period(&coil, 1.0, 10_000)?;
        c.close("scanned min", lo, ext.min_value, tol::I_SCAN);
        c.close("scanned max", hi, ext.max_value, tol::I_SCAN);
        c.record(
            lo >= ext.min_value - tol::I_SCAN && hi <= ext.max_value + tol::I_SCAN,
            "scan inside closed-form extrema".into(),
        );
        Ok(())
    })
}

pub fn coil_minmean() -> Criterion {
    run(9, "coil min-mean optima", |c| {
        let m = optimal_minmean_coil()?;
        c.close("gamma (period min)", m.gamma_for_min, golden::COIL_GAMMA_FOR_MIN, tol::COIL_MINMEAN);
        c.close("mean (period min)", m.mean_min, golden::COIL_MEAN_MIN, tol::COIL_MINMEAN);
        c.close("gamma (period max)", m.gamma_for_max, golden::COIL_GAMMA_FOR_MAX, tol::COIL_MINMEAN);
        c.close("mean (period max)", m.mean_max, golden::COIL_MEAN_MAX, tol::COIL_MINMEAN);
        Ok(())
    })
}

pub fn mixed_strategy() -> Criterion {
    run(10, "mixed strategy", |c| {
        let m = optimal_mixed()?;
        c.close("gamma", m.gamma, golden::MIXED_GAMMA, tol::MIXED_GAMMA);
        let stats = mixed_strategy_sample(m.gamma, 1.0, &SimConfig::new(SEED, MONTE_CARLO_SAMPLES))?;
        let z = stats.z_score(1.0 + m.gamma);
        c.record(
            z.abs() <= tol::Z_SCORE,
            format!("sampled ratio {:.8} +- {:.2e} vs 1 + gamma, z = {z:.3}", stats.mean, stats.std_error),
        );
        Ok(())
    })
}

pub fn property_suites() -> Criterion {
    run(11, "property suites", |c| {
        let start = Instant::now();
        let mut rng = RandomStream::new(SEED);

        let mut worst = 0.0_f64;
        let mut worst_scaling = 0.0_f64;
        for _ in 0..PROPERTY_CASES {
            let g = rng.next_uniform(1.1, 8.0);
            let sign = if rng.next_unit() < 0.5 { -1.0 } else { 1.0 };
            let x = sign * g.powf(rng.next_uniform(-6.0, 6.0));
            let coil = Coil::new(g)?;
            let closed = coil.delta(x)?.delta;
            worst = worst.max((closed - coil_marching_delta(g, x)?).abs() / closed);
            let scaled = coil.delta(g * g * x)?.delta;
            worst_scaling = worst_scaling.max((scaled - g * g * closed).abs() / scaled);
        }
        c.record(worst <= tol::ORACLE_RELATIVE, format!("delta vs marching rel {worst:e}"));
        c.record(worst_scaling <= tol::ORACLE_RELATIVE, format!("self-similarity rel {worst_scaling:e}"));

        let mut scaling = 0.0_f64;
        let mut tangency = 0.0_f64;
        for _ in 0..100 {
            let k = rng.next_uniform(0.05, 2.0);
            let unit = second_contact(&Spiral::unit(k)?)?;
            for r in [0.1, 1.0, 10.0, 1000.0] {
                let s = Spiral::new(k, r)?;
                let cr = second_contact(&s)?;
                scaling = scaling
                    .max(((cr.theta1 - cr.omega0) - (unit.theta1 - unit.omega0)).abs())
                    .max((scale_theta1(k, unit.theta1, r) - cr.theta1).abs());
                let (x0, y0) = s.point(cr.theta0);
                let line = LineGeneral::through_point(x0, y0, spiral_tangent_slope(k, cr.theta0)?);
                tangency = tangency
                    .max((line_distance_to_origin(&line)? - r).abs() / r)
                    .max(s.line_excess(cr.omega0, cr.theta1).abs() / r);
            }
        }
        c.record(scaling <= tol::THETA1_SCALING, format!("theta1 scaling {scaling:e}"));
        c.record(tangency <= tol::TANGENCY, format!("tangency residual {tangency:e}"));

        let draws = |seed| {
            let mut s = RandomStream::new(seed);
            (0..1000).map(|_| s.next_unit().to_bits()).collect::<Vec<_>>()
        };
        let cfg = SimConfig::new(SEED, 50_000);
        let a = mixed_strategy_sample(2.0, 1.0, &cfg)?;
        let b = mixed_strategy_sample(2.0, 1.0, &cfg)?;
        c.record(draws(SEED) == draws(SEED) && a == b, "seeded streams and statistics reproducible".into());
        c.timed("property suites", start.elapsed(), Duration::from_secs(30));
        Ok(())
    })
}

/// Every criterion in order.
pub fn run_all() -> Vec<Criterion> {
    vec![
        minmax_spiral(),
        minmax_angle_system(),
        minmean_spiral(),
        erroneous_estimates(),
        monte_carlo_concordance(),
        coil_minmax(),
        coil_point_values(),
        i_extrema(),
        coil_minmean(),
        mixed_strategy(),
        property_suites(),
    ]
}

/// Criterion 12 has no check: global optimality of spirals is an open
/// conjecture.
pub const OUT_OF_SCOPE_NOTE: &str =
    "[ N/A] 12 global optimality of logarithmic spirals: open conjecture, not checked";
