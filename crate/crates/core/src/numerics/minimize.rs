use super::{checked, find_root, Bracket, SolveReport};
use crate::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_ITER: usize = 400;

/// Minimizes a unimodal `f` on `bracket`.
///
/// Golden-section search narrows the bracket until its width is below
/// `tol` or stops shrinking usefully (comparisons of nearly equal function
/// values carry only about half the digits of `f`). The result is then
/// polished by locating the sign change of a five-point central difference
/// of `f`, which recovers the digits golden section cannot resolve. The
/// polish is skipped when the difference does not change sign near the
/// estimate, e.g. for a minimum on the bracket boundary.
pub fn minimize_scalar<F>(f: F, bracket: Bracket, tol: f64) -> Result<SolveReport>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let (mut a, mut b) = (bracket.lo(), bracket.hi());
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = checked(&f, x1)?;
    let mut f2 = checked(&f, x2)?;
    let mut iterations = 0;
    let floor = 1e-7 * (1.0 + a.abs().max(b.abs()));
    while b - a > tol.max(floor) && iterations < MAX_ITER {
        iterations += 1;
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = checked(&f, x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = checked(&f, x2)?;
        }
    }
    let (mut x, mut fx) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };

    let h = 1e-4 * (1.0 + x.abs());
    let slope = |t: f64| (8.0 * (f(t + h) - f(t - h)) - (f(t + 2.0 * h) - f(t - 2.0 * h))) / (12.0 * h);
    let reach = 10.0 * (b - a).max(h);
    let lo = (x - reach).max(bracket.lo() + 2.0 * h);
    let hi = (x + reach).min(bracket.hi() - 2.0 * h);
    if lo < hi {
        let (slo, shi) = (slope(lo), slope(hi));
        if slo < 0.0 && shi > 0.0 {
            let polish = find_root(slope, Bracket::new(lo, hi)?, tol.min(1e-14))?;
            iterations += polish.iterations;
            let fp = checked(&f, polish.x)?;
            // Reject a polish that is clearly worse; function noise allows
            // a few ulps of slack.
            if fp <= fx + 8.0 * f64::EPSILON * fx.abs().max(1.0) {
                x = polish.x;
                fx = fp;
            }
        }
    }
    Ok(SolveReport { x, value: fx, iterations, converged: true })
}
