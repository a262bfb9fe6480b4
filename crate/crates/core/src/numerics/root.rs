use super::{checked, Bracket, SolveReport};
use crate::{Error, Result};

const MAX_ITER: usize = 500;

/// Brent's bracketed root finder.
///
/// Inverse quadratic interpolation and secant steps are taken only when they
/// stay inside the current bracket and shrink it fast enough; otherwise the
/// step is a plain bisection, so convergence is guaranteed. Stops when
/// `|f(x)| <= tol` or the bracket half-width drops below `tol` (plus a few
/// ulps of `x`). The returned `x` always lies inside `bracket`.
pub fn find_root<F>(f: F, bracket: Bracket, tol: f64) -> Result<SolveReport>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let (mut a, mut b) = (bracket.lo(), bracket.hi());
    let mut fa = checked(&f, a)?;
    let mut fb = checked(&f, b)?;
    if fa == 0.0 {
        return Ok(SolveReport { x: a, value: 0.0, iterations: 0, converged: true });
    }
    if fb == 0.0 {
        return Ok(SolveReport { x: b, value: 0.0, iterations: 0, converged: true });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::InvalidBracket { lo: a, hi: b });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for iter in 1..=MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let m = 0.5 * (c - b);
        if fb.abs() <= tol || m.abs() <= tol1 || fb == 0.0 {
            return Ok(SolveReport { x: b, value: fb, iterations: iter, converged: true });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(m) };
        fb = checked(&f, b)?;
    }
    Err(Error::NoConvergence { iterations: MAX_ITER, residual: fb })
}
