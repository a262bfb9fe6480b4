use crate::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 200;
const MAX_HALVINGS: usize = 30;

/// Converged solution of a 2-D nonlinear system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemReport {
    pub point: (f64, f64),
    /// `max(|F1|, |F2|)` at `point`.
    pub residual: f64,
    pub iterations: usize,
}

fn norm(v: (f64, f64)) -> f64 {
    v.0.abs().max(v.1.abs())
}

fn eval<F>(f: &F, x: f64, y: f64) -> Result<(f64, f64)>
where
    F: Fn(f64, f64) -> (f64, f64),
{
    let v = f(x, y);
    if v.0.is_finite() && v.1.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteEvaluation { at: x })
    }
}

/// Newton's method for `F(x, y) = 0` with a central-difference Jacobian.
///
/// Each Newton step is halved up to 30 times until the max-norm residual
/// decreases. Fails with [`Error::SingularJacobian`] or, after 200
/// iterations, [`Error::NoConvergence`].
pub fn solve_system2<F>(f: F, guess: (f64, f64), tol: f64) -> Result<SystemReport>
where
    F: Fn(f64, f64) -> (f64, f64),
{
    let (mut x, mut y) = guess;
    let mut fv = eval(&f, x, y)?;
    let mut res = norm(fv);
    for iter in 0..DEFAULT_MAX_ITER {
        if res <= tol {
            return Ok(SystemReport { point: (x, y), residual: res, iterations: iter });
        }
        let hx = 1e-7_f64.max(1e-7 * x.abs());
        let hy = 1e-7_f64.max(1e-7 * y.abs());
        let (xp, xm) = (eval(&f, x + hx, y)?, eval(&f, x - hx, y)?);
        let (yp, ym) = (eval(&f, x, y + hy)?, eval(&f, x, y - hy)?);
        let j11 = (xp.0 - xm.0) / (2.0 * hx);
        let j21 = (xp.1 - xm.1) / (2.0 * hx);
        let j12 = (yp.0 - ym.0) / (2.0 * hy);
        let j22 = (yp.1 - ym.1) / (2.0 * hy);
        let det = j11 * j22 - j12 * j21;
        let scale = (j11.abs() + j12.abs()) * (j21.abs() + j22.abs());
        if !det.is_finite() || det.abs() <= 1e-14 * scale || scale == 0.0 {
            return Err(Error::SingularJacobian { x, y });
        }
        let dx = -(j22 * fv.0 - j12 * fv.1) / det;
        let dy = -(-j21 * fv.0 + j11 * fv.1) / det;

        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let (nx, ny) = (x + t * dx, y + t * dy);
            if let Ok(nv) = eval(&f, nx, ny) {
                if norm(nv) < res {
                    accepted = Some((nx, ny, nv));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((nx, ny, nv)) => {
                x = nx;
                y = ny;
                fv = nv;
                res = norm(nv);
            }
            None => {
                return Err(Error::NoConvergence { iterations: iter + 1, residual: res });
            }
        }
    }
    if res <= tol {
        return Ok(SystemReport { point: (x, y), residual: res, iterations: DEFAULT_MAX_ITER });
    }
    Err(Error::NoConvergence { iterations: DEFAULT_MAX_ITER, residual: res })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear() {
        let r = solve_system2(|x, y| (x - 1.0, y - 2.0), (0.0, 0.0), 1e-12).unwrap();
        assert!((r.point.0 - 1.0).abs() < 1e-12 && (r.point.1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn circle_meets_diagonal() {
        let r = solve_system2(|x, y| (x * x + y * y - 1.0, x - y), (1.0, 0.0), 1e-12).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r.point.0 - s).abs() < 1e-12 && (r.point.1 - s).abs() < 1e-12);
        assert!(r.residual <= 1e-12);
    }

    #[test]
    fn singular() {
        let err = solve_system2(|x, y| (x + y - 1.0, 2.0 * x + 2.0 * y - 3.0), (0.0, 0.0), 1e-12).unwrap_err();
        assert!(matches!(err, Error::SingularJacobian { .. }));
    }

    #[test]
    fn no_root() {
        let err = solve_system2(|x, y| (x * x + 1.0, y), (0.5, 0.0), 1e-12).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. } | Error::SingularJacobian { .. }));
    }
}
