use std::f64::consts::E;

use crate::{Error, Result};

/// Principal branch `W0` of the Lambert W function: `w * e^w = x`, `w >= -1`.
///
/// Halley iteration from a branch-point series near `-1/e`, `ln(1 + x)` in
/// the middle and `ln x - ln ln x` for large arguments.
pub fn lambert_w0(x: f64) -> Result<f64> {
    let branch = -1.0 / E;
    if x.is_nan() || x < branch - 4.0 * f64::EPSILON {
        return Err(Error::Domain(format!("lambert_w0 requires x >= -1/e, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x <= branch {
        return Ok(-1.0);
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }

    let mut w = if x < -0.32 {
        let p = (2.0 * (E * x + 1.0)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x <= E {
        x.ln_1p()
    } else {
        let l = x.ln();
        l - l.ln()
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 1e-15 * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert!((lambert_w0(E).unwrap() - 1.0).abs() < 1e-15);
        assert!((lambert_w0(-1.0 / E).unwrap() + 1.0).abs() < 1e-7);
        assert!((lambert_w0(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-15);
    }

    #[test]
    fn mixed_strategy_ratio() {
        let w = lambert_w0(1.0 / E).unwrap();
        assert!((w - 0.278_464_542_761_073_8).abs() < 1e-15);
        assert!((1.0 / w - 3.591_121_476_669).abs() < 1e-10);
    }

    #[test]
    fn defining_identity() {
        for x in [-0.3, 0.0, 0.5, 1.0, 10.0, 100.0, -0.367, 1e6, 1e-9] {
            let w = lambert_w0(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1.0), "x = {x}");
            assert!(w >= -1.0);
        }
    }

    #[test]
    fn domain() {
        assert!(matches!(lambert_w0(-0.5), Err(Error::Domain(_))));
        assert!(lambert_w0(f64::NAN).is_err());
    }
}
