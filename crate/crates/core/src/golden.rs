//! Reference values, as published to ten significant digits, and the
//! tolerances they are checked at. Shared by `shoreline check` and the test
//! suites.

/// Growth rate of the min-max spiral.
pub const MINMAX_KAPPA: f64 = 0.212_469_559_4;
/// `e^κ` of the min-max spiral.
pub const MINMAX_EXP_KAPPA: f64 = 1.236_728_466_2;
/// Worst-case arclength of the min-max spiral at unit distance.
pub const MINMAX_ARCLENGTH: f64 = 13.811_135_179_5;

pub const MINMEAN_KAPPA: f64 = 0.373_205_131_6;
pub const MINMEAN_EXP_KAPPA: f64 = 1.452_382_238_7;
/// Mean arclength of the min-mean spiral at unit distance.
pub const MINMEAN_ARCLENGTH: f64 = 7.032_185_786_5;

/// Earlier estimates obtained by minimizing `e^{κθ1}/κ`.
pub const ERRONEOUS_KAPPA: f64 = 0.223_25;
pub const ERRONEOUS_ARCLENGTH: f64 = 13.49;

pub const COIL_MINMAX_GAMMA: f64 = 2.0;
pub const COIL_MINMAX_RATIO: f64 = 9.0;

/// Period extrema of `I(X)` at `γ = 2`, as quoted (`1 + 6 ln 2`, `1 + 12/e`).
pub const I_MIN_AT_TWO_QUOTED: f64 = 5.1588;
pub const I_MAX_AT_TWO_QUOTED: f64 = 5.4145;

pub const COIL_GAMMA_FOR_MIN: f64 = 5.704_137_267_3;
pub const COIL_MEAN_MIN: f64 = 4.008_981_337_5;
pub const COIL_GAMMA_FOR_MAX: f64 = 3.223_254_940_1;
pub const COIL_MEAN_MAX: f64 = 4.813_155_845_8;

/// Optimal mixed-strategy expansion ratio `1/W(1/e)`.
pub const MIXED_GAMMA: f64 = 3.591_121_476_669;

pub mod tol {
    pub const KAPPA: f64 = 1e-8;
    pub const OBJECTIVE: f64 = 1e-7;
    pub const EXP_KAPPA: f64 = 1e-8;
    pub const SYSTEM_RESIDUAL: f64 = 1e-12;
    pub const COIL_MINMAX: f64 = 1e-9;
    pub const SCAN_SUPREMUM: f64 = 1e-6;
    pub const COIL_POINT: f64 = 1e-12;
    pub const I_CLOSED_FORM: f64 = 1e-12;
    pub const I_SCAN: f64 = 1e-5;
    pub const COIL_MINMEAN: f64 = 1e-8;
    pub const MIXED_GAMMA: f64 = 1e-10;
    pub const ORACLE_RELATIVE: f64 = 1e-9;
    pub const THETA1_SCALING: f64 = 1e-10;
    pub const TANGENCY: f64 = 1e-10;
    /// Monte Carlo agreement, in standard errors.
    pub const Z_SCORE: f64 = 3.0;
}

/// Whether `value` agrees with `quoted` to the quoted number of significant
/// digits, i.e. within one unit of the last quoted digit. This accepts both
/// rounded and truncated quotations.
pub fn matches_significant(value: f64, quoted: f64, digits: i32) -> bool {
    let exponent = quoted.abs().log10().floor() as i32;
    let unit = 10f64.powi(exponent - digits + 1);
    (value - quoted).abs() < unit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert!(matches_significant(0.223_253_8, 0.223_25, 5));
        assert!(!matches_significant(0.2234, 0.223_25, 5));
        assert!(matches_significant(13.495, 13.49, 4));
        assert!(!matches_significant(13.827, 13.49, 4));
    }
}
