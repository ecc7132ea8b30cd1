//! Power-law fitting of deflection-vs-scale data, used by the compare
//! scenario to read off how each force law responds to amplitude scaling.

use microdyn::{linear_fit, Error, Result};

/// Log-log least-squares fit of deflection against scale factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFitResult {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Ordinary least squares on (ln s, ln |deflection|). Requires at least
/// three points, positive scales, and deflections that are nonzero and all
/// of one sign (the magnitude is what scales; a sign flip would mean the
/// runs disagree about the branch).
pub fn fit_scaling(pairs: &[(f64, f64)]) -> Result<ScalingFitResult> {
    if pairs.len() < 3 {
        return Err(Error::Domain {
            field: "pairs",
            value: pairs.len() as f64,
            reason: "need at least three points to fit a power law",
        });
    }
    let mut sign = 0.0f64;
    for &(s, d) in pairs {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Domain {
                field: "s",
                value: s,
                reason: "scales must be positive and finite",
            });
        }
        if d == 0.0 || !d.is_finite() {
            return Err(Error::Domain {
                field: "deflection",
                value: d,
                reason: "deflections must be nonzero and finite",
            });
        }
        if sign == 0.0 {
            sign = d.signum();
        } else if d.signum() != sign {
            return Err(Error::Domain {
                field: "deflection",
                value: d,
                reason: "deflections must all share one sign",
            });
        }
    }
    let x: Vec<f64> = pairs.iter().map(|&(s, _)| s.ln()).collect();
    let y: Vec<f64> = pairs.iter().map(|&(_, d)| d.abs().ln()).collect();
    let fit = linear_fit(&x, &y)?;
    Ok(ScalingFitResult {
        exponent: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared.clamp(0.0, 1.0),
        n_points: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn quadratic_data_fits_exponent_two() {
        let pairs: Vec<(f64, f64)> = [1.0, 2.0, 4.0, 8.0].iter().map(|&s| (s, s * s)).collect();
        let fit = fit_scaling(&pairs).unwrap();
        assert_relative_eq!(fit.exponent, 2.0, max_relative = 1e-12);
        assert_relative_eq!(fit.r_squared, 1.0, max_relative = 1e-12);
        assert_eq!(fit.n_points, 4);
    }

    #[test]
    fn linear_data_fits_exponent_one() {
        let pairs: Vec<(f64, f64)> = [1.0, 2.0, 4.0, 8.0].iter().map(|&s| (s, 3.0 * s)).collect();
        let fit = fit_scaling(&pairs).unwrap();
        assert_relative_eq!(fit.exponent, 1.0, max_relative = 1e-12);
        assert_relative_eq!(fit.intercept, 3.0f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn negative_deflections_fit_by_magnitude() {
        let pairs: Vec<(f64, f64)> = [1.0, 2.0, 4.0].iter().map(|&s| (s, -s * s)).collect();
        let fit = fit_scaling(&pairs).unwrap();
        assert_relative_eq!(fit.exponent, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn too_few_points_are_rejected() {
        let err = fit_scaling(&[(1.0, 1.0), (2.0, 4.0)]).unwrap_err();
        assert!(matches!(err, Error::Domain { field: "pairs", .. }));
    }

    #[test]
    fn nonpositive_scale_is_rejected() {
        let err = fit_scaling(&[(0.0, 1.0), (2.0, 4.0), (4.0, 16.0)]).unwrap_err();
        assert!(matches!(err, Error::Domain { field: "s", .. }));
    }

    #[test]
    fn zero_deflection_is_rejected() {
        let err = fit_scaling(&[(1.0, 0.0), (2.0, 4.0), (4.0, 16.0)]).unwrap_err();
        assert!(matches!(err, Error::Domain { field: "deflection", .. }));
    }

    #[test]
    fn mixed_sign_deflections_are_rejected() {
        let err = fit_scaling(&[(1.0, 1.0), (2.0, -4.0), (4.0, 16.0)]).unwrap_err();
        assert!(matches!(err, Error::Domain { field: "deflection", .. }));
    }
}
