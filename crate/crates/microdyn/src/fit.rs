//! Ordinary least-squares line fit, used for fringe-shift calibration and
//! scaling-exponent extraction.

use crate::error::{Error, Result};

/// Result of fitting y = slope * x + intercept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination; 1 for an exact fit. When the response
    /// has zero variance the residual is compared against zero instead.
    pub r_squared: f64,
}

/// Least-squares fit of y against x.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() {
        return Err(Error::Dimension {
            detail: format!("x has {} samples but y has {}", x.len(), y.len()),
        });
    }
    if x.len() < 2 {
        return Err(Error::Dimension {
            detail: format!("need at least 2 samples, got {}", x.len()),
        });
    }
    if let Some(&v) = x.iter().chain(y.iter()).find(|v| !v.is_finite()) {
        return Err(Error::Domain {
            field: "samples",
            value: v,
            reason: "must be finite",
        });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mx;
        let dy = yi - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::Domain {
            field: "x",
            value: mx,
            reason: "predictor has zero variance",
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res = syy - slope * sxy;
    let r_squared = if syy == 0.0 {
        // constant response: perfect iff the fitted line is flat through it
        if slope == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        // clamp tiny negative residuals from cancellation
        1.0 - (ss_res.max(0.0)) / syy
    };
    Ok(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Fit a power law y = a * x^p through log-log regression and return the
/// exponent p together with the fit quality.
pub fn power_law_exponent(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if let Some(&v) = x.iter().chain(y.iter()).find(|v| **v <= 0.0) {
        return Err(Error::Domain {
            field: "samples",
            value: v,
            reason: "power-law fit needs strictly positive values",
        });
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    linear_fit(&lx, &ly)
}
