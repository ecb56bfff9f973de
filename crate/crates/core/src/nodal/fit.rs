use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    pub points: usize,
}

/// Least-squares line through `(ln x, ln y)`.
pub fn log_log_fit(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.len() < 2 {
        return Err(LabError::Fit("need at least two points".into()));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(LabError::Fit("log-log fit needs positive data".into()));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 1e-12 * n {
        return Err(LabError::Fit("abscissae have no spread".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Ok(SlopeFit {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
        points: logs.len(),
    })
}

/// Slope of `log(length)` against `log(M)`. Needs three measurements with
/// `M` spanning at least one decade.
pub fn scaling_exponent_fit(measurements: &[(f64, f64)]) -> Result<SlopeFit> {
    if measurements.len() < 3 {
        return Err(LabError::Fit(format!(
            "need at least 3 measurements (got {})",
            measurements.len()
        )));
    }
    let (lo, hi) = measurements
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &(m, _)| (lo.min(m), hi.max(m)));
    if !(hi >= 10.0 * lo) {
        return Err(LabError::Fit(format!(
            "M values span [{lo}, {hi}], less than one decade"
        )));
    }
    log_log_fit(measurements)
}

/// Observed order from `(h, error)` pairs.
pub fn refinement_rate(errors: &[(f64, f64)]) -> Result<f64> {
    Ok(log_log_fit(errors)?.slope)
}
