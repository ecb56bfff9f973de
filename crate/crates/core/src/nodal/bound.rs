//! The `F(N) ≤ 2A·F(N/(1+c))` recursion and the global exponent.

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecursionReport {
    pub n: f64,
    pub n0: f64,
    pub a: f64,
    pub c: f64,
    pub f_n0: f64,
    /// `log_{1+c}(2A)`.
    pub exponent: f64,
    /// `(N/N₀)^{exponent}·F(N₀)`.
    pub closed_form: f64,
    pub steps: u32,
    /// `(2A)^{steps}·F(N₀)`.
    pub iterated: f64,
}

impl RecursionReport {
    /// `closed_form ≤ iterated ≤ 2A·closed_form` up to rounding.
    pub fn agrees(&self) -> bool {
        let tol = 1e-9;
        self.iterated >= self.closed_form * (1.0 - tol)
            && self.iterated <= 2.0 * self.a * self.closed_form * (1.0 + tol)
    }
}

pub fn growth_exponent(a: f64, c: f64) -> f64 {
    (2.0 * a).ln() / (1.0 + c).ln()
}

fn validate(a: f64, c: f64) -> Result<()> {
    if !(a >= 2.0 && a.is_finite()) {
        return Err(LabError::InvalidParameter(format!("A must be at least 2 (got {a})")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(LabError::InvalidParameter(format!("c must be positive (got {c})")));
    }
    Ok(())
}

/// Iterate until the index drops to `N₀`; below `N₀` the base value is
/// returned unchanged.
pub fn nodal_bound_recursion(n: f64, n0: f64, a: f64, c: f64, f_n0: f64) -> Result<RecursionReport> {
    validate(a, c)?;
    if !(n0 > 0.0) {
        return Err(LabError::InvalidParameter(format!("N₀ must be positive (got {n0})")));
    }
    let exponent = growth_exponent(a, c);
    let base = RecursionReport {
        n,
        n0,
        a,
        c,
        f_n0,
        exponent,
        closed_form: f_n0,
        steps: 0,
        iterated: f_n0,
    };
    if n <= n0 {
        return Ok(base);
    }
    let levels = (n / n0).ln() / (1.0 + c).ln();
    let steps = (levels - 1e-9).ceil().max(0.0) as u32;
    let mut iterated = f_n0;
    for _ in 0..steps {
        iterated *= 2.0 * a;
    }
    Ok(RecursionReport {
        closed_form: (n / n0).powf(exponent) * f_n0,
        steps,
        iterated,
        ..base
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundLedger {
    pub m: f64,
    pub a: f64,
    pub c: f64,
    /// `α₀ = log_{1+c}(2A)`.
    pub alpha0: f64,
    /// `β = α₀/3 + 1/4`.
    pub beta: f64,
    pub cover_constant: f64,
    /// `cover_constant · M^β`.
    pub bound: f64,
    pub n0: Option<f64>,
    pub f_n0: Option<f64>,
}

impl BoundLedger {
    pub fn with_reference(mut self, n0: f64, f_n0: f64) -> Self {
        self.n0 = Some(n0);
        self.f_n0 = Some(f_n0);
        self
    }
}

pub fn assemble_global_bound(m: f64, a: f64, c: f64, cover_constant: f64) -> Result<BoundLedger> {
    validate(a, c)?;
    if !(m >= 1.0 && m.is_finite()) {
        return Err(LabError::InvalidParameter(format!("M must be at least 1 (got {m})")));
    }
    let alpha0 = growth_exponent(a, c);
    let beta = alpha0 / 3.0 + 0.25;
    Ok(BoundLedger {
        m,
        a,
        c,
        alpha0,
        beta,
        cover_constant,
        bound: cover_constant * m.powf(beta),
        n0: None,
        f_n0: None,
    })
}
