use std::io::Write;

use serde::{Deserialize, Serialize};

use super::index::{ball_norm, doubling_index, BallNorm};
use crate::error::{LabError, Result};
use crate::field::{Point, ScalarField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityRecord {
    pub center: Point,
    pub r: f64,
    pub t: f64,
    pub delta: f64,
    /// `N(x, R)`.
    pub index_inner: f64,
    /// `N(x, tR)`.
    pub index_outer: f64,
    /// `‖u‖_{∞,tR} / ‖u‖_{∞,R}`.
    pub ratio: f64,
    /// `t^{(1−δ)N(x,R)}`.
    pub lower_bound: f64,
    /// `t^{(1+δ)N(x,tR)}`.
    pub upper_bound: f64,
    /// The `C` with `ρ = t^{(1−δ)N(x,R) + C log₂ δ}`; the lower bound with
    /// constant `C` holds iff `C ≥ c_lo`.
    pub c_lo: f64,
    /// The `C` with `ρ = t^{(1+δ)N(x,tR) + C log₂ δ⁻¹}`.
    pub c_hi: f64,
}

impl MonotonicityRecord {
    /// `log_t ρ − (1−δ)N(x,R)`; nonnegative when the constant-free lower
    /// bound holds.
    pub fn lower_margin(&self) -> f64 {
        self.ratio.ln() / self.t.ln() - (1.0 - self.delta) * self.index_inner
    }

    /// `(1+δ)N(x,tR) − log_t ρ`.
    pub fn upper_margin(&self) -> f64 {
        (1.0 + self.delta) * self.index_outer - self.ratio.ln() / self.t.ln()
    }

    /// Both constant-free bounds hold.
    pub fn sharp_holds(&self) -> bool {
        self.lower_margin() >= 0.0 && self.upper_margin() >= 0.0
    }

    /// Both bounds hold with the constant `c`.
    pub fn holds_with(&self, c: f64) -> bool {
        self.c_lo <= c && self.c_hi <= c
    }

    /// Verdict of the large-index form for a given `N₀`; `None` when
    /// `N(x,R) < N₀` and the form makes no claim.
    pub fn sharp_verdict(&self, n0: f64) -> Option<bool> {
        (self.index_inner >= n0).then(|| self.sharp_holds())
    }
}

pub fn check_monotonicity(
    u: &ScalarField,
    x: Point,
    r: f64,
    t: f64,
    delta: f64,
) -> Result<MonotonicityRecord> {
    if !(t > 2.0) {
        return Err(LabError::ParameterRegime(format!("t = {t} must exceed 2")));
    }
    if !(delta > 0.0 && delta <= 0.1) {
        return Err(LabError::ParameterRegime(format!(
            "δ = {delta} must lie in (0, 1/10]"
        )));
    }
    let inner = doubling_index(u, x, r)?;
    let outer = doubling_index(u, x, t * r)?;
    let sup_tr = ball_norm(u, x, t * r, BallNorm::Sup)?;
    let ratio = sup_tr / inner.sup_inner;
    let log_t = ratio.ln() / t.ln();
    let l = (1.0 / delta).log2();
    Ok(MonotonicityRecord {
        center: x,
        r,
        t,
        delta,
        index_inner: inner.index,
        index_outer: outer.index,
        ratio,
        lower_bound: t.powf((1.0 - delta) * inner.index),
        upper_bound: t.powf((1.0 + delta) * outer.index),
        c_lo: ((1.0 - delta) * inner.index - log_t) / l,
        c_hi: (log_t - (1.0 + delta) * outer.index) / l,
    })
}

/// Corpus-level constants for the two forms of the monotonicity bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityFit {
    /// Smallest `C ≥ 0` for which every fitted record satisfies both bounds.
    pub c: f64,
    pub c_lower: f64,
    pub c_upper: f64,
    /// Largest `N(x,R)` among records violating the constant-free form
    /// (zero when none do).
    pub n0: f64,
    pub records: usize,
}

pub fn fit_monotonicity<'a>(
    records: impl IntoIterator<Item = &'a MonotonicityRecord>,
) -> MonotonicityFit {
    let mut fit = MonotonicityFit {
        c: 0.0,
        c_lower: 0.0,
        c_upper: 0.0,
        n0: 0.0,
        records: 0,
    };
    for rec in records {
        fit.records += 1;
        fit.c_lower = fit.c_lower.max(rec.c_lo);
        fit.c_upper = fit.c_upper.max(rec.c_hi);
        if !rec.sharp_holds() {
            fit.n0 = fit.n0.max(rec.index_inner);
        }
    }
    fit.c = fit.c_lower.max(fit.c_upper);
    fit
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// A bound fails even with the fitted constant (plus slack).
    Constant,
    /// The constant-free form fails at an index above the fitted `N₀`
    /// (plus slack).
    LargeIndex,
}

/// Records not covered by `fit`, each constant relaxed by the relative
/// `slack`.
pub fn unexplained_violations<'a>(
    records: impl IntoIterator<Item = &'a MonotonicityRecord>,
    fit: &MonotonicityFit,
    slack: f64,
) -> Vec<(ViolationKind, MonotonicityRecord)> {
    let c = fit.c * (1.0 + slack);
    let n0 = fit.n0 * (1.0 + slack);
    let mut out = Vec::new();
    for rec in records {
        if !rec.holds_with(c) {
            out.push((ViolationKind::Constant, *rec));
        } else if rec.sharp_verdict(n0) == Some(false) && rec.index_inner > n0 {
            out.push((ViolationKind::LargeIndex, *rec));
        }
    }
    out
}

/// CSV with columns `solution_id,x,y,r,t,delta,N,ratio,lower_margin,upper_margin,pass`,
/// where `pass` means both bounds hold with the constant `c`.
pub fn write_monotonicity_csv<W: Write>(
    rows: &[(String, MonotonicityRecord)],
    c: f64,
    w: W,
) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "solution_id",
        "x",
        "y",
        "r",
        "t",
        "delta",
        "N",
        "ratio",
        "lower_margin",
        "upper_margin",
        "pass",
    ])?;
    for (id, rec) in rows {
        out.write_record([
            id.clone(),
            rec.center.x.to_string(),
            rec.center.y.to_string(),
            rec.r.to_string(),
            rec.t.to_string(),
            rec.delta.to_string(),
            rec.index_inner.to_string(),
            rec.ratio.to_string(),
            rec.lower_margin().to_string(),
            rec.upper_margin().to_string(),
            rec.holds_with(c).to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Grid2D;

    #[test]
    fn rejects_bad_parameters() {
        let g = Grid2D::centered(1.0, 65).unwrap();
        let u = ScalarField::constant(g, 1.0).unwrap();
        assert!(check_monotonicity(&u, Point::ORIGIN, 0.05, 2.0, 0.05).is_err());
        assert!(check_monotonicity(&u, Point::ORIGIN, 0.05, 3.0, 0.15).is_err());
    }

    #[test]
    fn constant_field_is_trivial() {
        let g = Grid2D::centered(1.0, 65).unwrap();
        let u = ScalarField::constant(g, 2.0).unwrap();
        let rec = check_monotonicity(&u, Point::ORIGIN, 0.05, 4.0, 0.05).unwrap();
        assert_eq!(rec.ratio, 1.0);
        assert!(rec.sharp_holds());
        assert!(rec.holds_with(0.0));
    }
}
