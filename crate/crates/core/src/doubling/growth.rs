use serde::{Deserialize, Serialize};

use super::index::{max_doubling_index_with, DoublingReport, ProbePlan};
use crate::error::{LabError, Result};
use crate::field::{Cube, ScalarField};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub id: String,
    pub m: f64,
    /// `max(M, 1)`.
    pub m_floor: f64,
    pub n_max: f64,
    pub argmax: DoublingReport,
    /// `N_max / max(M,1)^{1/3}`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthTable {
    /// Rows sorted by `M`.
    pub rows: Vec<GrowthRow>,
    /// Smallest `C` with `N_max ≤ C max(M,1)^{1/3}` on every row.
    pub fitted_c: f64,
    /// Whether `N_max` is nondecreasing along increasing `M`.
    pub monotone: bool,
}

pub struct GrowthMember<'a> {
    pub id: &'a str,
    pub u: &'a ScalarField,
    pub m: f64,
    pub cube: Cube,
}

pub fn check_doubling_growth(members: &[GrowthMember<'_>], plan: &ProbePlan) -> Result<GrowthTable> {
    if members.is_empty() {
        return Err(LabError::InvalidParameter("growth check needs a nonempty corpus".into()));
    }
    let mut rows = Vec::with_capacity(members.len());
    for m in members {
        let best = max_doubling_index_with(m.u, &m.cube, plan)?;
        let m_floor = m.m.max(1.0);
        rows.push(GrowthRow {
            id: m.id.to_string(),
            m: m.m,
            m_floor,
            n_max: best.value,
            argmax: best.argmax,
            ratio: best.value / m_floor.cbrt(),
        });
    }
    rows.sort_by(|a, b| a.m.total_cmp(&b.m).then_with(|| a.id.cmp(&b.id)));
    let fitted_c = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let monotone = rows.windows(2).all(|w| w[1].n_max >= w[0].n_max);
    Ok(GrowthTable {
        rows,
        fitted_c,
        monotone,
    })
}
