//! Generalized minmod slope limiter, applied component-wise to `h` and `q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{ModalField, Modes};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimiterParams {
    /// Scale on the neighbour jumps; 1/2 is the strict setting.
    pub gamma: f64,
}

impl Default for LimiterParams {
    fn default() -> Self {
        LimiterParams { gamma: 0.5 }
    }
}

impl LimiterParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.5..=1.0).contains(&self.gamma) {
            return Err(Error::invalid("gamma", "must lie in [0.5, 1]"));
        }
        Ok(())
    }
}

/// `σ min|a_i|` when all three share the sign `σ`, else zero.
#[inline]
pub fn minmod(a1: f64, a2: f64, a3: f64) -> f64 {
    if a1 > 0.0 && a2 > 0.0 && a3 > 0.0 {
        a1.min(a2).min(a3)
    } else if a1 < 0.0 && a2 < 0.0 && a3 < 0.0 {
        a1.max(a2).max(a3)
    } else {
        0.0
    }
}

/// Limits one variable of one cell given the neighbouring means.
///
/// The deviations of the linear part at both interfaces from the mean are
/// both equal to mode 1, so the two limited interface values agree with the
/// unlimited ones exactly when `minmod(U₁, γΔ₋, γΔ₊) == U₁`. Otherwise the
/// slope is replaced and the quadratic mode dropped.
#[inline]
pub fn limit_modes(modes: &Modes, left_mean: f64, right_mean: f64, gamma: f64) -> Modes {
    let mean = modes[0];
    let slope = minmod(modes[1], gamma * (mean - left_mean), gamma * (right_mean - mean));
    if slope == modes[1] {
        *modes
    } else {
        [mean, slope, 0.0]
    }
}

/// Limits cell `j` in place using the current neighbour means; ghost cells
/// at the ends copy the boundary cell.
pub fn limit_cell(field: &mut ModalField, j: usize, params: &LimiterParams) {
    if field.degree() == 0 {
        return;
    }
    let n = field.n_cells();
    let l = j.saturating_sub(1);
    let r = (j + 1).min(n - 1);
    let (hl, hr) = (field.h[l][0], field.h[r][0]);
    let (ql, qr) = (field.q[l][0], field.q[r][0]);
    field.h[j] = limit_modes(&field.h[j], hl, hr, params.gamma);
    field.q[j] = limit_modes(&field.q[j], ql, qr, params.gamma);
}

/// Limits every cell. Means are never modified, so a single snapshot of
/// them serves all cells.
pub fn limit_field(field: &mut ModalField, params: &LimiterParams, exec: Execution) {
    if field.degree() == 0 {
        return;
    }
    let n = field.n_cells();
    let gamma = params.gamma;
    let hm: Vec<f64> = field.h.iter().map(|m| m[0]).collect();
    let qm: Vec<f64> = field.q.iter().map(|m| m[0]).collect();
    let neighbours = |j: usize| (j.saturating_sub(1), (j + 1).min(n - 1));
    exec.for_each_mut(&mut field.h, |j, m| {
        let (l, r) = neighbours(j);
        *m = limit_modes(m, hm[l], hm[r], gamma);
    });
    exec.for_each_mut(&mut field.q, |j, m| {
        let (l, r) = neighbours(j);
        *m = limit_modes(m, qm[l], qm[r], gamma);
    });
}
