//! Three-stage SSP Runge–Kutta driver and the CFL watchdog.

use serde::{Deserialize, Serialize};

use crate::dg::{self, Discretization};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::ModalField;
use crate::limiter::{self, LimiterParams};
use crate::physics::{self, StressRegime};
use crate::stopping::{self, CellFlags, StoppingParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeParams {
    pub dt: f64,
    pub t_end: f64,
    /// Defaults to `1 / (2k + 1)`.
    pub cfl_limit: f64,
    /// Shrink steps to keep the CFL number under 90% of the limit.
    pub adaptive: bool,
    /// Abort on CFL violations instead of warning.
    pub strict_cfl: bool,
}

impl TimeParams {
    pub fn new(dt: f64, t_end: f64, degree: usize) -> Self {
        TimeParams {
            dt,
            t_end,
            cfl_limit: 1.0 / (2 * degree + 1) as f64,
            adaptive: false,
            strict_cfl: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::invalid("dt", "must be positive"));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::invalid("t_end", "must be non-negative"));
        }
        if !(self.cfl_limit > 0.0 && self.cfl_limit <= 1.0) {
            return Err(Error::invalid("cfl_limit", "must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// State that an SSP-RK3 step can advance.
pub trait RkState: Clone {
    /// `self + dt * rate`.
    fn add_scaled(&self, dt: f64, rate: &Self) -> Self;
    /// `base + weight * (self - base)`, i.e. `(1 - weight) base + weight self`.
    fn blend(&self, base: &Self, weight: f64) -> Self;
}

impl RkState for f64 {
    fn add_scaled(&self, dt: f64, rate: &Self) -> Self {
        self + dt * rate
    }

    fn blend(&self, base: &Self, weight: f64) -> Self {
        base + weight * (self - base)
    }
}

impl RkState for Vec<f64> {
    fn add_scaled(&self, dt: f64, rate: &Self) -> Self {
        self.iter().zip(rate).map(|(u, r)| u + dt * r).collect()
    }

    fn blend(&self, base: &Self, weight: f64) -> Self {
        self.iter().zip(base).map(|(u, b)| b + weight * (u - b)).collect()
    }
}

impl RkState for ModalField {
    fn add_scaled(&self, dt: f64, rate: &Self) -> Self {
        self.axpy(dt, rate)
    }

    fn blend(&self, base: &Self, weight: f64) -> Self {
        let mut out = base.clone();
        for (o, s) in out.h.iter_mut().zip(&self.h) {
            for l in 0..o.len() {
                o[l] += weight * (s[l] - o[l]);
            }
        }
        for (o, s) in out.q.iter_mut().zip(&self.q) {
            for l in 0..o.len() {
                o[l] += weight * (s[l] - o[l]);
            }
        }
        out
    }
}

/// One step of the optimal three-stage SSP Runge–Kutta scheme
///
/// ```text
/// U¹   = Uⁿ + Δt L(Uⁿ)
/// U²   = ¾ Uⁿ + ¼ (U¹ + Δt L(U¹))
/// Uⁿ⁺¹ = ⅓ Uⁿ + ⅔ (U² + Δt L(U²))
/// ```
///
/// with `post` applied to each stage result. The convex combinations are
/// evaluated as increments on `Uⁿ`, so a state with `L = 0` is reproduced
/// bit for bit.
pub fn ssp_rk3<U, L, P>(un: &U, dt: f64, mut rate: L, mut post: P) -> Result<U>
where
    U: RkState,
    L: FnMut(&U) -> Result<U>,
    P: FnMut(&mut U) -> Result<()>,
{
    let mut u1 = un.add_scaled(dt, &rate(un)?);
    post(&mut u1)?;
    let mut u2 = u1.add_scaled(dt, &rate(&u1)?).blend(un, 0.25);
    post(&mut u2)?;
    let mut u3 = u2.add_scaled(dt, &rate(&u2)?).blend(un, 2.0 / 3.0);
    post(&mut u3)?;
    Ok(u3)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CflReport {
    pub cfl: f64,
    pub limit: f64,
    /// Largest characteristic speed over cell means.
    pub max_speed: f64,
    pub violated: bool,
}

/// CFL number `max_j max|λ̄ʲ| Δt / Δ_j` from cell-average states.
pub fn cfl_check(disc: &Discretization, field: &ModalField, flags: &[CellFlags], dt: f64, limit: f64) -> CflReport {
    let mesh = disc.mesh();
    let mut cfl: f64 = 0.0;
    let mut max_speed: f64 = 0.0;
    for j in 0..field.n_cells() {
        let regime = if flags.is_empty() {
            StressRegime::Active
        } else {
            dg::stress_regime_of_cell(field, flags, mesh, j)
        };
        let s = physics::max_wave_speed(field.average(j), disc.beta_center(j, regime));
        if s.is_nan() {
            max_speed = f64::NAN;
            cfl = f64::NAN;
            break;
        }
        max_speed = max_speed.max(s);
        cfl = cfl.max(s * dt / mesh.width(j));
    }
    CflReport {
        cfl,
        limit,
        max_speed,
        // a NaN speed means the state has blown up
        violated: !(cfl <= limit),
    }
}

/// Numerical settings shared by every stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageSettings {
    pub limiter: LimiterParams,
    pub stopping: StoppingParams,
    pub exec: Execution,
}

/// Solution state advanced in time.
#[derive(Debug, Clone)]
pub struct Solver {
    disc: Discretization,
    settings: StageSettings,
    field: ModalField,
    flags: Vec<CellFlags>,
    time: f64,
    steps: u64,
    clamp_total: f64,
    cfl_max: f64,
}

impl Solver {
    /// Takes a freshly projected field, limits it once and runs the wet/dry
    /// and repose passes so the first stage sees admissible flags.
    pub fn new(disc: Discretization, mut field: ModalField, settings: StageSettings) -> Self {
        let mut clamp_total = 0.0;
        let flags = post_stage(&disc, &settings, &mut field, &[], 0.0, &mut clamp_total);
        Solver {
            disc,
            settings,
            field,
            flags,
            time: 0.0,
            steps: 0,
            clamp_total,
            cfl_max: 0.0,
        }
    }

    pub fn discretization(&self) -> &Discretization {
        &self.disc
    }

    pub fn field(&self) -> &ModalField {
        &self.field
    }

    pub fn flags(&self) -> &[CellFlags] {
        &self.flags
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Mass added by negative-depth clamping so far.
    pub fn clamp_total(&self) -> f64 {
        self.clamp_total
    }

    pub fn cfl_max(&self) -> f64 {
        self.cfl_max
    }

    pub fn cfl(&self, dt: f64, limit: f64) -> CflReport {
        cfl_check(&self.disc, &self.field, &self.flags, dt, limit)
    }

    /// Advances by `dt` and returns the mass added by clamping during the
    /// step. `time` is supplied by the caller so fixed-step runs stay on the
    /// grid `n Δt`.
    pub fn step(&mut self, dt: f64, time: f64) -> f64 {
        let disc = &self.disc;
        let settings = self.settings;
        let flags = std::cell::RefCell::new(std::mem::take(&mut self.flags));
        let mut clamp = 0.0;
        let before = self.clamp_total;
        let next = ssp_rk3(
            &self.field,
            dt,
            |u: &ModalField| Ok(dg::rhs(disc, u, &flags.borrow(), settings.exec)),
            |u: &mut ModalField| {
                let next = post_stage(disc, &settings, u, &flags.borrow(), dt, &mut clamp);
                *flags.borrow_mut() = next;
                Ok(())
            },
        )
        .expect("stage closures are infallible");
        self.field = next;
        self.flags = flags.into_inner();
        self.clamp_total = before + clamp;
        self.time = time;
        self.steps += 1;
        clamp
    }

    /// Records a CFL observation and applies the strict/warn policy.
    pub fn watch_cfl(&mut self, dt: f64, params: &TimeParams) -> Result<CflReport> {
        let report = self.cfl(dt, params.cfl_limit);
        self.cfl_max = self.cfl_max.max(report.cfl);
        if report.violated {
            if params.strict_cfl {
                return Err(Error::CflViolation {
                    cfl: report.cfl,
                    limit: report.limit,
                    t: self.time,
                });
            }
            log::warn!(
                "CFL {:.4} exceeds {:.4} at t = {:.4}",
                report.cfl,
                report.limit,
                self.time
            );
        }
        Ok(report)
    }
}

/// Limiter, clamp, wet/dry classification, semi-wet fix, repose test.
fn post_stage(
    disc: &Discretization,
    settings: &StageSettings,
    field: &mut ModalField,
    previous: &[CellFlags],
    dt: f64,
    clamp_total: &mut f64,
) -> Vec<CellFlags> {
    limiter::limit_field(field, &settings.limiter, settings.exec);
    *clamp_total += stopping::clamp_negative_depth(field, disc.mesh()).mass_added;
    let mut flags = stopping::classify(field, &settings.stopping);
    stopping::fix_semiwet(field, &flags, &settings.stopping);
    stopping::repose_test(field, &mut flags, previous, disc, &settings.stopping, dt, settings.exec);
    flags
}
