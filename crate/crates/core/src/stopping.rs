//! Wet/dry bookkeeping and the Coulomb reposing state.
//!
//! Cells are classified from their mean depth. Dry cells carry no momentum,
//! semi-wet cells borrow a velocity from their deeper neighbour, and cells
//! whose friction can hold them are tagged resting (`M_stop = 0`), which both
//! zeroes their momentum and closes the mass dissipation at their interfaces.

use serde::{Deserialize, Serialize};

use crate::dg::{self, Discretization};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::ModalField;
use crate::mesh::Mesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Wetness {
    Dry,
    SemiWet,
    Wet,
}

impl Wetness {
    /// Single-letter code used in snapshot files.
    pub fn code(self) -> char {
        match self {
            Wetness::Dry => 'D',
            Wetness::SemiWet => 'S',
            Wetness::Wet => 'W',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellFlags {
    pub wetness: Wetness,
    pub flowing: bool,
}

impl CellFlags {
    pub fn wet_flowing() -> Self {
        CellFlags {
            wetness: Wetness::Wet,
            flowing: true,
        }
    }

    /// `M_stop`: 0 resting, 1 flowing.
    #[inline]
    pub fn m_stop(&self) -> u8 {
        u8::from(self.flowing)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StoppingParams {
    /// Mean depth from which a cell counts as wet.
    pub h_semi: f64,
    /// Mean depth at or below which a cell is dry.
    pub h_eps: f64,
    /// Speed below which a moving cell may come to rest.
    pub u_stop: f64,
    /// Let a resting cell stay at rest while friction can cancel the speed it
    /// picks up within one step. Without it only `u_stop` applies, and
    /// standing piles with a sloping surface slowly creep.
    pub hold_resting: bool,
}

impl Default for StoppingParams {
    fn default() -> Self {
        StoppingParams {
            h_semi: 1e-6,
            h_eps: 1e-10,
            u_stop: 1e-6,
            hold_resting: true,
        }
    }
}

impl StoppingParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.h_eps > 0.0 && self.h_eps < self.h_semi) {
            return Err(Error::invalid("h_eps", "need 0 < h_eps < h_semi"));
        }
        if !(self.u_stop >= 0.0) {
            return Err(Error::invalid("u_stop", "must be non-negative"));
        }
        Ok(())
    }

    pub fn wetness(&self, mean_depth: f64) -> Wetness {
        if mean_depth <= self.h_eps {
            Wetness::Dry
        } else if mean_depth < self.h_semi {
            Wetness::SemiWet
        } else {
            Wetness::Wet
        }
    }
}

/// Assigns wetness from mean depths and zeroes the momentum of dry cells.
/// Every cell starts out flowing; [`repose_test`] decides which rest.
pub fn classify(field: &mut ModalField, params: &StoppingParams) -> Vec<CellFlags> {
    field
        .h
        .iter()
        .zip(field.q.iter_mut())
        .map(|(h, q)| {
            let wetness = params.wetness(h[0]);
            if wetness == Wetness::Dry {
                *q = [0.0; 3];
            }
            CellFlags { wetness, flowing: true }
        })
        .collect()
}

/// Extrapolates a velocity into semi-wet cells from the deeper neighbour.
pub fn fix_semiwet(field: &mut ModalField, flags: &[CellFlags], params: &StoppingParams) {
    let n = field.n_cells();
    let depth: Vec<f64> = field.h.iter().map(|m| m[0]).collect();
    let speed: Vec<f64> = (0..n).map(|j| field.mean_velocity(j)).collect();
    for j in 0..n {
        if flags[j].wetness != Wetness::SemiWet {
            continue;
        }
        let l = dg::clamp_index(j as isize - 1, n);
        let r = dg::clamp_index(j as isize + 1, n);
        let u = if depth[l] < params.h_semi && depth[r] < params.h_semi {
            0.0
        } else if depth[l] >= depth[r] {
            speed[l]
        } else {
            speed[r]
        };
        field.q[j] = [depth[j] * u, 0.0, 0.0];
    }
}

/// Coulomb reposing test on cell averages.
///
/// A non-dry cell rests when the net tangential acceleration it feels
/// (gravity plus the depth-gradient pressure term) stays under the Coulomb
/// ceiling and its mean speed passes a gate. A moving cell must have slowed to
/// `|ū| ≤ u_stop`. A cell listed in `was_resting` (the flags the stage started
/// from; empty means no history) keeps resting while the speed it picked up
/// can be cancelled by friction within `dt`, `|ū| ≤ dt · ceiling`, unless
/// [`StoppingParams::hold_resting`] is off. Dry cells
/// always rest. Resting cells lose all momentum modes.
pub fn repose_test(
    field: &mut ModalField,
    flags: &mut [CellFlags],
    was_resting: &[CellFlags],
    disc: &Discretization,
    params: &StoppingParams,
    dt: f64,
    exec: Execution,
) {
    let n = field.n_cells();
    let mesh: &Mesh = disc.mesh();
    let depth: Vec<f64> = field.h.iter().map(|m| m[0]).collect();
    let resting: Vec<bool> = {
        let field = &*field;
        let flags = &*flags;
        exec.map(n, |j| {
            if flags[j].wetness == Wetness::Dry {
                return true;
            }
            let u = field.mean_velocity(j);
            let regime = dg::stress_regime_of_cell(field, flags, mesh, j);
            let dhdx = dg::wet_gradient(&depth, flags, j, mesh.dx());
            let driving = disc.gravity_center(j) - disc.beta_center(j, regime) * dhdx;
            let ceiling = disc.friction_ceiling_center(j, u);
            let held = params.hold_resting && was_resting.get(j).is_some_and(|f| f.m_stop() == 0);
            let gate = if held {
                params.u_stop.max(dt * ceiling)
            } else {
                params.u_stop
            };
            u.abs() <= gate && driving.abs() <= ceiling
        })
    };
    for (j, rest) in resting.into_iter().enumerate() {
        flags[j].flowing = !rest;
        if rest {
            field.q[j] = [0.0; 3];
        }
    }
}

/// Mass injected by clamping negative cell averages.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ClampReport {
    pub mass_added: f64,
    pub cells: usize,
    /// Most negative mean depth encountered.
    pub worst: f64,
}

/// Depth below which a negative mean is reported as a warning.
const PATHOLOGICAL_DEPTH: f64 = -1e-8;

/// Resets cells with negative mean depth to vacuum.
pub fn clamp_negative_depth(field: &mut ModalField, mesh: &Mesh) -> ClampReport {
    let mut report = ClampReport::default();
    for (j, (h, q)) in field.h.iter_mut().zip(field.q.iter_mut()).enumerate() {
        if h[0] < 0.0 {
            report.mass_added -= mesh.width(j) * h[0];
            report.cells += 1;
            report.worst = report.worst.min(h[0]);
            *h = [0.0; 3];
            *q = [0.0; 3];
        }
    }
    if report.worst < PATHOLOGICAL_DEPTH {
        log::warn!(
            "clamped {} cell(s) with negative depth (worst {:e}), mass added {:e}",
            report.cells,
            report.worst,
            report.mass_added
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::PhysicalParams;

    fn flat_disc(n: usize, dx: f64, delta_deg: f64) -> Discretization {
        let p = PhysicalParams {
            x_incl_end: 0.0,
            x_trans_end: 1e-9,
            ..PhysicalParams::from_degrees(0.0, 30.0, delta_deg).unwrap()
        };
        Discretization::new(Mesh::uniform(dx * n as f64, n).unwrap(), p, 2).unwrap()
    }

    fn field_with(depths: &[f64], speeds: &[f64]) -> ModalField {
        let mut f = ModalField::zeros(depths.len(), 2).unwrap();
        for (j, (&h, &u)) in depths.iter().zip(speeds).enumerate() {
            f.h[j][0] = h;
            f.q[j][0] = h * u;
        }
        f
    }

    #[test]
    fn classification_thresholds() {
        let p = StoppingParams::default();
        let mut f = field_with(&[0.5, 1e-8, 0.0], &[1.0, 1.0, 0.0]);
        f.q[2] = [1e-3, 2e-3, 0.0];
        let flags = classify(&mut f, &p);
        let w: Vec<_> = flags.iter().map(|c| c.wetness).collect();
        assert_eq!(w, vec![Wetness::Wet, Wetness::SemiWet, Wetness::Dry]);
        assert_eq!(f.q[2], [0.0; 3]);
    }

    #[test]
    fn semiwet_velocity_extrapolation() {
        let p = StoppingParams::default();
        // isolated between dry cells
        let mut f = field_with(&[0.0, 1e-8, 0.0], &[0.0, 3.0, 0.0]);
        f.q[1][1] = 0.4;
        let flags = classify(&mut f, &p);
        fix_semiwet(&mut f, &flags, &p);
        assert_eq!(f.q[1], [0.0; 3]);

        // wet left neighbour
        let mut f = field_with(&[0.5, 1e-8, 0.0], &[0.7, 3.0, 0.0]);
        let flags = classify(&mut f, &p);
        fix_semiwet(&mut f, &flags, &p);
        assert!((f.q[1][0] - 1e-8 * 0.7).abs() < 1e-20);

        // deeper right neighbour
        let mut f = field_with(&[1e-7, 1e-8, 0.3], &[0.7, 3.0, -0.2]);
        let flags = classify(&mut f, &p);
        let before = f.h.clone();
        fix_semiwet(&mut f, &flags, &p);
        assert!((f.q[1][0] + 1e-8 * 0.2).abs() < 1e-20);
        assert_eq!(f.h, before);
    }

    #[test]
    fn flat_uniform_rest() {
        let disc = flat_disc(6, 0.1, 30.0);
        let p = StoppingParams::default();
        let mut f = field_with(&[0.4; 6], &[0.0; 6]);
        let mut flags = classify(&mut f, &p);
        repose_test(&mut f, &mut flags, &[], &disc, &p, 1e-3, Execution::Sequential);
        assert!(flags.iter().all(|c| c.m_stop() == 0));
    }

    #[test]
    fn steep_surface_keeps_flowing() {
        // β = ε·5/3 on a flat bed; central slope -7.5 gives β|∂h/∂x| ≈ 0.77 > tan 30°
        let disc = flat_disc(3, 0.1, 30.0);
        let p = StoppingParams::default();
        let mut f = field_with(&[2.0, 1.5, 0.5], &[0.0; 3]);
        let mut flags = classify(&mut f, &p);
        repose_test(&mut f, &mut flags, &[], &disc, &p, 1e-3, Execution::Sequential);
        let beta = disc.beta_center(1, crate::physics::StressRegime::Active);
        let driving = beta * 1.5 / 0.2;
        assert!(driving > 30f64.to_radians().tan());
        assert!(flags[1].flowing);
    }

    #[test]
    fn fast_cell_keeps_flowing() {
        let disc = flat_disc(3, 0.1, 30.0);
        let p = StoppingParams::default();
        let mut f = field_with(&[0.4; 3], &[0.0, 0.5, 0.0]);
        let mut flags = classify(&mut f, &p);
        repose_test(&mut f, &mut flags, &[], &disc, &p, 1e-3, Execution::Sequential);
        assert!(flags[1].flowing);
        assert!(f.q[1][0] > 0.0);
    }

    #[test]
    fn clamp_reports_mass() {
        let mesh = Mesh::uniform(1.0, 4).unwrap();
        let mut f = field_with(&[0.1, -1e-14, 0.2, -0.1], &[0.0; 4]);
        f.h[1][1] = 0.3;
        let r = clamp_negative_depth(&mut f, &mesh);
        assert_eq!(r.cells, 2);
        assert!((r.mass_added - 0.25 * (1e-14 + 0.1)).abs() < 1e-16);
        assert_eq!(f.h[1], [0.0; 3]);

        let mut g = field_with(&[0.1, 0.2], &[0.0; 2]);
        let before = g.clone();
        let r = clamp_negative_depth(&mut g, &Mesh::uniform(1.0, 3).unwrap());
        assert_eq!(r.mass_added, 0.0);
        assert_eq!(g, before);
    }

    #[test]
    fn pipeline_is_idempotent_and_mass_neutral() {
        let disc = flat_disc(8, 0.1, 25.0);
        let p = StoppingParams::default();
        let mut f = field_with(
            &[0.0, 5e-7, 0.3, 0.35, 0.32, 2e-8, 0.0, 0.0],
            &[0.0, 0.2, 0.1, 0.0, -0.1, 0.4, 0.0, 0.0],
        );
        let mass = f.total_mass(disc.mesh());
        let run = |f: &mut ModalField| {
            let mut flags = classify(f, &p);
            fix_semiwet(f, &flags, &p);
            repose_test(f, &mut flags, &[], &disc, &p, 1e-3, Execution::Sequential);
            flags
        };
        let flags1 = run(&mut f);
        let once = f.clone();
        let flags2 = run(&mut f);
        assert_eq!(once, f);
        assert_eq!(flags1, flags2);
        assert_eq!(f.total_mass(disc.mesh()), mass);
    }
}
