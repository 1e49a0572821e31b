//! Spatial DG operator: interface fluxes, stress regimes and the semi-discrete
//! right-hand side for degree ≤ 2.

use crate::basis::{GAUSS_NODES, GAUSS_WEIGHTS, MODES};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{ModalField, Modes};
use crate::mesh::Mesh;
use crate::physics::{self, sign0, ConservedState, PhysicalParams, StressRegime};
use crate::stopping::{CellFlags, Wetness};

/// Trigonometric data of the chute at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Slope {
    cos: f64,
    sin: f64,
    kappa: f64,
}

impl Slope {
    fn at(p: &PhysicalParams, x: f64) -> Self {
        let z = p.zeta(x);
        Slope {
            cos: z.cos(),
            sin: z.sin(),
            kappa: p.kappa(x),
        }
    }
}

/// Mesh, material and the geometry sampled at every point the operator touches.
#[derive(Debug, Clone)]
pub struct Discretization {
    mesh: Mesh,
    physical: PhysicalParams,
    degree: usize,
    k_active: f64,
    k_passive: f64,
    tan_delta: f64,
    gauss: Vec<[Slope; 3]>,
    centers: Vec<Slope>,
    interfaces: Vec<Slope>,
}

impl Discretization {
    pub fn new(mesh: Mesh, physical: PhysicalParams, degree: usize) -> Result<Self> {
        if degree > crate::basis::MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        physical.validate()?;
        let gauss = (0..mesh.n_cells())
            .map(|j| {
                let c = mesh.center(j);
                let w = mesh.width(j);
                GAUSS_NODES.map(|xi| Slope::at(&physical, c + 0.5 * w * xi))
            })
            .collect();
        let centers = mesh.centers().map(|x| Slope::at(&physical, x)).collect();
        let interfaces = (0..=mesh.n_cells())
            .map(|i| Slope::at(&physical, mesh.interface(i)))
            .collect();
        Ok(Discretization {
            mesh,
            physical,
            degree,
            k_active: physical.earth_pressure(StressRegime::Active),
            k_passive: physical.earth_pressure(StressRegime::Passive),
            tan_delta: physical.delta.tan(),
            gauss,
            centers,
            interfaces,
        })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn physical(&self) -> &PhysicalParams {
        &self.physical
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    fn k(&self, regime: StressRegime) -> f64 {
        match regime {
            StressRegime::Active => self.k_active,
            StressRegime::Passive => self.k_passive,
        }
    }

    #[inline]
    fn beta_with(&self, slope: &Slope, regime: StressRegime) -> f64 {
        self.physical.epsilon * slope.cos * self.k(regime)
    }

    /// `β` at the centre of cell `j`.
    pub fn beta_center(&self, j: usize, regime: StressRegime) -> f64 {
        self.beta_with(&self.centers[j], regime)
    }

    /// `β` at interface `x_{i-1/2}`.
    pub fn beta_interface(&self, i: usize, regime: StressRegime) -> f64 {
        self.beta_with(&self.interfaces[i], regime)
    }

    #[inline]
    fn acceleration(&self, slope: &Slope, u: f64) -> f64 {
        let normal = slope.cos + self.physical.chi * slope.kappa * u * u;
        slope.sin - sign0(u) * self.tan_delta * normal.max(0.0)
    }

    /// Gravity component `sin ζ` at the centre of cell `j`.
    pub fn gravity_center(&self, j: usize) -> f64 {
        self.centers[j].sin
    }

    /// Coulomb ceiling at the centre of cell `j` for mean speed `u`.
    pub fn friction_ceiling_center(&self, j: usize, u: f64) -> f64 {
        let s = &self.centers[j];
        self.tan_delta * (s.cos + self.physical.chi * s.kappa * u * u).max(0.0)
    }
}

/// Numerical flux through one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceFlux {
    pub flux: [f64; 2],
    /// Dissipation scale, the largest characteristic speed on either side.
    pub alpha: f64,
    /// Gate on the mass dissipation, `max(M_stop)` of the adjacent cells.
    pub eta: f64,
}

/// Local Lax–Friedrichs flux with the mass dissipation scaled by `eta`.
#[inline]
pub fn llf_flux(
    left: ConservedState,
    right: ConservedState,
    beta_left: f64,
    beta_right: f64,
    eta: f64,
) -> InterfaceFlux {
    let fl = physics::flux(left, beta_left);
    let fr = physics::flux(right, beta_right);
    let alpha = physics::max_wave_speed(left, beta_left).max(physics::max_wave_speed(right, beta_right));
    let flux = [
        0.5 * (fl[0] + fr[0] - eta * alpha * (right.h - left.h)),
        0.5 * (fl[1] + fr[1] - alpha * (right.q - left.q)),
    ];
    InterfaceFlux { flux, alpha, eta }
}

#[inline]
pub(crate) fn clamp_index(j: isize, n: usize) -> usize {
    j.clamp(0, n as isize - 1) as usize
}

/// Gradient of a cell-average quantity using only `Wet` neighbours: central
/// when both are wet, one-sided towards the wet one otherwise, zero when
/// isolated. Out-of-range neighbours are ghost copies of the boundary cell.
pub(crate) fn wet_gradient(values: &[f64], flags: &[CellFlags], j: usize, dx: f64) -> f64 {
    let n = values.len();
    let l = clamp_index(j as isize - 1, n);
    let r = clamp_index(j as isize + 1, n);
    let lw = flags[l].wetness == Wetness::Wet;
    let rw = flags[r].wetness == Wetness::Wet;
    match (lw, rw) {
        (true, true) => (values[r] - values[l]) / (2.0 * dx),
        (true, false) => (values[j] - values[l]) / dx,
        (false, true) => (values[r] - values[j]) / dx,
        (false, false) => 0.0,
    }
}

/// Stress regime of cell `j` from the cell-average velocity gradient.
pub fn stress_regime_of_cell(field: &ModalField, flags: &[CellFlags], mesh: &Mesh, j: usize) -> StressRegime {
    let n = field.n_cells();
    let mut u = [0.0; 3];
    let mut idx = [0usize; 3];
    for (k, off) in (-1isize..=1).enumerate() {
        idx[k] = clamp_index(j as isize + off, n);
        u[k] = field.mean_velocity(idx[k]);
    }
    // reuse the wet-neighbour stencil on a three-point window
    let window_flags = [flags[idx[0]], flags[idx[1]], flags[idx[2]]];
    let dudx = wet_gradient(&u, &window_flags, 1, mesh.dx());
    StressRegime::from_velocity_gradient(dudx)
}

pub fn stress_regimes(field: &ModalField, flags: &[CellFlags], mesh: &Mesh, exec: Execution) -> Vec<StressRegime> {
    exec.map(field.n_cells(), |j| stress_regime_of_cell(field, flags, mesh, j))
}

/// Numerical fluxes at all `N + 1` interfaces. Boundary interfaces see a
/// transmissive ghost: the outer state equals the interior trace.
pub fn interface_fluxes(
    disc: &Discretization,
    field: &ModalField,
    flags: &[CellFlags],
    regimes: &[StressRegime],
    exec: Execution,
) -> Vec<InterfaceFlux> {
    let n = field.n_cells();
    exec.map(n + 1, |i| {
        let jl = clamp_index(i as isize - 1, n);
        let jr = clamp_index(i as isize, n);
        let (left, right) = if i == 0 {
            let s = field.left_trace(0);
            (s, s)
        } else if i == n {
            let s = field.right_trace(n - 1);
            (s, s)
        } else {
            (field.right_trace(jl), field.left_trace(jr))
        };
        let eta = f64::from(flags[jl].m_stop().max(flags[jr].m_stop()));
        llf_flux(
            left,
            right,
            disc.beta_interface(i, regimes[jl]),
            disc.beta_interface(i, regimes[jr]),
            eta,
        )
    })
}

/// Time derivative of every mode, i.e. the semi-discrete operator.
pub fn rhs(disc: &Discretization, field: &ModalField, flags: &[CellFlags], exec: Execution) -> ModalField {
    let regimes = stress_regimes(field, flags, disc.mesh(), exec);
    let fluxes = interface_fluxes(disc, field, flags, &regimes, exec);
    let rates: Vec<(Modes, Modes)> = exec.map(field.n_cells(), |j| {
        cell_rate(disc, field, j, regimes[j], &fluxes[j], &fluxes[j + 1])
    });
    let mut out = ModalField::zeros(field.n_cells(), field.degree()).expect("degree already validated");
    for (j, (rh, rq)) in rates.into_iter().enumerate() {
        out.h[j] = rh;
        out.q[j] = rq;
    }
    out
}

fn cell_rate(
    disc: &Discretization,
    field: &ModalField,
    j: usize,
    regime: StressRegime,
    left: &InterfaceFlux,
    right: &InterfaceFlux,
) -> (Modes, Modes) {
    let width = disc.mesh.width(j);
    let slopes = &disc.gauss[j];

    // Momentum flux moments and source moments by Gauss quadrature.
    let mut f2_1 = 0.0; // Σ ω F₂
    let mut f2_2 = 0.0; // Σ ω ξ F₂
    let mut src = [0.0; MODES];
    for g in 0..3 {
        let xi = GAUSS_NODES[g];
        let w = GAUSS_WEIGHTS[g];
        let state = field.state_at(j, xi);
        let beta = disc.beta_with(&slopes[g], regime);
        let f2 = physics::flux(state, beta)[1];
        f2_1 += w * f2;
        f2_2 += w * xi * f2;
        if state.h > physics::DRY_DEPTH {
            let s = state.h * disc.acceleration(&slopes[g], state.velocity());
            src[0] += w * s;
            src[1] += w * s * xi;
            src[2] += w * s * 0.5 * (3.0 * xi * xi - 1.0);
        }
    }

    let (fl, fr) = (left.flux, right.flux);
    let q = &field.q[j];
    let mut rh = [
        -(fr[0] - fl[0]) / width,
        3.0 * (2.0 * q[0] - (fr[0] + fl[0])) / width,
        5.0 * (2.0 * q[1] - (fr[0] - fl[0])) / width,
    ];
    let mut rq = [
        (-(fr[1] - fl[1]) + width * src[0]) / width,
        3.0 * (2.0 * f2_1 - (fr[1] + fl[1]) + width * src[1]) / width,
        5.0 * (6.0 * f2_2 - (fr[1] - fl[1]) + width * src[2]) / width,
    ];
    for l in disc.degree + 1..MODES {
        rh[l] = 0.0;
        rq[l] = 0.0;
    }
    (rh, rq)
}
