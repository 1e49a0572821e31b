//! Continuous Savage–Hutter model on a curved chute.
//!
//! All lengths and depths are dimensionless; angles are radians.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Depths at or below this are treated as vacuum when recovering velocity.
pub const DRY_DEPTH: f64 = 1e-10;

/// Material and chute parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Inclination of the upper plane.
    pub zeta0: f64,
    /// Internal friction angle.
    pub phi: f64,
    /// Bed friction angle.
    pub delta: f64,
    /// Aspect ratio of the avalanche.
    pub epsilon: f64,
    /// Curvature-stretch factor multiplying the centripetal term.
    pub chi: f64,
    /// End of the constant-slope section.
    pub x_incl_end: f64,
    /// End of the transition arc; horizontal run-out beyond.
    pub x_trans_end: f64,
    /// Amplitude of the bed sketch, plotting only.
    pub yb0: f64,
}

impl PhysicalParams {
    /// Chute geometry of the reference setup with the given angles in degrees.
    pub fn from_degrees(zeta0: f64, phi: f64, delta: f64) -> Result<Self> {
        let p = PhysicalParams {
            zeta0: zeta0.to_radians(),
            phi: phi.to_radians(),
            delta: delta.to_radians(),
            epsilon: 1.85 / 30.0,
            chi: 1.0,
            x_incl_end: 17.5,
            x_trans_end: 21.5,
            yb0: 10.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let half_pi = std::f64::consts::FRAC_PI_2;
        if !(self.phi >= 0.0 && self.phi < half_pi) {
            return Err(Error::invalid("phi", "must lie in [0, 90) degrees"));
        }
        if !(self.delta >= 0.0) {
            return Err(Error::invalid("delta", "must be non-negative"));
        }
        if self.delta > self.phi {
            return Err(Error::invalid(
                "delta",
                format!(
                    "bed friction {:.3}° exceeds internal friction {:.3}°; earth pressure coefficient would be complex",
                    self.delta.to_degrees(),
                    self.phi.to_degrees()
                ),
            ));
        }
        if !(self.zeta0 >= 0.0 && self.zeta0 < half_pi) {
            return Err(Error::invalid("zeta0", "must lie in [0, 90) degrees"));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::invalid("epsilon", "must be positive"));
        }
        if !(self.chi.is_finite()) {
            return Err(Error::invalid("chi", "must be finite"));
        }
        if !(self.x_incl_end >= 0.0 && self.x_incl_end < self.x_trans_end) {
            return Err(Error::invalid(
                "x_trans_end",
                "transition must satisfy 0 <= x_incl_end < x_trans_end",
            ));
        }
        Ok(())
    }

    pub fn transition_length(&self) -> f64 {
        self.x_trans_end - self.x_incl_end
    }

    /// Inclination of the reference surface at `x`.
    pub fn zeta(&self, x: f64) -> f64 {
        if x <= self.x_incl_end {
            self.zeta0
        } else if x < self.x_trans_end {
            self.zeta0 * (1.0 - (x - self.x_incl_end) / self.transition_length())
        } else {
            0.0
        }
    }

    /// Curvature `-dζ/dx`; nonzero only strictly inside the transition.
    pub fn kappa(&self, x: f64) -> f64 {
        if x > self.x_incl_end && x < self.x_trans_end {
            self.zeta0 / self.transition_length()
        } else {
            0.0
        }
    }

    pub fn earth_pressure(&self, regime: StressRegime) -> f64 {
        earth_pressure_coefficient(regime, self.phi, self.delta).expect("parameters validated on construction")
    }

    /// `β = ε cos ζ(x) K`.
    pub fn beta(&self, x: f64, regime: StressRegime) -> f64 {
        self.epsilon * self.zeta(x).cos() * self.earth_pressure(regime)
    }

    /// Net down-slope acceleration `s(u)` at `x`.
    pub fn driving_acceleration(&self, x: f64, u: f64) -> f64 {
        let zeta = self.zeta(x);
        let normal = zeta.cos() + self.chi * self.kappa(x) * u * u;
        zeta.sin() - sign0(u) * self.delta.tan() * normal.max(0.0)
    }

    /// Source vector `(0, h s(u))`.
    pub fn source(&self, state: ConservedState, x: f64) -> [f64; 2] {
        if state.h <= DRY_DEPTH {
            return [0.0, 0.0];
        }
        [0.0, state.h * self.driving_acceleration(x, state.velocity())]
    }

    /// Coulomb ceiling `tan δ · max(0, cos ζ + χ κ u²)` on the friction deceleration.
    pub fn friction_ceiling(&self, x: f64, u: f64) -> f64 {
        let normal = self.zeta(x).cos() + self.chi * self.kappa(x) * u * u;
        self.delta.tan() * normal.max(0.0)
    }
}

/// Conserved pair `(h, q = h u)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConservedState {
    pub h: f64,
    pub q: f64,
}

impl ConservedState {
    pub const VACUUM: ConservedState = ConservedState { h: 0.0, q: 0.0 };

    pub fn new(h: f64, q: f64) -> Self {
        ConservedState { h, q }
    }

    /// `q / h`, or zero on (numerically) dry states.
    pub fn velocity(self) -> f64 {
        if self.h > DRY_DEPTH {
            self.q / self.h
        } else {
            0.0
        }
    }
}

/// Active (extending) or passive (contracting) Mohr–Coulomb stress state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StressRegime {
    Active,
    Passive,
}

impl StressRegime {
    /// Active iff `du/dx >= 0`.
    pub fn from_velocity_gradient(dudx: f64) -> Self {
        if dudx >= 0.0 {
            StressRegime::Active
        } else {
            StressRegime::Passive
        }
    }
}

/// `sign` with `sign(0) = 0`.
#[inline]
pub fn sign0(u: f64) -> f64 {
    if u > 0.0 {
        1.0
    } else if u < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Mohr–Coulomb earth pressure coefficient.
pub fn earth_pressure_coefficient(regime: StressRegime, phi: f64, delta: f64) -> Result<f64> {
    if delta > phi {
        return Err(Error::invalid(
            "delta",
            "bed friction angle must not exceed internal friction angle",
        ));
    }
    let sec2_phi = 1.0 / phi.cos().powi(2);
    let ratio = phi.cos().powi(2) / delta.cos().powi(2);
    // Rounding can push the radicand a hair below zero when delta == phi.
    let root = (1.0 - ratio).max(0.0).sqrt();
    let k = match regime {
        StressRegime::Active => 2.0 * sec2_phi * (1.0 - root) - 1.0,
        StressRegime::Passive => 2.0 * sec2_phi * (1.0 + root) - 1.0,
    };
    Ok(k)
}

/// Convective flux `(q, q²/h + β h²/2)`; vacuum below [`DRY_DEPTH`].
#[inline]
pub fn flux(state: ConservedState, beta: f64) -> [f64; 2] {
    if state.h <= DRY_DEPTH {
        return [0.0, 0.0];
    }
    let h = state.h;
    [state.q, state.q * state.q / h + 0.5 * beta * h * h]
}

/// Characteristic speeds `u ∓ √(β h)`.
#[inline]
pub fn eigenvalues(state: ConservedState, beta: f64) -> (f64, f64) {
    if state.h <= DRY_DEPTH {
        return (0.0, 0.0);
    }
    let u = state.velocity();
    let c = (beta * state.h).max(0.0).sqrt();
    (u - c, u + c)
}

/// `max(|λ₁|, |λ₂|)`.
#[inline]
pub fn max_wave_speed(state: ConservedState, beta: f64) -> f64 {
    let (l1, l2) = eigenvalues(state, beta);
    l1.abs().max(l2.abs())
}
