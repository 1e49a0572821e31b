//! Mapping from chute coordinates `(x, h)` to horizontal/vertical plotting
//! coordinates, for the incline–arc–run-out chute.

use crate::physics::PhysicalParams;

/// Bed point and depth vector in the horizontal/vertical frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalPoint {
    pub x_b: f64,
    pub y_b: f64,
    pub h_xb: f64,
    pub h_yb: f64,
}

impl PhysicalPoint {
    /// Free-surface point `(x_b + h_xb, y_b + h_yb)`.
    pub fn surface(&self) -> (f64, f64) {
        (self.x_b + self.h_xb, self.y_b + self.h_yb)
    }
}

/// Chute layout derived from the physical parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChuteGeometry {
    zeta0: f64,
    incl_end: f64,
    trans_end: f64,
    /// Radius of the transition arc.
    radius: f64,
    x1: f64,
    y1: f64,
    x2: f64,
}

impl ChuteGeometry {
    pub fn new(p: &PhysicalParams) -> Self {
        let zeta0 = p.zeta0;
        let radius = if zeta0 > 0.0 {
            p.transition_length() / zeta0
        } else {
            f64::INFINITY
        };
        let x1 = p.x_incl_end * zeta0.cos();
        // r (1 - cos ζ₀) and r sin ζ₀ tend to 0 and the arc length as ζ₀ → 0
        let (y1, arc_dx) = if zeta0 > 0.0 {
            (radius * (1.0 - zeta0.cos()), radius * zeta0.sin())
        } else {
            (0.0, p.transition_length())
        };
        ChuteGeometry {
            zeta0,
            incl_end: p.x_incl_end,
            trans_end: p.x_trans_end,
            radius,
            x1,
            y1,
            x2: x1 + arc_dx,
        }
    }

    pub fn to_physical(&self, x: f64, h: f64) -> PhysicalPoint {
        if x >= self.trans_end {
            PhysicalPoint {
                x_b: self.x2 + (x - self.trans_end),
                y_b: 0.0,
                h_xb: 0.0,
                h_yb: h,
            }
        } else if x >= self.incl_end {
            if self.zeta0 == 0.0 {
                return PhysicalPoint {
                    x_b: self.x2 - (self.trans_end - x),
                    y_b: 0.0,
                    h_xb: 0.0,
                    h_yb: h,
                };
            }
            let zeta = (self.trans_end - x) / self.radius;
            PhysicalPoint {
                x_b: self.x2 - self.radius * zeta.sin(),
                y_b: self.radius * (1.0 - zeta.cos()),
                h_xb: h * zeta.sin(),
                h_yb: h * zeta.cos(),
            }
        } else {
            let (s, c) = self.zeta0.sin_cos();
            PhysicalPoint {
                x_b: x * c,
                y_b: self.y1 + (self.incl_end - x) * s,
                h_xb: h * s,
                h_yb: h * c,
            }
        }
    }
}

/// Convenience wrapper around [`ChuteGeometry::to_physical`].
pub fn to_physical(x: f64, h: f64, p: &PhysicalParams) -> PhysicalPoint {
    ChuteGeometry::new(p).to_physical(x, h)
}

/// Sketch elevation `y_b⁰ (1 - cos(π/4)) sin ζ(x)`; plotting only.
pub fn bed_sketch(x: f64, p: &PhysicalParams) -> f64 {
    p.yb0 * (1.0 - std::f64::consts::FRAC_PI_4.cos()) * p.zeta(x).sin()
}
