//! Modal DG representation of the conserved pair.

use crate::basis::{self, GAUSS_NODES, GAUSS_WEIGHTS, MODES};
use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::physics::ConservedState;

pub type Modes = [f64; MODES];

/// Per-cell modal coefficients of `h` and `q`.
///
/// Modes above `degree` are kept at zero. Mode 0 is the cell average.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalField {
    degree: usize,
    pub h: Vec<Modes>,
    pub q: Vec<Modes>,
}

impl ModalField {
    pub fn zeros(n_cells: usize, degree: usize) -> Result<Self> {
        if degree > basis::MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        Ok(ModalField {
            degree,
            h: vec![[0.0; MODES]; n_cells],
            q: vec![[0.0; MODES]; n_cells],
        })
    }

    /// L² projection of `(h₀, q₀)` onto the piecewise polynomials, using the
    /// three-point Gauss rule on each cell.
    pub fn project<H, Q>(mesh: &Mesh, degree: usize, h0: H, q0: Q) -> Result<Self>
    where
        H: Fn(f64) -> f64,
        Q: Fn(f64) -> f64,
    {
        let mut field = Self::zeros(mesh.n_cells(), degree)?;
        for j in 0..mesh.n_cells() {
            let pts = basis::gauss_points(mesh.center(j), mesh.width(j));
            let hv = pts.map(&h0);
            let qv = pts.map(&q0);
            for l in 0..=degree {
                let scale = (2 * l + 1) as f64;
                let mut sh = 0.0;
                let mut sq = 0.0;
                for g in 0..3 {
                    let phi = basis::legendre(l, GAUSS_NODES[g]);
                    sh += GAUSS_WEIGHTS[g] * hv[g] * phi;
                    sq += GAUSS_WEIGHTS[g] * qv[g] * phi;
                }
                field.h[j][l] = scale * sh;
                field.q[j][l] = scale * sq;
            }
        }
        Ok(field)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n_cells(&self) -> usize {
        self.h.len()
    }

    /// Cell-average state.
    #[inline]
    pub fn average(&self, j: usize) -> ConservedState {
        ConservedState::new(self.h[j][0], self.q[j][0])
    }

    /// Cell-average velocity, zero on dry cells.
    #[inline]
    pub fn mean_velocity(&self, j: usize) -> f64 {
        self.average(j).velocity()
    }

    /// State at local coordinate `xi ∈ [-1, 1]` of cell `j`.
    #[inline]
    pub fn state_at(&self, j: usize, xi: f64) -> ConservedState {
        ConservedState::new(basis::eval_modes(&self.h[j], xi), basis::eval_modes(&self.q[j], xi))
    }

    #[inline]
    pub fn right_trace(&self, j: usize) -> ConservedState {
        ConservedState::new(basis::right_trace(&self.h[j]), basis::right_trace(&self.q[j]))
    }

    #[inline]
    pub fn left_trace(&self, j: usize) -> ConservedState {
        ConservedState::new(basis::left_trace(&self.h[j]), basis::left_trace(&self.q[j]))
    }

    /// `Σ_j Δ_j h̄_j`.
    pub fn total_mass(&self, mesh: &Mesh) -> f64 {
        self.h.iter().enumerate().map(|(j, m)| mesh.width(j) * m[0]).sum()
    }

    pub fn max_depth(&self) -> f64 {
        self.h.iter().map(|m| m[0]).fold(0.0, f64::max)
    }

    /// `self + scale * rate`, mode by mode.
    pub fn axpy(&self, scale: f64, rate: &ModalField) -> ModalField {
        let mut out = self.clone();
        for (o, r) in out.h.iter_mut().zip(&rate.h) {
            for l in 0..MODES {
                o[l] += scale * r[l];
            }
        }
        for (o, r) in out.q.iter_mut().zip(&rate.q) {
            for l in 0..MODES {
                o[l] += scale * r[l];
            }
        }
        out
    }
}

/// Initial pile released from rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PileShape {
    /// `h₀ = √(max(0, r₀² - (x - x₀)²))`.
    CircularCap,
    /// `h₀ = r₀ max(0, 1 - ((x - x₀)/r₀)²)`.
    Parabolic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialPile {
    pub shape: PileShape,
    pub radius: f64,
    pub center: f64,
}

impl InitialPile {
    pub fn depth(&self, x: f64) -> f64 {
        let d = x - self.center;
        match self.shape {
            PileShape::CircularCap => (self.radius * self.radius - d * d).max(0.0).sqrt(),
            PileShape::Parabolic => self.radius * (1.0 - (d / self.radius).powi(2)).max(0.0),
        }
    }

    /// Exact area under the profile.
    pub fn area(&self) -> f64 {
        match self.shape {
            PileShape::CircularCap => 0.5 * std::f64::consts::PI * self.radius * self.radius,
            PileShape::Parabolic => 4.0 / 3.0 * self.radius * self.radius,
        }
    }

    pub fn project(&self, mesh: &Mesh, degree: usize) -> Result<ModalField> {
        ModalField::project(mesh, degree, |x| self.depth(x), |_| 0.0)
    }
}
