//! Scaled Legendre basis on a cell and the three-point Gauss rule.
//!
//! On cell `I_j` with centre `x_j` and width `Δ_j` the local coordinate is
//! `ξ = 2 (x - x_j) / Δ_j ∈ [-1, 1]` and the basis is `P_l(ξ)`:
//! `φ₀ = 1`, `φ₁ = ξ`, `φ₂ = (3ξ² - 1) / 2`.

use crate::error::{Error, Result};

/// Highest polynomial degree the solver carries.
pub const MAX_DEGREE: usize = 2;
/// Modes stored per cell and variable.
pub const MODES: usize = MAX_DEGREE + 1;

/// Gauss–Legendre nodes on `[-1, 1]`.
pub const GAUSS_NODES: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
/// Weights normalised to sum to one, so `∫_{I_j} f ≈ Δ_j Σ ω_g f(x_g)`.
pub const GAUSS_WEIGHTS: [f64; 3] = [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0];

/// `φ_l` at local coordinate `xi`. Modes above 2 evaluate to zero.
#[inline]
pub fn legendre(l: usize, xi: f64) -> f64 {
    match l {
        0 => 1.0,
        1 => xi,
        2 => 0.5 * (3.0 * xi * xi - 1.0),
        _ => 0.0,
    }
}

/// `dφ_l/dx` at local coordinate `xi` on a cell of width `width`.
#[inline]
pub fn legendre_dx(l: usize, xi: f64, width: f64) -> f64 {
    match l {
        1 => 2.0 / width,
        2 => 6.0 * xi / width,
        _ => 0.0,
    }
}

/// Basis value `φ_l(x)` on the cell `[center - width/2, center + width/2]`.
pub fn basis_eval(l: usize, x: f64, center: f64, width: f64) -> Result<f64> {
    if l > MAX_DEGREE {
        return Err(Error::ModeOutOfRange {
            mode: l,
            degree: MAX_DEGREE,
        });
    }
    Ok(legendre(l, 2.0 * (x - center) / width))
}

/// Evaluates `Σ_l modes[l] φ_l(ξ)`.
#[inline]
pub fn eval_modes(modes: &[f64; MODES], xi: f64) -> f64 {
    modes[0] + modes[1] * xi + modes[2] * 0.5 * (3.0 * xi * xi - 1.0)
}

/// Value at the right end of the cell (`φ_l = 1`).
#[inline]
pub fn right_trace(modes: &[f64; MODES]) -> f64 {
    modes[0] + modes[1] + modes[2]
}

/// Value at the left end of the cell (`φ_l = (-1)^l`).
#[inline]
pub fn left_trace(modes: &[f64; MODES]) -> f64 {
    modes[0] - modes[1] + modes[2]
}

/// Physical Gauss points of the cell.
pub fn gauss_points(center: f64, width: f64) -> [f64; 3] {
    GAUSS_NODES.map(|xi| center + 0.5 * width * xi)
}

/// Three-point Gauss approximation of `∫ f` over the cell; exact to degree 5.
pub fn gauss3<F: Fn(f64) -> f64>(f: F, center: f64, width: f64) -> f64 {
    let pts = gauss_points(center, width);
    width * GAUSS_WEIGHTS.iter().zip(pts).map(|(w, x)| w * f(x)).sum::<f64>()
}

/// Diagonal of the local mass matrix, `Δ_j / (2l + 1)` for `l = 0..=degree`.
pub fn mass_matrix(degree: usize, width: f64) -> Result<Vec<f64>> {
    if degree > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(degree));
    }
    Ok((0..=degree).map(|l| width / (2 * l + 1) as f64).collect())
}
