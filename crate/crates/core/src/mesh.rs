use crate::error::{Error, Result};

/// Uniform partition of `[0, length]` into `n_cells` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh {
    length: f64,
    n_cells: usize,
    dx: f64,
}

impl Mesh {
    pub fn uniform(length: f64, n_cells: usize) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::invalid("domain_length", "must be positive"));
        }
        if n_cells < 3 {
            return Err(Error::invalid("n_cells", "need at least three cells"));
        }
        Ok(Mesh {
            length,
            n_cells,
            dx: length / n_cells as f64,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Cell width; all cells share it.
    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn width(&self, _j: usize) -> f64 {
        self.dx
    }

    /// Interface `x_{j-1/2}` for `j = 0..=n_cells`.
    pub fn interface(&self, j: usize) -> f64 {
        if j == self.n_cells {
            self.length
        } else {
            j as f64 * self.dx
        }
    }

    pub fn center(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * self.dx
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_cells).map(|j| self.center(j))
    }
}
