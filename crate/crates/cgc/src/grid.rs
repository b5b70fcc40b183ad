//! Uniform grids and fields sampled on them.

use crate::error::{Error, Result};
use crate::linalg::{CMat3, CVec3, C64};
use crate::stencil::Stencil;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul};

/// Node `(i, j)` sits at `((i − i0)·hx, (j − j0)·hy)`. The basepoint is node `(i0, j0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub hx: f64,
    pub hy: f64,
    pub i0: usize,
    pub j0: usize,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, hx: f64, hy: f64, i0: usize, j0: usize) -> Result<Self> {
        let g = Grid { nx, ny, hx, hy, i0, j0 };
        g.validate()?;
        Ok(g)
    }

    /// Square grid with the basepoint at the center node.
    pub fn centered(n: usize, h: f64) -> Result<Self> {
        Self::new(n, n, h, h, n / 2, n / 2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::Domain("grid needs at least 2×2 nodes".into()));
        }
        if !(self.hx > 0.0 && self.hy > 0.0 && self.hx.is_finite() && self.hy.is_finite()) {
            return Err(Error::Domain("grid spacings must be positive".into()));
        }
        if self.i0 >= self.nx || self.j0 >= self.ny {
            return Err(Error::Domain("basepoint outside the grid".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major: rows are lines of constant `j`.
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn x(&self, i: usize) -> f64 {
        (i as f64 - self.i0 as f64) * self.hx
    }

    pub fn y(&self, j: usize) -> f64 {
        (j as f64 - self.j0 as f64) * self.hy
    }

    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| (i, j)))
    }

    /// Nodes at distance at least `m` from every edge of the grid.
    pub fn interior(&self, m: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (nx, ny) = (self.nx, self.ny);
        (m..ny.saturating_sub(m)).flat_map(move |j| (m..nx.saturating_sub(m)).map(move |i| (i, j)))
    }

    pub fn same_shape(&self, o: &Grid) -> bool {
        self.nx == o.nx && self.ny == o.ny
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    pub grid: Grid,
    pub data: Vec<T>,
}

impl<T: Copy> Field<T> {
    pub fn from_fn(grid: Grid, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for (i, j) in grid.nodes() {
            data.push(f(i, j));
        }
        Field { grid, data }
    }

    pub fn filled(grid: Grid, v: T) -> Self {
        Field { grid, data: vec![v; grid.len()] }
    }

    pub fn at(&self, i: usize, j: usize) -> T {
        self.data[self.grid.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let k = self.grid.idx(i, j);
        self.data[k] = v;
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> Field<U> {
        Field { grid: self.grid, data: self.data.iter().map(|&v| f(v)).collect() }
    }
}

impl<T> Field<T>
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    /// Tensor-product Lagrange interpolation (6 points per axis) at physical `(x, y)`.
    pub fn interpolate(&self, x: f64, y: f64) -> Result<T> {
        let g = self.grid;
        let s = x / g.hx + g.i0 as f64;
        let t = y / g.hy + g.j0 as f64;
        let slack = 1e-9;
        if !(s >= -slack && t >= -slack && s <= (g.nx - 1) as f64 + slack && t <= (g.ny - 1) as f64 + slack) {
            return Err(Error::Domain(format!("sample point ({x}, {y}) outside the grid")));
        }
        let s = s.clamp(0.0, (g.nx - 1) as f64);
        let t = t.clamp(0.0, (g.ny - 1) as f64);
        let (si, ti) = (s.round(), t.round());
        if (s - si).abs() < 1e-12 && (t - ti).abs() < 1e-12 {
            return Ok(self.at(si as usize, ti as usize));
        }
        let sx = Stencil::at(s, g.nx, 6, 0);
        let sy = Stencil::at(t, g.ny, 6, 0);
        Ok(sy.apply(|j| sx.apply(|i| self.at(i, j))))
    }
}

/// Seed ω, Bäcklund angle θ, and other scalar data.
pub type ScalarField = Field<C64>;

impl ScalarField {
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// Points of a (possibly complex) surface.
pub type SurfaceField = Field<CVec3>;

impl SurfaceField {
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|v| v.max_imag()).fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.max_imag() < tol
    }
}

/// Extended frame `Φ_λ` on a grid, for one spectral value.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameField {
    pub lambda: C64,
    pub field: Field<CMat3>,
}

impl FrameField {
    pub fn grid(&self) -> Grid {
        self.field.grid
    }

    pub fn at(&self, i: usize, j: usize) -> CMat3 {
        self.field.at(i, j)
    }

    pub fn max_orthogonality_defect(&self) -> f64 {
        self.field.data.iter().map(|m| m.orthogonality_defect()).fold(0.0, f64::max)
    }

    pub fn is_basepoint_normalized(&self) -> bool {
        let g = self.grid();
        self.at(g.i0, g.j0) == CMat3::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_indexing() {
        let g = Grid::new(3, 2, 0.5, 0.25, 1, 0).unwrap();
        assert_eq!(g.idx(2, 1), 5);
        assert_eq!(g.x(0), -0.5);
        assert_eq!(g.y(1), 0.25);
        let order: Vec<_> = g.nodes().collect();
        assert_eq!(order[1], (1, 0));
        assert!(Grid::new(1, 4, 0.1, 0.1, 0, 0).is_err());
        assert!(Grid::new(4, 4, 0.1, -0.1, 0, 0).is_err());
        assert!(Grid::new(4, 4, 0.1, 0.1, 4, 0).is_err());
        assert_eq!(Grid::centered(5, 0.1).unwrap().interior(2).count(), 1);
    }
}
