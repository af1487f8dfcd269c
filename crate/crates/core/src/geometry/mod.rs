//! Height-field meshes of real bilinear polynomials.

mod export;

pub use export::{export_mesh, format_g17, Csv, MeshFormat, MeshFormatRegistry, Obj};

use crate::error::{Error, Result};
use crate::mpoly::MultilinearPoly;

/// Largest imaginary coefficient part still treated as real.
pub const IMAG_TOL: f64 = 1e-12;

/// Square sampling grid `[min, max]²` with `n` samples per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    min: f64,
    max: f64,
    n: usize,
}

impl Default for GridSpec {
    /// `[-2, 2]²`, 25 samples per axis.
    fn default() -> Self {
        Self {
            min: -2.0,
            max: 2.0,
            n: 25,
        }
    }
}

impl GridSpec {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if min >= max {
            return Err(Error::InvalidGrid(format!(
                "min {min} must be below max {max}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 samples per axis, got {n}"
            )));
        }
        Ok(Self { min, max, n })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `min + i (max - min) / (n - 1)`.
    pub fn coord(&self, i: usize) -> f64 {
        self.min + i as f64 * (self.max - self.min) / (self.n - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    grid: GridSpec,
    /// `heights[r][c] = P(x_c, y_r)`.
    heights: Vec<Vec<f64>>,
}

impl SurfaceMesh {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn heights(&self) -> &[Vec<f64>] {
        &self.heights
    }

    pub fn vertex_count(&self) -> usize {
        self.grid.n * self.grid.n
    }

    /// Two triangles per grid cell.
    pub fn triangle_count(&self) -> usize {
        2 * (self.grid.n - 1).pow(2)
    }

    /// `(x, y, z)` in row-major order.
    pub fn vertices(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.heights.iter().enumerate().flat_map(move |(r, row)| {
            let y = self.grid.coord(r);
            row.iter()
                .enumerate()
                .map(move |(c, z)| (self.grid.coord(c), y, *z))
        })
    }

    /// 0-based vertex triples, counter-clockwise seen from `+z`.
    pub fn triangles(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let n = self.grid.n;
        (0..n - 1).flat_map(move |r| {
            (0..n - 1).flat_map(move |c| {
                let v00 = r * n + c;
                let (v01, v10, v11) = (v00 + 1, v00 + n, v00 + n + 1);
                [[v00, v01, v11], [v00, v11, v10]]
            })
        })
    }
}

pub fn sample_mesh(p: &MultilinearPoly, g: &GridSpec) -> Result<SurfaceMesh> {
    if p.nvars() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            actual: p.nvars(),
        });
    }
    let max_im = p.max_imag();
    if max_im > IMAG_TOL {
        return Err(Error::ComplexCoefficients { max_im });
    }
    let heights = (0..g.n)
        .map(|r| {
            let y = g.coord(r);
            (0..g.n)
                .map(|c| p.evaluate_real(&[g.coord(c), y]).map(|v| v.re))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SurfaceMesh { grid: *g, heights })
}
