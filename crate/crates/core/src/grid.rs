use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Uniform `nx x ny` lattice over a rectangle, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

/// Node `i` of `n` on `[lo, hi]`. The two-sided form hits both endpoints
/// exactly and puts the midpoint of a symmetric interval at exactly zero.
#[inline]
fn lattice(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if n == 1 {
        return lo;
    }
    let s = i as f64 / (n - 1) as f64;
    lo * (1.0 - s) + hi * s
}

impl SamplingGrid {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let all_finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !all_finite || !(x_min < x_max) || !(y_min < y_max) {
            return Err(Error::Usage(format!(
                "grid bounds must be finite with x_min < x_max and y_min < y_max, got [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        if nx == 0 || ny == 0 {
            return Err(Error::Usage(format!("grid needs nx, ny >= 1, got {nx} x {ny}")));
        }
        Ok(SamplingGrid { x_min, x_max, y_min, y_max, nx, ny })
    }

    /// Square grid `[-half, half]^2` with `n` nodes per axis.
    pub fn square(half: f64, n: usize) -> Result<Self> {
        Self::new(-half, half, -half, half, n, n)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        lattice(self.x_min, self.x_max, i, self.nx)
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        lattice(self.y_min, self.y_max, j, self.ny)
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize) -> Point {
        Point::new(self.x(i), self.y(j))
    }

    /// Largest distance from the origin over all nodes (attained at a corner).
    pub fn max_radius(&self) -> f64 {
        let xs = [self.x_min, self.x_max];
        let ys = [self.y_min, self.y_max];
        xs.iter().flat_map(|&x| ys.iter().map(move |&y| Point::new(x, y).norm())).fold(0.0, f64::max)
    }

    /// Every node in row-major order (`j` outer, `i` inner).
    pub fn nodes(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| self.node(i, j)))
    }
}

/// Real values on a [`SamplingGrid`], stored row-major by `y` then `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealGrid {
    pub grid: SamplingGrid,
    pub values: Vec<f64>,
}

impl RealGrid {
    pub fn new(grid: SamplingGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Usage(format!(
                "grid is {}x{} but {} values were supplied",
                grid.nx,
                grid.ny,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite grid value at index {pos}")));
        }
        Ok(RealGrid { grid, values })
    }

    pub fn zeros(grid: SamplingGrid) -> Self {
        RealGrid { values: vec![0.0; grid.len()], grid }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.grid.nx + i]
    }
}
