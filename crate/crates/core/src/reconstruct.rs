//! Pointwise source reconstruction from a [`FieldTensor`].
//!
//! Discretization of the indicator:
//!
//! * frequencies: composite trapezoid over the acquired wavenumbers
//!   (the `k` integral is truncated to `[k_min, k_max]`);
//! * angles: the periodic rectangle rule with weight `2 pi / L`, one node per
//!   sensor.
//!
//! For node `z` and sensor `l` with `r = |z - x_l|` and direction factor
//! `d = ((z - x_l) / r) . nu_l`, the per-sensor value is
//!
//! ```text
//! S_l(z) = sum_m [ a_lm Y1(k_m r) + b_lm J1(k_m r) ],
//! a_lm = w_m k_m^2 Im u(x_l, k_m),   b_lm = w_m k_m^2 Re u(x_l, k_m)
//! ```
//!
//! and `I(z) = (R / L) sum_l d_l S_l(z)`. Both sums are pairwise with the
//! frequency sum innermost, so every node is computed in a fixed order
//! independent of the thread schedule.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forward::{FieldTensor, SensorArray, WavenumberGrid};
use crate::geometry::Point;
use crate::grid::{RealGrid, SamplingGrid};
use crate::specfun;
use crate::sum::pairwise_sum;

/// Quadrature rules for the indicator. Only one combination is implemented;
/// the type exists so the choice is explicit at call sites.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IndicatorConfig {
    pub frequency_rule: FrequencyRule,
    pub angle_rule: AngleRule,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum FrequencyRule {
    #[default]
    Trapezoid,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum AngleRule {
    #[default]
    PeriodicRectangle,
}

/// Composite-trapezoid weights: `dk/2` at both ends, `dk` inside.
pub fn k_weights(kgrid: &WavenumberGrid) -> Result<Vec<f64>> {
    let m = kgrid.count();
    if m < 2 {
        return Err(Error::Usage(format!("trapezoid rule needs at least 2 wavenumbers, got {m}")));
    }
    let dk = kgrid.dk();
    let mut w = vec![dk; m];
    w[0] = dk / 2.0;
    w[m - 1] = dk / 2.0;
    Ok(w)
}

/// `(|z - x_l|, ((z - x_l)/|z - x_l|) . nu_l)`.
#[inline]
fn sensor_geometry(z: Point, x: Point, normal: Point) -> (f64, f64) {
    let v = z - x;
    let r = v.norm();
    (r, v.dot(normal) / r)
}

/// Tensor data folded with the quadrature weights, ready for evaluation.
struct Prepared {
    radius: f64,
    count: usize,
    ks: Vec<f64>,
    /// `(a_lm, b_lm)`, sensor-major.
    coeffs: Vec<(f64, f64)>,
    positions: Vec<Point>,
    normals: Vec<Point>,
}

impl Prepared {
    fn new(t: &FieldTensor, _cfg: &IndicatorConfig) -> Result<Self> {
        let w = k_weights(&t.wavenumbers)?;
        let ks = t.wavenumbers.values();
        let m = ks.len();
        let coeffs = t
            .values
            .iter()
            .enumerate()
            .map(|(idx, u)| {
                let k = ks[idx % m];
                let f = w[idx % m] * k * k;
                (f * u.im, f * u.re)
            })
            .collect();
        let s = &t.sensors;
        Ok(Prepared {
            radius: s.radius(),
            count: s.count(),
            ks,
            coeffs,
            positions: s.positions(),
            normals: (0..s.count()).map(|l| s.normal(l)).collect(),
        })
    }

    #[inline]
    fn sensor_term(&self, l: usize, r: f64, scratch: &mut [f64]) -> f64 {
        let m = self.ks.len();
        let row = &self.coeffs[l * m..(l + 1) * m];
        for ((out, &k), &(a, b)) in scratch.iter_mut().zip(&self.ks).zip(row) {
            let (j1, y1) = specfun::j1_y1(k * r);
            *out = a * y1 + b * j1;
        }
        pairwise_sum(scratch)
    }

    /// Evaluates one node given its per-sensor `(r, d)` pairs.
    #[inline]
    fn node(&self, geom: impl Iterator<Item = (f64, f64)>, scratch: &mut Scratch) -> f64 {
        for (l, (r, d)) in geom.enumerate() {
            scratch.sensors[l] = d * self.sensor_term(l, r, &mut scratch.freqs);
        }
        self.radius / self.count as f64 * pairwise_sum(&scratch.sensors)
    }

    fn scratch(&self) -> Scratch {
        Scratch { freqs: vec![0.0; self.ks.len()], sensors: vec![0.0; self.count] }
    }

    fn geometry_at(&self, z: Point) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.positions.iter().zip(&self.normals).map(move |(&x, &n)| sensor_geometry(z, x, n))
    }
}

struct Scratch {
    freqs: Vec<f64>,
    sensors: Vec<f64>,
}

fn check_inside(z: Point, radius: f64) -> Result<()> {
    if !(z.norm() < radius) {
        return Err(Error::Domain(format!(
            "sampling point ({}, {}) has |z| = {} but the indicator requires |z| < R = {radius}",
            z.x,
            z.y,
            z.norm()
        )));
    }
    Ok(())
}

fn check_grid_inside(grid: &SamplingGrid, radius: f64) -> Result<()> {
    if !(grid.max_radius() < radius) {
        return Err(Error::Domain(format!(
            "sampling grid reaches |z| = {} but the indicator requires |z| < R = {radius} at every node",
            grid.max_radius()
        )));
    }
    Ok(())
}

/// Indicator value at a single point strictly inside the sensor circle.
pub fn indicator_point(t: &FieldTensor, z: Point, cfg: &IndicatorConfig) -> Result<f64> {
    check_inside(z, t.sensors.radius())?;
    let p = Prepared::new(t, cfg)?;
    let mut scratch = p.scratch();
    Ok(p.node(p.geometry_at(z), &mut scratch))
}

/// Indicator on every node of `grid`, parallel over grid rows.
pub fn indicator_grid(t: &FieldTensor, grid: &SamplingGrid, cfg: &IndicatorConfig) -> Result<RealGrid> {
    check_grid_inside(grid, t.sensors.radius())?;
    let p = Prepared::new(t, cfg)?;
    let values = (0..grid.ny)
        .into_par_iter()
        .flat_map_iter(|j| {
            let mut scratch = p.scratch();
            (0..grid.nx).map(|i| p.node(p.geometry_at(grid.node(i, j)), &mut scratch)).collect::<Vec<_>>()
        })
        .collect();
    RealGrid::new(*grid, values)
}

/// Per-(node, sensor) distances and direction factors.
#[derive(Debug, Clone)]
pub struct GeometryCache {
    grid: SamplingGrid,
    sensors: SensorArray,
    /// `(r, d)`, node-major then sensor.
    entries: Vec<(f64, f64)>,
}

impl GeometryCache {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(r, d)` for node `(i, j)` and sensor `l`.
    pub fn get(&self, i: usize, j: usize, l: usize) -> (f64, f64) {
        self.entries[(j * self.grid.nx + i) * self.sensors.count() + l]
    }
}

pub fn precompute_geometry(sensors: &SensorArray, grid: &SamplingGrid) -> GeometryCache {
    let positions = sensors.positions();
    let normals: Vec<Point> = (0..sensors.count()).map(|l| sensors.normal(l)).collect();
    let entries = grid
        .nodes()
        .flat_map(|z| positions.iter().zip(&normals).map(move |(&x, &n)| sensor_geometry(z, x, n)).collect::<Vec<_>>())
        .collect();
    GeometryCache { grid: *grid, sensors: *sensors, entries }
}

/// [`indicator_grid`] using precomputed geometry; results are bitwise equal.
pub fn indicator_grid_cached(t: &FieldTensor, cache: &GeometryCache, cfg: &IndicatorConfig) -> Result<RealGrid> {
    if cache.sensors != t.sensors {
        return Err(Error::Usage("geometry cache was built for a different sensor array".into()));
    }
    let grid = cache.grid;
    check_grid_inside(&grid, t.sensors.radius())?;
    let p = Prepared::new(t, cfg)?;
    let l = t.sensors.count();
    let values = (0..grid.ny)
        .into_par_iter()
        .flat_map_iter(|j| {
            let mut scratch = p.scratch();
            (0..grid.nx)
                .map(|i| {
                    let base = (j * grid.nx + i) * l;
                    p.node(cache.entries[base..base + l].iter().copied(), &mut scratch)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    RealGrid::new(grid, values)
}
