//! Forward model: scattered fields radiated by a source, and the
//! multiplicative noise model applied to them.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::quadrature;
use crate::sources::{Rect, Shape, SourceModel};
use crate::specfun;

/// `L` receivers equispaced on the circle of radius `R`, starting on the
/// positive `x` axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorArray {
    radius: f64,
    count: usize,
}

impl SensorArray {
    pub fn new(radius: f64, count: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Usage(format!("sensor radius R must be > 0, got {radius}")));
        }
        if count == 0 {
            return Err(Error::Usage("sensor count L must be >= 1".into()));
        }
        Ok(SensorArray { radius, count })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Angle of sensor `l`, `2 pi (l / L)`. The ratio is formed first so that
    /// every other sensor of a `2L` array coincides bitwise with the `L` array.
    #[inline]
    pub fn angle(&self, l: usize) -> f64 {
        TAU * (l as f64 / self.count as f64)
    }

    /// Outward unit normal at sensor `l`.
    #[inline]
    pub fn normal(&self, l: usize) -> Point {
        let (s, c) = self.angle(l).sin_cos();
        Point::new(c, s)
    }

    #[inline]
    pub fn position(&self, l: usize) -> Point {
        let n = self.normal(l);
        Point::new(self.radius * n.x, self.radius * n.y)
    }

    pub fn positions(&self) -> Vec<Point> {
        (0..self.count).map(|l| self.position(l)).collect()
    }
}

/// `k_m = k_min + m dk`, `m = 0..M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavenumberGrid {
    k_min: f64,
    dk: f64,
    count: usize,
}

impl WavenumberGrid {
    pub fn new(k_min: f64, dk: f64, count: usize) -> Result<Self> {
        if !(k_min > 0.0 && k_min.is_finite()) {
            return Err(Error::Usage(format!("k_min must be > 0, got {k_min}")));
        }
        if !(dk > 0.0 && dk.is_finite()) {
            return Err(Error::Usage(format!("dk must be > 0, got {dk}")));
        }
        if count == 0 {
            return Err(Error::Usage("wavenumber count must be >= 1".into()));
        }
        Ok(WavenumberGrid { k_min, dk, count })
    }

    /// Grid from `k_min` to `k_max` inclusive. `k_max - k_min` must be an
    /// integer multiple of `dk` up to rounding.
    pub fn from_range(k_min: f64, k_max: f64, dk: f64) -> Result<Self> {
        if !(dk > 0.0 && dk.is_finite()) {
            return Err(Error::Usage(format!("dk must be > 0, got {dk}")));
        }
        if !(k_max >= k_min) {
            return Err(Error::Usage(format!("k_max ({k_max}) must be >= k_min ({k_min})")));
        }
        let steps = ((k_max - k_min) / dk).round();
        if (k_min + steps * dk - k_max).abs() > 1e-9 * dk.max(k_max.abs()) {
            return Err(Error::Usage(format!("k_max - k_min = {} is not a multiple of dk = {dk}", k_max - k_min)));
        }
        Self::new(k_min, dk, steps as usize + 1)
    }

    pub fn k_min(&self) -> f64 {
        self.k_min
    }

    pub fn dk(&self) -> f64 {
        self.dk
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn k_max(&self) -> f64 {
        self.k(self.count - 1)
    }

    #[inline]
    pub fn k(&self, m: usize) -> f64 {
        self.k_min + m as f64 * self.dk
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|m| self.k(m)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Clean,
    Noisy { delta: f64, seed: u64 },
}

/// Scattered-field samples `u(x_l, k_m)`, stored sensor-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldTensor {
    pub sensors: SensorArray,
    pub wavenumbers: WavenumberGrid,
    pub values: Vec<Complex64>,
    pub provenance: Provenance,
}

impl FieldTensor {
    pub fn new(
        sensors: SensorArray,
        wavenumbers: WavenumberGrid,
        values: Vec<Complex64>,
        provenance: Provenance,
    ) -> Result<Self> {
        if values.len() != sensors.count() * wavenumbers.count() {
            return Err(Error::Usage(format!(
                "field tensor needs {}x{} values, got {}",
                sensors.count(),
                wavenumbers.count(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain(format!("non-finite field value at index {i}")));
        }
        Ok(FieldTensor { sensors, wavenumbers, values, provenance })
    }

    pub fn zeros(sensors: SensorArray, wavenumbers: WavenumberGrid) -> Self {
        FieldTensor {
            values: vec![Complex64::new(0.0, 0.0); sensors.count() * wavenumbers.count()],
            sensors,
            wavenumbers,
            provenance: Provenance::Clean,
        }
    }

    #[inline]
    pub fn get(&self, l: usize, m: usize) -> Complex64 {
        self.values[l * self.wavenumbers.count() + m]
    }

    /// Row of all wavenumbers for sensor `l`.
    pub fn sensor_row(&self, l: usize) -> &[Complex64] {
        let m = self.wavenumbers.count();
        &self.values[l * m..(l + 1) * m]
    }

    /// Keeps every `stride`-th sensor and the first `count` wavenumbers.
    ///
    /// The result is bitwise identical to synthesizing directly on the
    /// coarser sensor array and the shorter wavenumber grid.
    pub fn restrict(&self, stride: usize, count: usize) -> Result<Self> {
        let l = self.sensors.count();
        if stride == 0 || !l.is_multiple_of(stride) {
            return Err(Error::Usage(format!("sensor stride {stride} does not divide L = {l}")));
        }
        if count == 0 || count > self.wavenumbers.count() {
            return Err(Error::Usage(format!("cannot keep {count} of {} wavenumbers", self.wavenumbers.count())));
        }
        let sensors = SensorArray::new(self.sensors.radius(), l / stride)?;
        let wavenumbers = WavenumberGrid::new(self.wavenumbers.k_min(), self.wavenumbers.dk(), count)?;
        let values = (0..l).step_by(stride).flat_map(|l| self.sensor_row(l)[..count].iter().copied()).collect();
        Ok(FieldTensor { sensors, wavenumbers, values, provenance: self.provenance })
    }

    /// Elementwise sum; both tensors must share sensors and wavenumbers.
    pub fn try_add(&self, other: &FieldTensor) -> Result<FieldTensor> {
        if self.sensors != other.sensors || self.wavenumbers != other.wavenumbers {
            return Err(Error::Usage("field tensors have different acquisition geometry".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(FieldTensor { values, ..self.clone() })
    }
}

/// Source-integral resolution.
///
/// `n_q` sets the node density of every rule:
///
/// * smooth sources: midpoint rule on `n_q x n_q` cells covering the
///   bounding box of the support;
/// * disks and annuli: `n_q / 16` Gauss-Legendre radii times `n_q / 4`
///   equispaced angles;
/// * polygons: a triangle fan with `(n_q / 16)^2` collapsed Gauss nodes per
///   triangle;
/// * raster masks: a tensor Gauss rule on each nonzero mask cell with
///   `n_q / max(nx, ny)` nodes per axis.
///
/// The shape rules follow the boundary of the support exactly, so the
/// integrand is smooth on every piece and the error decays faster than any
/// power of `n_q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    n_q: usize,
}

impl QuadratureSpec {
    pub const DEFAULT_N_Q: usize = 512;

    pub fn new(n_q: usize) -> Result<Self> {
        if n_q < 32 {
            return Err(Error::Usage(format!("quadrature resolution n_q must be >= 32, got {n_q}")));
        }
        Ok(QuadratureSpec { n_q })
    }

    pub fn n_q(&self) -> usize {
        self.n_q
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { n_q: Self::DEFAULT_N_Q }
    }
}

/// Quadrature nodes of a source: position and `weight * S(node)`.
#[derive(Debug, Clone)]
pub struct SourceCells {
    cells: Vec<(Point, f64)>,
    support_radius: f64,
}

fn midpoint_cells(model: &SourceModel, b: Rect, n: usize) -> Vec<(Point, f64)> {
    let hx = (b.x_max - b.x_min) / n as f64;
    let hy = (b.y_max - b.y_min) / n as f64;
    let area = hx * hy;
    (0..n)
        .flat_map(|j| (0..n).map(move |i| (i, j)))
        .filter_map(|(i, j)| {
            let c = Point::new(b.x_min + (i as f64 + 0.5) * hx, b.y_min + (j as f64 + 0.5) * hy);
            let s = model.eval(c);
            (s != 0.0).then_some((c, area * s))
        })
        .collect()
}

fn shape_cells(shape: &Shape, amplitude: f64, n_q: usize) -> Vec<(Point, f64)> {
    let g = (n_q / 16).max(2);
    let rule = match shape {
        Shape::Disk { center, radius } => quadrature::annulus_rule(*center, 0.0, *radius, g, 4 * g),
        Shape::Annulus { center, r_inner, r_outer } => quadrature::annulus_rule(*center, *r_inner, *r_outer, g, 4 * g),
        Shape::Polygon(v) => quadrature::polygon_rule(v, g),
    };
    rule.into_iter().map(|(p, w)| (p, w * amplitude)).collect()
}

impl SourceCells {
    pub fn new(model: &SourceModel, q: &QuadratureSpec) -> Self {
        let n = q.n_q;
        let cells = match model {
            SourceModel::ShapeSum(parts) => parts
                .iter()
                .filter(|(_, amp)| *amp != 0.0)
                .flat_map(|(shape, amp)| shape_cells(shape, *amp, n))
                .collect(),
            SourceModel::RasterMask(m) => {
                let g = (n / m.nx.max(m.ny)).max(1);
                m.nonzero_cell_values()
                    .flat_map(|(r, v)| quadrature::rect_rule(r, g).into_iter().map(move |(p, w)| (p, w * v)))
                    .collect()
            }
            SourceModel::AnalyticPeaks { .. } => match model.bounding_box() {
                None => Vec::new(),
                Some(b) => midpoint_cells(model, b, n),
            },
        };
        SourceCells { cells, support_radius: model.support_radius() }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Nodes with their weights `w * S(node)`.
    pub fn cells(&self) -> &[(Point, f64)] {
        &self.cells
    }

    /// Adds `sum_c w_c J0(k r_c)` and `sum_c w_c Y0(k r_c)` into `acc` for
    /// every wavenumber, cells in storage order.
    fn accumulate(&self, x: Point, ks: &[f64], acc: &mut [(f64, f64)]) {
        for &(c, w) in &self.cells {
            let r = x.distance(c);
            for (a, &k) in acc.iter_mut().zip(ks) {
                let (j0, y0) = specfun::j0_y0(k * r);
                a.0 += w * j0;
                a.1 += w * y0;
            }
        }
    }

    /// `u(x, k) = (i/4) sum_c w_c H0(k |x - y_c|)` for each `k` in `ks`.
    pub fn field_at(&self, x: Point, ks: &[f64]) -> Vec<Complex64> {
        let mut acc = vec![(0.0, 0.0); ks.len()];
        self.accumulate(x, ks, &mut acc);
        // (i/4)(J + iY) = (-Y/4) + i (J/4)
        acc.into_iter().map(|(j, y)| Complex64::new(-y / 4.0, j / 4.0)).collect()
    }
}

/// 2D outgoing fundamental solution `(i/4) H0^(1)(k |x - y|)`.
pub fn greens(k: f64, x: Point, y: Point) -> Result<Complex64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("wavenumber must be > 0, got {k}")));
    }
    let r = x.distance(y);
    if r == 0.0 {
        return Err(Error::Domain("Green's function is singular at x = y".into()));
    }
    let (j0, y0) = specfun::j0_y0(k * r);
    Ok(Complex64::new(-y0 / 4.0, j0 / 4.0))
}

fn check_outside(cells: &SourceCells, x: Point) -> Result<()> {
    if x.norm() <= cells.support_radius {
        return Err(Error::Precondition(format!(
            "sensor at radius {} is inside the support disk of radius {}",
            x.norm(),
            cells.support_radius
        )));
    }
    Ok(())
}

/// Midpoint-rule approximation of `int Phi_k(x, y) S(y) dy` at one point.
pub fn scattered_field(model: &SourceModel, x: Point, k: f64, q: &QuadratureSpec) -> Result<Complex64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("wavenumber must be > 0, got {k}")));
    }
    let cells = SourceCells::new(model, q);
    check_outside(&cells, x)?;
    Ok(cells.field_at(x, &[k])[0])
}

/// Scattered field at every sensor and wavenumber, parallel over sensors.
///
/// Each entry is bitwise equal to the corresponding [`scattered_field`] call.
pub fn synthesize(
    model: &SourceModel,
    sensors: &SensorArray,
    kgrid: &WavenumberGrid,
    q: &QuadratureSpec,
) -> Result<FieldTensor> {
    model.validate()?;
    let cells = SourceCells::new(model, q);
    if cells.support_radius >= sensors.radius() {
        return Err(Error::Precondition(format!(
            "source support reaches radius {} but must lie strictly inside the sensor circle R = {}",
            cells.support_radius,
            sensors.radius()
        )));
    }
    let ks = kgrid.values();
    let values: Vec<Complex64> =
        (0..sensors.count()).into_par_iter().flat_map_iter(|l| cells.field_at(sensors.position(l), &ks)).collect();
    FieldTensor::new(*sensors, *kgrid, values, Provenance::Clean)
}

/// Relative noise level and RNG key for [`add_noise`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub delta: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(delta: f64, seed: u64) -> Result<Self> {
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::Usage(format!("noise level delta must be >= 0, got {delta}")));
        }
        Ok(NoiseSpec { delta, seed })
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based uniform variate on `[-1, 1)` for entry `(l, m)`.
///
/// `h = mix(mix(mix(seed + G) ^ l + G) ^ m + G)` with the SplitMix64
/// finalizer `mix` and `G = 0x9E3779B97F4A7C15` (all arithmetic wrapping);
/// the top 53 bits of `h` give `u in [0, 1)` and the variate is `2u - 1`.
pub fn noise_variate(seed: u64, l: usize, m: usize) -> f64 {
    let mut h = mix64(seed.wrapping_add(GOLDEN_GAMMA));
    h = mix64((h ^ l as u64).wrapping_add(GOLDEN_GAMMA));
    h = mix64((h ^ m as u64).wrapping_add(GOLDEN_GAMMA));
    let u = (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    2.0 * u - 1.0
}

/// `u(x_l, k_m) (1 + delta xi_lm)` with one real factor per sample.
pub fn add_noise(t: &FieldTensor, n: &NoiseSpec) -> Result<FieldTensor> {
    if let Provenance::Noisy { .. } = t.provenance {
        return Err(Error::Usage("field tensor is already noisy".into()));
    }
    let mcount = t.wavenumbers.count();
    let values = t
        .values
        .iter()
        .enumerate()
        .map(|(idx, v)| {
            let f = 1.0 + n.delta * noise_variate(n.seed, idx / mcount, idx % mcount);
            Complex64::new(v.re * f, v.im * f)
        })
        .collect();
    Ok(FieldTensor { values, provenance: Provenance::Noisy { delta: n.delta, seed: n.seed }, ..t.clone() })
}

/// Field of a homogeneous disk `S = amplitude * chi(|y| < a)` centred at the
/// origin, from the Bessel addition theorem:
/// `u(x, k) = (i/4) (2 pi a / k) J1(k a) H0(k |x|)` for `|x| > a`.
pub fn disk_field_closed_form(a: f64, amplitude: f64, x: Point, k: f64) -> Complex64 {
    let (j1, _) = specfun::j1_y1(k * a);
    let (j0, y0) = specfun::j0_y0(k * x.norm());
    let scale = amplitude * TAU * a / k * j1 / 4.0;
    Complex64::new(-scale * y0, scale * j0)
}

/// Tensor of [`disk_field_closed_form`] values. Every sensor row is
/// identical, so the data are exactly rotation invariant.
pub fn disk_tensor(a: f64, amplitude: f64, sensors: &SensorArray, kgrid: &WavenumberGrid) -> FieldTensor {
    let x = Point::new(sensors.radius(), 0.0);
    let row: Vec<Complex64> = kgrid.values().iter().map(|&k| disk_field_closed_form(a, amplitude, x, k)).collect();
    let values = (0..sensors.count()).flat_map(|_| row.iter().copied()).collect();
    FieldTensor { sensors: *sensors, wavenumbers: *kgrid, values, provenance: Provenance::Clean }
}
