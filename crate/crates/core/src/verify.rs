//! Numerical checks of the identities behind the reconstruction formula and
//! error statistics for reconstructions.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forward::{add_noise, synthesize, NoiseSpec, QuadratureSpec, SensorArray, SourceCells, WavenumberGrid};
use crate::geometry::Point;
use crate::grid::{RealGrid, SamplingGrid};
use crate::reconstruct::{indicator_grid, IndicatorConfig};
use crate::sources::{rasterize, SourceModel};
use crate::specfun;
use crate::sum::pairwise_sum;

/// Reference norms below this are treated as zero when forming
/// `l2_relative`; the condition is reported in
/// [`ErrorStats::reference_degenerate`].
pub const EPS_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorStats {
    pub l_inf: f64,
    pub l2_relative: f64,
    pub percentile_95: f64,
    /// The reference grid has (numerically) zero norm, so `l2_relative` was
    /// divided by [`EPS_FLOOR`] instead.
    pub reference_degenerate: bool,
    pub error_grid: RealGrid,
}

/// The scalar part of [`ErrorStats`], as written to JSON.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorSummary {
    pub l_inf: f64,
    pub l2_relative: f64,
    pub percentile_95: f64,
    pub reference_degenerate: bool,
    pub nodes: usize,
}

impl ErrorStats {
    pub fn summary(&self) -> ErrorSummary {
        ErrorSummary {
            l_inf: self.l_inf,
            l2_relative: self.l2_relative,
            percentile_95: self.percentile_95,
            reference_degenerate: self.reference_degenerate,
            nodes: self.error_grid.values.len(),
        }
    }
}

/// Element at index `floor(p (n - 1))` of the ascending sort.
pub fn percentile(values: &[f64], p: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v[(p * (v.len() - 1) as f64).floor() as usize]
}

/// Statistics of `|a - b|` where `b` is the reference.
pub fn error_stats(a: &RealGrid, b: &RealGrid) -> Result<ErrorStats> {
    if a.grid != b.grid {
        return Err(Error::Usage("error_stats needs grids with identical geometry".into()));
    }
    let err: Vec<f64> = a.values.iter().zip(&b.values).map(|(x, y)| (x - y).abs()).collect();
    let sq: Vec<f64> = err.iter().map(|e| e * e).collect();
    let ref_sq: Vec<f64> = b.values.iter().map(|v| v * v).collect();
    let ref_norm = pairwise_sum(&ref_sq).sqrt();
    let reference_degenerate = !(ref_norm >= EPS_FLOOR);
    let l2_relative = pairwise_sum(&sq).sqrt() / ref_norm.max(EPS_FLOOR);
    Ok(ErrorStats {
        l_inf: err.iter().copied().fold(0.0, f64::max),
        l2_relative,
        percentile_95: percentile(&err, 0.95),
        reference_degenerate,
        error_grid: RealGrid::new(a.grid, err)?,
    })
}

/// Residual of the circle representation
/// `J0(k|z-y|) = 1/4 oint [J0(k|x-y|) d_nu Y0(k|z-x|) - Y0(k|x-y|) d_nu J0(k|z-x|)] ds(x)`
/// with the contour integral discretized by `n_theta` equispaced nodes.
///
/// The normal derivatives use `grad J0(|z|) = -(z/|z|) J1(|z|)` and the same
/// for `Y0`/`Y1`, giving `d_nu f0(k|z-x|) = k f1(k|z-x|) ((z-x)/|z-x|) . nu`.
pub fn check_disk_identity(k: f64, z: Point, y: Point, radius: f64, n_theta: usize) -> Result<f64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("wavenumber must be > 0, got {k}")));
    }
    if !(z.norm() < radius && y.norm() < radius) {
        return Err(Error::Domain(format!("z and y must lie inside the circle of radius {radius}")));
    }
    if n_theta < 16 {
        return Err(Error::Usage(format!("n_theta must be >= 16, got {n_theta}")));
    }
    let ring = SensorArray::new(radius, n_theta)?;
    let ds = TAU * radius / n_theta as f64;
    let terms: Vec<f64> = (0..n_theta)
        .map(|j| {
            let x = ring.position(j);
            let v = z - x;
            let r = v.norm();
            let d = v.dot(ring.normal(j)) / r;
            let (j0_xy, y0_xy) = specfun::j0_y0(k * x.distance(y));
            let (j1_zx, y1_zx) = specfun::j1_y1(k * r);
            k * d * (j0_xy * y1_zx - y0_xy * j1_zx)
        })
        .collect();
    let rhs = 0.25 * ds * pairwise_sum(&terms);
    let lhs = specfun::bessel_j(0, k * z.distance(y))?;
    Ok((lhs - rhs).abs())
}

/// Residual of the truncated Hankel inversion
/// `S(z) = 1/(2 pi) int_0^{k_max} [int S(y) J0(k|z-y|) dy] k dk`,
/// with the source integral by the midpoint rule on `n_q x n_q` cells and the
/// `k` integral by the trapezoid rule on `k_i = i dk`.
pub fn check_inversion_identity(model: &SourceModel, z: Point, k_max: f64, dk: f64, n_q: usize) -> Result<f64> {
    if !(dk > 0.0 && k_max > 0.0 && k_max.is_finite()) {
        return Err(Error::Usage(format!("need k_max > 0 and dk > 0, got {k_max}, {dk}")));
    }
    if !(z.x.is_finite() && z.y.is_finite()) {
        return Err(Error::Domain("z must be finite".into()));
    }
    let cells = SourceCells::new(model, &QuadratureSpec::new(n_q)?);
    let steps = (k_max / dk).round() as usize;
    let ks: Vec<f64> = (0..=steps).map(|i| i as f64 * dk).collect();
    let mut inner = vec![0.0; ks.len()];
    for &(c, w) in cells.cells() {
        let r = z.distance(c);
        for (acc, &k) in inner.iter_mut().zip(&ks).skip(1) {
            *acc += w * specfun::j0_y0(k * r).0;
        }
    }
    let integrand: Vec<f64> = inner
        .iter()
        .zip(&ks)
        .enumerate()
        .map(|(i, (f, k))| {
            let w = if i == 0 || i == steps { dk / 2.0 } else { dk };
            w * k * f
        })
        .collect();
    let approx = pairwise_sum(&integrand) / (2.0 * PI);
    Ok((model.eval(z) - approx).abs())
}

/// End-to-end check that the indicator reproduces the source: synthesize,
/// optionally add noise, reconstruct on `grid` and compare with the
/// rasterized source.
pub fn theorem_residual(
    model: &SourceModel,
    sensors: &SensorArray,
    kgrid: &WavenumberGrid,
    grid: &SamplingGrid,
    q: &QuadratureSpec,
    noise: Option<&NoiseSpec>,
) -> Result<ErrorStats> {
    let mut data = synthesize(model, sensors, kgrid, q)?;
    if let Some(n) = noise {
        data = add_noise(&data, n)?;
    }
    let rec = indicator_grid(&data, grid, &IndicatorConfig::default())?;
    error_stats(&rec, &rasterize(model, grid))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> SamplingGrid {
        SamplingGrid::square(1.0, 11).unwrap()
    }

    #[test]
    fn identical_grids_have_zero_error() {
        let a = RealGrid::new(grid(), (0..121).map(|v| v as f64).collect()).unwrap();
        let s = error_stats(&a, &a).unwrap();
        assert_eq!((s.l_inf, s.l2_relative, s.percentile_95), (0.0, 0.0, 0.0));
        assert!(!s.reference_degenerate);
    }

    #[test]
    fn constant_offset() {
        let b = RealGrid::new(grid(), (0..121).map(|v| v as f64 * 0.01).collect()).unwrap();
        let a = RealGrid::new(grid(), b.values.iter().map(|v| v - 0.25).collect()).unwrap();
        let s = error_stats(&a, &b).unwrap();
        assert!((s.l_inf - 0.25).abs() < 1e-15);
        assert!(s.l_inf >= s.percentile_95);
    }

    #[test]
    fn zero_reference_is_flagged() {
        let b = RealGrid::zeros(grid());
        let a = RealGrid::new(grid(), vec![1e-3; 121]).unwrap();
        let s = error_stats(&a, &b).unwrap();
        assert!(s.reference_degenerate);
        assert!(s.l2_relative.is_finite() || s.l2_relative == f64::INFINITY);
        assert!(error_stats(&a, &RealGrid::zeros(SamplingGrid::square(1.0, 12).unwrap())).unwrap_err().is_usage());
    }

    #[test]
    fn percentile_lower_index() {
        let v: Vec<f64> = (0..=100).rev().map(f64::from).collect();
        assert_eq!(percentile(&v, 0.95), 95.0);
        assert_eq!(percentile(&[3.0, 1.0], 0.95), 1.0);
    }

    #[test]
    fn disk_identity_coincident_points() {
        for k in [0.5, 1.0, 5.0, 10.0] {
            let z = Point::new(0.3, -0.8);
            let r = check_disk_identity(k, z, z, 5.0, 512).unwrap();
            assert!(r <= 1e-8, "k={k}: {r}");
        }
    }

    #[test]
    fn disk_identity_separated_points() {
        let r = check_disk_identity(1.0, Point::new(0.5, 0.0), Point::new(-0.5, 0.0), 5.0, 512).unwrap();
        assert!(r <= 1e-10, "{r}");
    }

    #[test]
    fn disk_identity_spectral_decay() {
        let (z, y) = (Point::new(0.5, 1.0), Point::new(-1.5, 0.2));
        let coarse = check_disk_identity(10.0, z, y, 5.0, 32).unwrap();
        let fine = check_disk_identity(10.0, z, y, 5.0, 512).unwrap();
        assert!(fine * 1e3 <= coarse, "{coarse} -> {fine}");
    }

    #[test]
    fn disk_identity_domain() {
        assert!(check_disk_identity(1.0, Point::new(5.0, 0.0), Point::ORIGIN, 5.0, 64).is_err());
        assert!(check_disk_identity(1.0, Point::ORIGIN, Point::ORIGIN, 5.0, 8).is_err());
    }

    #[test]
    fn inversion_identity_zero_source() {
        let r = check_inversion_identity(&SourceModel::zero(), Point::new(0.2, 0.1), 10.0, 0.1, 64).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn zero_source_theorem_residual() {
        let s = SensorArray::new(5.0, 8).unwrap();
        let k = WavenumberGrid::new(0.1, 0.1, 10).unwrap();
        let st =
            theorem_residual(&SourceModel::zero(), &s, &k, &grid(), &QuadratureSpec::new(32).unwrap(), None).unwrap();
        assert_eq!(st.l_inf, 0.0);
    }
}
