//! Binary PPM (P6) heatmaps with a blue-white-red diverging map.
//!
//! A value `v` is mapped to `s = clamp((v - lo) / (hi - lo), 0, 1)`
//! (`s = 0.5` when `hi == lo`). For `s < 0.5`, with `t = 2s`, the colour is
//! `(255t, 255t, 255)`; otherwise, with `t = 2s - 1`, it is
//! `(255, 255(1-t), 255(1-t))`. Channels are rounded half-to-even. So `lo` is
//! pure blue, the midpoint is white and `hi` is pure red. The default range is
//! symmetric about zero at the largest magnitude in the grid. The top image
//! row is the largest `y`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::RealGrid;
use crate::io::atomic_write;

pub fn color(v: f64, lo: f64, hi: f64) -> [u8; 3] {
    let s = if hi > lo { ((v - lo) / (hi - lo)).clamp(0.0, 1.0) } else { 0.5 };
    let byte = |c: f64| c.round_ties_even() as u8;
    if s < 0.5 {
        let c = byte(255.0 * (2.0 * s));
        [c, c, 255]
    } else {
        let c = byte(255.0 * (1.0 - (2.0 * s - 1.0)));
        [255, c, c]
    }
}

pub fn default_range(g: &RealGrid) -> (f64, f64) {
    let m = g.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    (-m, m)
}

pub fn render_ppm(g: &RealGrid, range: Option<(f64, f64)>) -> Result<Vec<u8>> {
    let (nx, ny) = (g.grid.nx, g.grid.ny);
    if g.values.is_empty() {
        return Err(Error::Usage("cannot render an empty grid".into()));
    }
    if g.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("heatmap values must be finite".into()));
    }
    let (lo, hi) = range.unwrap_or_else(|| default_range(g));
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::Usage(format!("invalid heatmap range [{lo}, {hi}]")));
    }
    let mut out = format!("P6\n{nx} {ny}\n255\n").into_bytes();
    out.reserve(3 * nx * ny);
    for j in (0..ny).rev() {
        for i in 0..nx {
            out.extend_from_slice(&color(g.get(i, j), lo, hi));
        }
    }
    Ok(out)
}

pub fn write_heatmap(g: &RealGrid, path: &Path, range: Option<(f64, f64)>) -> Result<()> {
    atomic_write(path, &render_ppm(g, range)?)
}
