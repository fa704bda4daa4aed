//! Compactly supported source functions.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::grid::{RealGrid, SamplingGrid};

/// Truncation radius of the builtin smooth source. At this radius the
/// untruncated function is below 1.5e-4 everywhere on the circle.
pub const PEAKS_TRUNCATION: f64 = 4.3;

/// Axis-aligned rectangle `[x_min, x_max] x [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    fn union(self, o: Rect) -> Rect {
        Rect {
            x_min: self.x_min.min(o.x_min),
            x_max: self.x_max.max(o.x_max),
            y_min: self.y_min.min(o.y_min),
            y_max: self.y_max.max(o.y_max),
        }
    }

    fn around(c: Point, r: f64) -> Rect {
        Rect { x_min: c.x - r, x_max: c.x + r, y_min: c.y - r, y_max: c.y + r }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Polygon(Vec<Point>),
    Annulus { center: Point, r_inner: f64, r_outer: f64 },
    Disk { center: Point, radius: f64 },
}

impl Shape {
    pub fn validate(&self) -> Result<()> {
        match self {
            Shape::Polygon(v) => {
                if v.len() < 3 {
                    return Err(Error::Usage(format!("polygon needs >= 3 vertices, got {}", v.len())));
                }
                if v.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
                    return Err(Error::Usage("polygon vertex is not finite".into()));
                }
                if !is_simple(v) {
                    return Err(Error::Usage("polygon is self-intersecting".into()));
                }
                Ok(())
            }
            Shape::Annulus { center, r_inner, r_outer } => {
                if !(center.norm().is_finite() && *r_inner >= 0.0 && r_inner < r_outer && r_outer.is_finite()) {
                    return Err(Error::Usage(format!(
                        "annulus needs 0 <= r_inner < r_outer, got {r_inner}, {r_outer}"
                    )));
                }
                Ok(())
            }
            Shape::Disk { center, radius } => {
                if !(center.norm().is_finite() && *radius > 0.0 && radius.is_finite()) {
                    return Err(Error::Usage(format!("disk needs a positive radius, got {radius}")));
                }
                Ok(())
            }
        }
    }

    /// Membership test.
    ///
    /// Polygons use the even-odd rule with half-open edges: a horizontal ray
    /// is cast towards `+x` and an edge counts when exactly one endpoint lies
    /// strictly above the point. Points on lower and left edges are inside,
    /// points on upper and right edges are outside. Annuli and disks include
    /// their inner radius and exclude their outer radius.
    pub fn contains(&self, p: Point) -> bool {
        match self {
            Shape::Polygon(v) => {
                let mut inside = false;
                let mut j = v.len() - 1;
                for i in 0..v.len() {
                    let (a, b) = (v[i], v[j]);
                    if (a.y > p.y) != (b.y > p.y) {
                        let x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
                        if p.x < x_cross {
                            inside = !inside;
                        }
                    }
                    j = i;
                }
                inside
            }
            Shape::Annulus { center, r_inner, r_outer } => {
                let d2 = (p - *center).norm_sq();
                d2 >= r_inner * r_inner && d2 < r_outer * r_outer
            }
            Shape::Disk { center, radius } => (p - *center).norm_sq() < radius * radius,
        }
    }

    fn max_radius(&self) -> f64 {
        match self {
            Shape::Polygon(v) => v.iter().map(|p| p.norm()).fold(0.0, f64::max),
            Shape::Annulus { center, r_outer, .. } => center.norm() + r_outer,
            Shape::Disk { center, radius } => center.norm() + radius,
        }
    }

    fn bounding_box(&self) -> Rect {
        match self {
            Shape::Polygon(v) => v.iter().fold(
                Rect { x_min: f64::INFINITY, x_max: f64::NEG_INFINITY, y_min: f64::INFINITY, y_max: f64::NEG_INFINITY },
                |r, p| Rect {
                    x_min: r.x_min.min(p.x),
                    x_max: r.x_max.max(p.x),
                    y_min: r.y_min.min(p.y),
                    y_max: r.y_max.max(p.y),
                },
            ),
            Shape::Annulus { center, r_outer, .. } => Rect::around(*center, *r_outer),
            Shape::Disk { center, radius } => Rect::around(*center, *radius),
        }
    }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

fn is_simple(v: &[Point]) -> bool {
    let n = v.len();
    let edge = |i: usize| (v[i], v[(i + 1) % n]);
    if (0..n).any(|i| v[i] == v[(i + 1) % n]) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            let (a, b) = edge(i);
            let (c, d) = edge(j);
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Piecewise-constant source on a rectangle split into `nx x ny` cells.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterMask {
    pub rect: Rect,
    pub nx: usize,
    pub ny: usize,
    /// Cell amplitudes, row-major by `y` then `x`.
    pub values: Vec<f64>,
}

impl RasterMask {
    /// Reads a mask stored as a grid whose nodes are the cell centres; the
    /// covered rectangle extends half a cell beyond the outer nodes.
    pub fn from_cell_centers(g: &RealGrid) -> Result<Self> {
        let s = g.grid;
        if s.nx < 2 || s.ny < 2 {
            return Err(Error::Usage("raster mask needs at least 2x2 cells".into()));
        }
        let hx = (s.x_max - s.x_min) / (s.nx - 1) as f64;
        let hy = (s.y_max - s.y_min) / (s.ny - 1) as f64;
        Ok(RasterMask {
            rect: Rect {
                x_min: s.x_min - hx / 2.0,
                x_max: s.x_max + hx / 2.0,
                y_min: s.y_min - hy / 2.0,
                y_max: s.y_max + hy / 2.0,
            },
            nx: s.nx,
            ny: s.ny,
            values: g.values.clone(),
        })
    }

    /// The inverse of [`RasterMask::from_cell_centers`].
    pub fn to_cell_centers(&self) -> Result<RealGrid> {
        let hx = (self.rect.x_max - self.rect.x_min) / self.nx as f64;
        let hy = (self.rect.y_max - self.rect.y_min) / self.ny as f64;
        let grid = SamplingGrid::new(
            self.rect.x_min + hx / 2.0,
            self.rect.x_max - hx / 2.0,
            self.rect.y_min + hy / 2.0,
            self.rect.y_max - hy / 2.0,
            self.nx,
            self.ny,
        )?;
        RealGrid::new(grid, self.values.clone())
    }

    fn validate(&self) -> Result<()> {
        let r = self.rect;
        if !(r.x_min < r.x_max && r.y_min < r.y_max) || self.nx == 0 || self.ny == 0 {
            return Err(Error::Usage("raster mask has an empty rectangle".into()));
        }
        if self.values.len() != self.nx * self.ny {
            return Err(Error::Usage("raster mask value count does not match its dimensions".into()));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Usage("raster mask has non-finite amplitudes".into()));
        }
        Ok(())
    }

    fn cell_of(&self, p: Point) -> Option<(usize, usize)> {
        let r = self.rect;
        if !(p.x >= r.x_min && p.x < r.x_max && p.y >= r.y_min && p.y < r.y_max) {
            return None;
        }
        let i = ((p.x - r.x_min) / (r.x_max - r.x_min) * self.nx as f64) as usize;
        let j = ((p.y - r.y_min) / (r.y_max - r.y_min) * self.ny as f64) as usize;
        Some((i.min(self.nx - 1), j.min(self.ny - 1)))
    }

    fn cell_rect(&self, i: usize, j: usize) -> Rect {
        let r = self.rect;
        let hx = (r.x_max - r.x_min) / self.nx as f64;
        let hy = (r.y_max - r.y_min) / self.ny as f64;
        Rect {
            x_min: r.x_min + i as f64 * hx,
            x_max: r.x_min + (i + 1) as f64 * hx,
            y_min: r.y_min + j as f64 * hy,
            y_max: r.y_min + (j + 1) as f64 * hy,
        }
    }

    fn nonzero_cells(&self) -> impl Iterator<Item = Rect> + '_ {
        self.nonzero_cell_values().map(|(r, _)| r)
    }

    /// Nonzero cells with their amplitudes, row-major.
    pub fn nonzero_cell_values(&self) -> impl Iterator<Item = (Rect, f64)> + '_ {
        (0..self.ny)
            .flat_map(move |j| (0..self.nx).map(move |i| (i, j)))
            .map(move |(i, j)| (self.cell_rect(i, j), self.values[j * self.nx + i]))
            .filter(|&(_, v)| v != 0.0)
    }
}

/// An evaluable real source `S(y)` with compact support.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceModel {
    /// Sum of `amplitude * indicator(shape)`.
    ShapeSum(Vec<(Shape, f64)>),
    RasterMask(RasterMask),
    /// Smooth three-bump source, set to zero beyond `truncation`.
    AnalyticPeaks {
        truncation: f64,
    },
}

/// The untruncated smooth source.
#[inline]
pub fn peaks(p: Point) -> f64 {
    let (y1, y2) = (p.x, p.y);
    0.3 * (1.0 - y2).powi(2) * (-(y1 * y1 + (y2 + 1.0).powi(2))).exp()
        - 0.03 * (-((y1 + 1.0).powi(2) + y2 * y2)).exp()
        - (0.3 * y1 - y1.powi(3) - y2.powi(5)) * (-(y1 * y1 + y2 * y2)).exp()
}

impl SourceModel {
    pub fn zero() -> Self {
        SourceModel::ShapeSum(Vec::new())
    }

    pub fn disk(center: Point, radius: f64, amplitude: f64) -> Self {
        SourceModel::ShapeSum(vec![(Shape::Disk { center, radius }, amplitude)])
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SourceModel::ShapeSum(parts) => {
                for (shape, amp) in parts {
                    shape.validate()?;
                    if !amp.is_finite() {
                        return Err(Error::Usage("shape amplitude is not finite".into()));
                    }
                }
                Ok(())
            }
            SourceModel::RasterMask(m) => m.validate(),
            SourceModel::AnalyticPeaks { truncation } => {
                if !(*truncation > 0.0 && truncation.is_finite()) {
                    return Err(Error::Usage(format!("truncation radius must be positive, got {truncation}")));
                }
                Ok(())
            }
        }
    }

    /// `S(p)`. Exactly zero outside the support.
    pub fn eval(&self, p: Point) -> f64 {
        match self {
            SourceModel::ShapeSum(parts) => {
                parts.iter().filter(|(shape, _)| shape.contains(p)).map(|(_, amp)| amp).sum()
            }
            SourceModel::RasterMask(m) => match m.cell_of(p) {
                Some((i, j)) => m.values[j * m.nx + i],
                None => 0.0,
            },
            SourceModel::AnalyticPeaks { truncation } => {
                if p.norm_sq() > truncation * truncation {
                    0.0
                } else {
                    peaks(p)
                }
            }
        }
    }

    /// Radius of the smallest origin-centred disk containing the support.
    pub fn support_radius(&self) -> f64 {
        match self {
            SourceModel::ShapeSum(parts) => {
                parts.iter().filter(|(_, amp)| *amp != 0.0).map(|(s, _)| s.max_radius()).fold(0.0, f64::max)
            }
            SourceModel::RasterMask(m) => m
                .nonzero_cells()
                .flat_map(|c| [(c.x_min, c.y_min), (c.x_min, c.y_max), (c.x_max, c.y_min), (c.x_max, c.y_max)])
                .map(|(x, y)| Point::new(x, y).norm())
                .fold(0.0, f64::max),
            SourceModel::AnalyticPeaks { truncation } => *truncation,
        }
    }

    /// Bounding box of the support, or `None` for an identically zero source.
    pub fn bounding_box(&self) -> Option<Rect> {
        match self {
            SourceModel::ShapeSum(parts) => {
                parts.iter().filter(|(_, amp)| *amp != 0.0).map(|(s, _)| s.bounding_box()).reduce(Rect::union)
            }
            SourceModel::RasterMask(m) => m.nonzero_cells().reduce(Rect::union),
            SourceModel::AnalyticPeaks { truncation } => Some(Rect::around(Point::ORIGIN, *truncation)),
        }
    }
}

/// Samples `model` at every node of `grid`.
pub fn rasterize(model: &SourceModel, grid: &SamplingGrid) -> RealGrid {
    RealGrid { grid: *grid, values: grid.nodes().map(|p| model.eval(p)).collect() }
}

const RABBIT_CSV: &str = include_str!("../data/rabbit_mask.csv");
const RABBIT_META: &str = include_str!("../data/rabbit_mask.csv.meta.json");

/// The three reference sources.
///
/// 1. Characteristic function of a pentagon (circumradius 1.2 around
///    `(-1.4, 0)`) plus an annulus (`(1.5, 0)`, radii 0.5 and 1.0).
/// 2. A piecewise-constant rabbit silhouette with amplitudes 0.5, 1.0 and 1.5,
///    read from the bundled raster mask.
/// 3. The smooth three-bump source truncated at [`PEAKS_TRUNCATION`].
pub fn builtin_example(id: u32) -> Result<SourceModel> {
    match id {
        1 => {
            let c = Point::new(-1.4, 0.0);
            let pentagon = (0..5)
                .map(|n| {
                    let a = TAU * n as f64 / 5.0 + std::f64::consts::FRAC_PI_2;
                    Point::new(c.x + 1.2 * a.cos(), c.y + 1.2 * a.sin())
                })
                .collect();
            Ok(SourceModel::ShapeSum(vec![
                (Shape::Polygon(pentagon), 1.0),
                (Shape::Annulus { center: Point::new(1.5, 0.0), r_inner: 0.5, r_outer: 1.0 }, 1.0),
            ]))
        }
        2 => {
            let g = crate::io::parse_grid(RABBIT_CSV, RABBIT_META, "rabbit_mask.csv")?;
            Ok(SourceModel::RasterMask(RasterMask::from_cell_centers(&g)?))
        }
        3 => Ok(SourceModel::AnalyticPeaks { truncation: PEAKS_TRUNCATION }),
        _ => Err(Error::Usage(format!("unknown example {id}; expected 1, 2 or 3"))),
    }
}
