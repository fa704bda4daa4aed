//! Quadrature nodes for source integrals `int f(y) S(y) dy`.
//!
//! Every rule returns `(node, weight)` pairs; weights already include the
//! Jacobian of the map onto the region.

use std::f64::consts::TAU;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use crate::geometry::Point;
use crate::sources::Rect;

/// Gauss-Legendre rule with `n` nodes on `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n).expect("Gauss-Legendre rule needs at least one node");
    let mut rule: Vec<(f64, f64)> =
        GaussLegendre::new(n).as_node_weight_pairs().iter().map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect();
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

/// Polar rule on the annulus `r0 <= |y - c| <= r1` (`r0 = 0` gives a disk):
/// Gauss-Legendre in the radius, periodic trapezoid in the angle.
pub fn annulus_rule(c: Point, r0: f64, r1: f64, n_r: usize, n_theta: usize) -> Vec<(Point, f64)> {
    let radial = gauss_legendre_unit(n_r);
    let dt = TAU / n_theta as f64;
    let mut out = Vec::with_capacity(n_r * n_theta);
    for &(s, ws) in &radial {
        let r = r0 + (r1 - r0) * s;
        let w = ws * (r1 - r0) * r * dt;
        for t in 0..n_theta {
            let (sin, cos) = (TAU * (t as f64 / n_theta as f64)).sin_cos();
            out.push((Point::new(c.x + r * cos, c.y + r * sin), w));
        }
    }
    out
}

/// Collapsed-square rule on the triangle `(o, a, b)`. The weights carry the
/// orientation sign, so summing over the fan of a simple polygon from any
/// point gives the polygon integral.
pub fn triangle_rule(o: Point, a: Point, b: Point, n: usize) -> Vec<(Point, f64)> {
    let gl = gauss_legendre_unit(n);
    let (ea, eb) = (a - o, b - o);
    let cross = ea.x * eb.y - ea.y * eb.x;
    let mut out = Vec::with_capacity(n * n);
    for &(s, ws) in &gl {
        for &(t, wt) in &gl {
            // y = o + s ((a - o) + t (b - a)),  dy = s cross ds dt
            let p = Point::new(o.x + s * (ea.x + t * (eb.x - ea.x)), o.y + s * (ea.y + t * (eb.y - ea.y)));
            out.push((p, ws * wt * s * cross));
        }
    }
    out
}

/// Triangle fan of a simple polygon about its vertex mean, for either
/// vertex orientation.
pub fn polygon_rule(vertices: &[Point], n: usize) -> Vec<(Point, f64)> {
    let twice_area: f64 = (0..vertices.len())
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % vertices.len()]);
            a.x * b.y - a.y * b.x
        })
        .sum();
    let sign = twice_area.signum();
    let m = vertices.len() as f64;
    let o = Point::new(vertices.iter().map(|v| v.x).sum::<f64>() / m, vertices.iter().map(|v| v.y).sum::<f64>() / m);
    (0..vertices.len())
        .flat_map(|i| triangle_rule(o, vertices[i], vertices[(i + 1) % vertices.len()], n))
        .map(|(p, w)| (p, sign * w))
        .collect()
}

/// Tensor Gauss-Legendre rule with `n x n` nodes on a rectangle.
pub fn rect_rule(r: Rect, n: usize) -> Vec<(Point, f64)> {
    let gl = gauss_legendre_unit(n);
    let (wx, wy) = (r.x_max - r.x_min, r.y_max - r.y_min);
    let mut out = Vec::with_capacity(n * n);
    for &(t, wt) in &gl {
        for &(s, ws) in &gl {
            out.push((Point::new(r.x_min + wx * s, r.y_min + wy * t), ws * wt * wx * wy));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn integrate(rule: &[(Point, f64)], f: impl Fn(Point) -> f64) -> f64 {
        rule.iter().map(|&(p, w)| w * f(p)).sum()
    }

    #[test]
    fn unit_rule_integrates_polynomials() {
        let rule = gauss_legendre_unit(5);
        let i: f64 = rule.iter().map(|&(x, w)| w * x.powi(9)).sum();
        assert!((i - 0.1).abs() < 1e-15);
        assert!(rule.windows(2).all(|p| p[0].0 < p[1].0));
    }

    #[test]
    fn disk_area_and_moment() {
        let rule = annulus_rule(Point::new(0.5, -1.0), 0.0, 2.0, 8, 32);
        assert!((integrate(&rule, |_| 1.0) - 4.0 * PI).abs() < 1e-13);
        // second moment about the centre: pi r^4 / 2
        let m2 = integrate(&rule, |p| (p - Point::new(0.5, -1.0)).norm_sq());
        assert!((m2 - 8.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn annulus_area() {
        let rule = annulus_rule(Point::ORIGIN, 0.5, 1.0, 4, 16);
        assert!((integrate(&rule, |_| 1.0) - PI * 0.75).abs() < 1e-14);
    }

    #[test]
    fn nonconvex_polygon_area_and_centroid() {
        // L-shape of area 3 with centroid (5/6, 5/6)
        let v = [
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 2.0),
            Point::new(0.0, 2.0),
        ];
        let rule = polygon_rule(&v, 4);
        assert!((integrate(&rule, |_| 1.0) - 3.0).abs() < 1e-14);
        assert!((integrate(&rule, |p| p.x) / 3.0 - 5.0 / 6.0).abs() < 1e-14);
        let reversed: Vec<Point> = v.iter().rev().copied().collect();
        assert!((integrate(&polygon_rule(&reversed, 4), |_| 1.0) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rect_rule_exact_for_bilinear() {
        let r = Rect { x_min: -1.0, x_max: 2.0, y_min: 0.5, y_max: 1.5 };
        let rule = rect_rule(r, 2);
        assert!((integrate(&rule, |p| p.x * p.y) - 1.5 * 1.0).abs() < 1e-14);
    }
}
