use radonsource::forward::{QuadratureSpec, SensorArray, WavenumberGrid};
use radonsource::sources::{builtin_example, SourceModel};
use radonsource::specfun::bessel_j;
use radonsource::verify::{check_inversion_identity, theorem_residual};
use radonsource::{Point, SamplingGrid};

/// Leading trapezoid error of the `k` integral. Its integrand `k F(k)` has
/// slope `int S = 1.32 pi` at `k = 0`, so the Euler-Maclaurin endpoint term is
/// `dk^2 / 12 * 1.32 pi / (2 pi)` at every `z`.
fn endpoint_term(dk: f64) -> f64 {
    dk * dk / 12.0 * 1.32 / 2.0
}

#[test]
fn peaks_inversion_at_origin() {
    let peaks = builtin_example(3).unwrap();
    let r = check_inversion_identity(&peaks, Point::ORIGIN, 30.0, 0.05, 512).unwrap();
    assert!(r <= 5e-3, "{r}");
    let e = endpoint_term(0.05);
    assert!((r - e).abs() <= 0.02 * e, "residual {r}, endpoint term {e}");
    let half = check_inversion_identity(&peaks, Point::ORIGIN, 30.0, 0.025, 512).unwrap();
    assert!(half <= 0.3 * r, "{r} -> {half}");
}

#[test]
fn kmax_truncation_is_below_the_k_quadrature_floor() {
    let peaks = builtin_example(3).unwrap();
    let e = endpoint_term(0.05);
    // fixed pseudo-random points in B_2(0)
    let zs = (0..10).map(|i| {
        let t = 2.399963229728653 * i as f64;
        let r = 2.0 * ((i as f64 + 0.5) / 10.0).sqrt();
        Point::new(r * t.cos(), r * t.sin())
    });
    for z in zs {
        for k_max in [15.0, 60.0] {
            let r = check_inversion_identity(&peaks, z, k_max, 0.05, 128).unwrap();
            assert!((r - e).abs() <= 0.05 * e, "z = {z:?}, k_max = {k_max}: {r} vs {e}");
        }
    }
}

#[test]
fn disk_error_concentrates_at_the_edge() {
    // With data truncated at k_max the indicator at the centre of a unit disk
    // is 1 - J0(k_max) up to the small k_min offset, so the interior error
    // is close to |J0(k_max)| rather than small.
    let disk = SourceModel::disk(Point::ORIGIN, 1.0, 1.0);
    let sensors = SensorArray::new(5.0, 60).unwrap();
    let k = WavenumberGrid::from_range(0.1, 30.0, 0.1).unwrap();
    let grid = SamplingGrid::square(1.5, 61).unwrap();
    let stats = theorem_residual(&disk, &sensors, &k, &grid, &QuadratureSpec::default(), None).unwrap();
    let (mut interior, mut edge) = (0.0f64, 0.0f64);
    for (p, e) in grid.nodes().zip(&stats.error_grid.values) {
        if p.norm() < 0.7 {
            interior = interior.max(*e);
        }
        if (p.norm() - 1.0).abs() < 0.05 {
            edge = edge.max(*e);
        }
    }
    let tail = bessel_j(0, 30.0).unwrap().abs();
    assert!(interior <= tail + 0.01, "interior {interior}, |J0(30)| = {tail}");
    assert!(edge >= 5.0 * interior, "edge {edge}, interior {interior}");
}

#[test]
fn peaks_noise_costs_less_than_double() {
    use radonsource::forward::{add_noise, synthesize, NoiseSpec};
    use radonsource::reconstruct::{indicator_grid, IndicatorConfig};
    use radonsource::sources::rasterize;
    use radonsource::verify::error_stats;

    let peaks = builtin_example(3).unwrap();
    let sensors = SensorArray::new(5.0, 60).unwrap();
    let k = WavenumberGrid::from_range(0.1, 30.0, 0.1).unwrap();
    let grid = SamplingGrid::square(3.0, 61).unwrap();
    let clean = synthesize(&peaks, &sensors, &k, &QuadratureSpec::new(256).unwrap()).unwrap();
    let noisy = add_noise(&clean, &NoiseSpec::new(0.2, 42).unwrap()).unwrap();
    let truth = rasterize(&peaks, &grid);
    let p95 = |t| {
        let rec = indicator_grid(t, &grid, &IndicatorConfig::default()).unwrap();
        error_stats(&rec, &truth).unwrap().percentile_95
    };
    let (c, n) = (p95(&clean), p95(&noisy));
    assert!(n < 2.0 * c, "clean {c}, noisy {n}");
}
