use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tp_numerics::{
    apply_propagator, dealiased_cube, hul_norm_default, spectral_derivative, to_modes, to_physical, Complex64,
    ComplexField, Grid1D, SpectralField,
};

fn sample(grid: &Grid1D, f: impl Fn(f64) -> f64) -> SpectralField {
    to_modes(*grid, &grid.points().iter().map(|&x| f(x)).collect::<Vec<_>>()).unwrap()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn dispersion(k: f64, v: f64) -> f64 {
    -(1.0 - k * k).powi(2) + v
}

/// Random real field with modes only up to `band` (in units of 1/P).
fn band_limited(grid: &Grid1D, band: i64, seed: u64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modes = vec![Complex64::new(0.0, 0.0); grid.n_points()];
    for j in 0..=band {
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        modes[grid.slot(j).unwrap()] = c;
        modes[grid.slot(-j).unwrap()] = c.conj();
    }
    modes[0].im = 0.0;
    SpectralField::from_modes(*grid, modes).unwrap()
}

#[test]
fn grid_validation() {
    assert!(Grid1D::new(4, 32).is_ok());
    assert!(Grid1D::new(4, 24).is_err());
    assert!(Grid1D::new(4, 16).is_err());
    assert!(Grid1D::new(0, 16).is_err());
    let g = Grid1D::new(4, 64).unwrap();
    assert!((g.length() - 8.0 * PI).abs() < 1e-14);
    assert!((g.wavenumber(g.slot(3).unwrap()) - 0.75).abs() < 1e-15);
}

#[test]
fn transforms_of_simple_fields() {
    let g = Grid1D::new(1, 16).unwrap();
    let one = sample(&g, |_| 1.0);
    assert!((one.mode(0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    assert!(one.modes().iter().skip(1).all(|c| c.norm() < 1e-15));
    let c = sample(&g, f64::cos);
    assert!((c.mode(1).re - 0.5).abs() < 1e-15 && (c.mode(-1).re - 0.5).abs() < 1e-15);
    assert!(to_modes(g, &[0.0; 5]).is_err());
}

#[test]
fn derivatives() {
    let g = Grid1D::new(2, 64).unwrap();
    let s = sample(&g, f64::sin);
    let ds = to_physical(&spectral_derivative(&s, 1));
    let cos: Vec<f64> = g.points().iter().map(|x| x.cos()).collect();
    assert!(max_diff(&ds, &cos) < 1e-10);

    let c = sample(&g, f64::cos);
    let lin = c.add_scaled(&spectral_derivative(&c, 2), 2.0).add_scaled(&spectral_derivative(&c, 4), 1.0);
    assert!(lin.max_abs() < 1e-10);
}

#[test]
fn propagator_examples() {
    let g = Grid1D::new(1, 32).unwrap();
    let roll = sample(&g, |x| 2.0 * x.cos());
    let same = apply_propagator(&roll, |k| Complex64::new(dispersion(k, 0.0) * 3.0, 0.0));
    assert!(!same.saturated);
    assert!(max_diff(&same.field.to_physical(), &roll.to_physical()) < 1e-13);

    let two = sample(&g, |x| 2.0 * (2.0 * x).cos());
    let damped = apply_propagator(&two, |k| Complex64::new(dispersion(k, 0.0), 0.0));
    assert!((damped.field.mode(2).re - (-9.0f64).exp()).abs() < 1e-16);

    let id = apply_propagator(&two, |_| Complex64::new(0.0, 0.0));
    assert_eq!(id.field.modes(), two.modes());

    let blown = apply_propagator(&two, |_| Complex64::new(1e4, 0.0));
    assert!(blown.saturated && blown.field.is_finite());
}

#[test]
fn cube_identities() {
    let g = Grid1D::new(1, 32).unwrap();
    let c = sample(&g, f64::cos);
    let want: Vec<f64> = g.points().iter().map(|x| 0.75 * x.cos() + 0.25 * (3.0 * x).cos()).collect();
    assert!(max_diff(&dealiased_cube(&c).to_physical(), &want) < 1e-14);
    let k = sample(&g, |_| 0.7);
    assert!((dealiased_cube(&k).mode(0).re - 0.343).abs() < 1e-15);
}

#[test]
fn cube_matches_oversampled_oracle() {
    let g = Grid1D::new(4, 128).unwrap();
    let f = band_limited(&g, 40, 3);
    let got = dealiased_cube(&f);

    // cube pointwise on a 4× grid, where u³ (band 120) is resolved exactly
    let fine = Grid1D::new(4, 512).unwrap();
    let mut modes = vec![Complex64::new(0.0, 0.0); 512];
    for j in -40i64..=40 {
        modes[fine.slot(j).unwrap()] = f.mode(j);
    }
    let cubed: Vec<f64> =
        SpectralField::from_modes(fine, modes).unwrap().to_physical().iter().map(|u| u.powi(3)).collect();
    let oracle = to_modes(fine, &cubed).unwrap();
    let scale = oracle.modes().iter().map(|c| c.norm()).fold(0.0, f64::max);
    for j in -63i64..=63 {
        assert!((got.mode(j) - oracle.mode(j)).norm() < 1e-12 * scale, "mode {j}");
    }
}

#[test]
fn hul_examples() {
    let g = Grid1D::new(2, 64).unwrap();
    assert_eq!(hul_norm_default(&SpectralField::zeros(g), 1), 0.0);
    let s = sample(&g, f64::sin);
    let want0 = (0.5 + 0.5 * 1f64.sin()).sqrt();
    assert!((hul_norm_default(&s, 0) - want0).abs() < 1e-3);
    assert!((hul_norm_default(&s, 1) - 1.0).abs() < 1e-3);
}

#[test]
fn complex_field_interpolation_is_exact_for_band_limited_data() {
    let g = Grid1D::with_length(32, 10.0).unwrap();
    let w = 2.0 * PI / 10.0;
    let f = ComplexField::from_fn(g, |x| Complex64::new((w * x).cos(), (3.0 * w * x).sin()));
    let xs = [0.123, 4.5, 9.99];
    for (x, v) in xs.iter().zip(f.interpolate(&xs)) {
        assert!((v - Complex64::new((w * x).cos(), (3.0 * w * x).sin())).norm() < 1e-13);
    }
    let d = f.derivative(1);
    let x = g.x(5);
    assert!((d.values()[5] - Complex64::new(-w * (w * x).sin(), 3.0 * w * (3.0 * w * x).cos())).norm() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn round_trip_and_symmetry(seed in any::<u64>(), periods in 1usize..6) {
        let g = Grid1D::with_resolution(periods, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<f64> = (0..g.n_points()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let f = to_modes(g, &xs).unwrap();
        prop_assert!(f.symmetry_defect() < 1e-15);
        prop_assert!(max_diff(&to_physical(&f), &xs) < 1e-12);
        for op in [spectral_derivative(&f, 3), dealiased_cube(&f), apply_propagator(&f, |k| Complex64::new(-k * k, k)).field] {
            prop_assert!(op.symmetry_defect() < 1e-12 * (1.0 + op.max_abs()));
        }
    }

    #[test]
    fn parseval(seed in any::<u64>()) {
        let g = Grid1D::new(3, 64).unwrap();
        let f = band_limited(&g, 20, seed);
        let u = f.to_physical();
        let direct: f64 = u.iter().map(|v| v * v).sum::<f64>() * g.dx();
        prop_assert!((f.energy() - direct).abs() <= 1e-10 * direct);
    }

    #[test]
    fn propagators_compose(seed in any::<u64>(), t1 in 0.0f64..2.0, t2 in 0.0f64..2.0, v in -1.0f64..1.0) {
        let g = Grid1D::new(2, 64).unwrap();
        let f = band_limited(&g, 12, seed);
        let p1 = |k: f64| Complex64::new(dispersion(k, v) * t1, 0.3 * k * t1);
        let p2 = |k: f64| Complex64::new(dispersion(k, v) * t2, 0.3 * k * t2);
        let twice = apply_propagator(&apply_propagator(&f, p1).field, p2).field;
        let once = apply_propagator(&f, |k| p1(k) + p2(k)).field;
        for (a, b) in twice.modes().iter().zip(once.modes()) {
            prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1e-300));
        }
    }

    #[test]
    fn hul_nondecreasing_in_theta(seed in any::<u64>()) {
        let g = Grid1D::new(2, 64).unwrap();
        let f = band_limited(&g, 10, seed);
        let norms: Vec<f64> = (0..=4).map(|t| hul_norm_default(&f, t)).collect();
        for w in norms.windows(2) {
            prop_assert!(w[0] <= w[1] * (1.0 + 1e-14));
        }
    }
}
