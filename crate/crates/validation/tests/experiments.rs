use proptest::prelude::*;
use tp_numerics::{hul_norm_default, Complex64, Grid1D};
use tp_sh::{random_band, roll};
use tp_validation::*;

fn grid() -> Grid1D {
    Grid1D::new(4, 64).unwrap()
}

#[test]
fn weighted_error_examples() {
    let psi = roll(grid(), 0.3).unwrap();
    assert_eq!(weighted_error(&psi, &psi, 0.5, 2.0, 1).unwrap(), 0.0);

    let unit = roll(grid(), 1.0).unwrap();
    let unit = unit.scaled(1.0 / hul_norm_default(&unit, 1));
    let r: f64 = 0.1;
    let u = psi.add_scaled(&unit, r * r);
    assert!((weighted_error(&u, &psi, r, 2.0, 1).unwrap() - 1.0).abs() < 1e-12);
    let plain = hul_norm_default(&u.sub(&psi), 1);
    assert_eq!(weighted_error(&u, &psi, r, 0.0, 1).unwrap(), plain);

    assert!(matches!(weighted_error(&u, &psi, 0.0, 2.0, 1), Err(ValidationError::Domain(_))));
    let other = roll(Grid1D::new(2, 64).unwrap(), 0.3).unwrap();
    assert!(matches!(weighted_error(&other, &psi, 0.5, 2.0, 1), Err(ValidationError::Config(_))));
}

#[test]
fn scaling_fit_guards() {
    assert!(ScalingFit::fit(&[0.1, 0.2, 0.3], &[1.0, 2.0, 3.0]).is_err());
    let dup = ScalingFit::fit(&[0.1, 0.1, 0.2, 0.3], &[1.0, 1.0, 2.0, 3.0]);
    assert!(matches!(dup, Err(ValidationError::Config(m)) if m.contains("degenerate abscissa")));
    assert!(ScalingFit::fit(&[0.1, 0.2, 0.3, 0.4], &[1.0, 0.0, 2.0, 3.0]).is_err());
    assert!(line_fit(&[1.0, 1.0], &[0.0, 1.0]).is_err());
}

#[test]
fn static_experiment_rejects_duplicate_delta() {
    let r = static_error_experiment(&StaticSetup::default(), &[0.2, 0.2, 0.1, 0.07], 4);
    assert!(matches!(r, Err(ValidationError::Config(m)) if m.contains("degenerate abscissa")));
    // δ must tile the slow domain with whole cells.
    assert!(static_error_experiment(&StaticSetup::default(), &[0.19, 0.15, 0.1, 0.07], 4).is_err());
}

#[test]
fn residual_ablation_falls_short_of_the_order() {
    let rs = [0.4, 0.3, 0.2, 0.15, 0.1];
    let setup = ResidualSetup::default();
    let leading = residual_order_experiment(&setup, &rs, 4, ResidualAnsatz::LeadingOnly).unwrap().fit;
    let full = residual_order_experiment(&setup, &rs, 4, ResidualAnsatz::Full).unwrap().fit;
    assert!((leading.slope - 3.0).abs() < 0.4, "ablation slope {}", leading.slope);
    assert!(leading.slope < full.slope - 0.5);
}

#[test]
fn delay_guards() {
    // A threshold below the initial norm exits immediately.
    for mode in [DelayMode::LinearizedLog, DelayMode::Full] {
        let cfg = DelayConfig { mode, threshold: 1e-4, ..Default::default() };
        let rec = delay_experiment(&[1e-2], &cfg).unwrap().remove(0);
        assert_eq!(rec.v_exit, Some(-1.0));
        assert!(!rec.censored);
    }
    // Full mode refuses ε that would underflow at the trough.
    let r = delay_experiment(&[1e-3], &DelayConfig::default());
    assert!(matches!(r, Err(ValidationError::Domain(_))));
    // An unreachable threshold is censored, not extrapolated.
    let cfg = DelayConfig { mode: DelayMode::LinearizedLog, threshold: 1e300, ..Default::default() };
    let rec = delay_experiment(&[1e-2], &cfg).unwrap().remove(0);
    assert!(rec.censored && rec.v_exit.is_none());
}

#[test]
fn linear_delay_is_symmetric_off_critical_too() {
    // Away from k = 1 the exit lies beyond ρ_in + 2(1-k²)².
    let cfg = DelayConfig { mode: DelayMode::LinearizedLog, k: 0.9, threshold: 1e-3, ..Default::default() };
    let rec = delay_experiment(&[1e-2], &cfg).unwrap().remove(0);
    let c = (1.0f64 - 0.81).powi(2);
    assert!((rec.v_exit.unwrap() - (1.0 + 2.0 * c)).abs() < 1e-12);
    assert!(linear_log_gain(0.9, 1.0, 1e-2, rec.v_exit.unwrap()).abs() < 1e-9);
}

#[test]
fn broken_symmetry_only_at_higher_order() {
    // With ν₁ = 0 the mode-1 response at Δ^mid vanishes relative to ε^{1/2}.
    let setup = PassageSetup {
        nu: vec![
            Complex64::new(2e-3, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1e-3, -1e-3),
            Complex64::new(1e-3, 0.0),
        ],
        ..Default::default()
    };
    let table = mid_amplitude_check(&setup, &[4e-3, 2e-3, 1e-3, 5e-4], 5).unwrap();
    let ratios: Vec<f64> = table.rows.iter().map(|r| r.ratio).collect();
    assert!(ratios.windows(2).all(|w| w[1] < 0.5 * w[0]), "{ratios:?}");
    assert!(ratios.iter().all(|r| *r < 1e-10));
    assert_eq!(table.prediction, 0.0);
}

#[test]
fn perturbed_start_is_attracted_and_orders_are_ordered() {
    let setup = PassageSetup::default();
    let rep = dynamic_error_experiment(&setup, &[4e-3, 3e-3, 2e-3, 1e-3], 5, &[7]).unwrap();
    for p in &rep.paired {
        assert!(p.error_perturbed >= p.error_exact);
        assert!(p.gap_mid < 1e-20 * p.gap_in, "{p:?}");
    }
    let low = compare_at_mid(&setup, 4, 2e-3, None).unwrap();
    let high = compare_at_mid(&setup, 5, 2e-3, None).unwrap();
    assert!(high.error < low.error);
}

#[test]
fn mid_comparison_starts_on_the_approximation() {
    let setup = PassageSetup::default();
    let c = compare_at_mid(&setup, 5, 4e-3, None).unwrap();
    let set = setup.entry_set(5, 4e-3).unwrap();
    let psi = tp_modulation::assemble_psi(&set, setup.sections.rho_in.sqrt(), setup.fast).unwrap();
    assert!(c.psi_in.sub(&psi).max_abs() < 1e-14);
    assert!(c.error < 1e-2 * c.u_mid.max_abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_power_laws_are_recovered(p in -3.0f64..6.0, c in 1e-3f64..1e3, x0 in 0.01f64..1.0) {
        let xs: Vec<f64> = (0..5).map(|i| x0 * 1.5f64.powi(i)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| c * x.powf(p)).collect();
        let fit = ScalingFit::fit(&xs, &ys).unwrap();
        prop_assert!((fit.slope - p).abs() < 1e-10);
        prop_assert!(fit.residual < 1e-10);
        prop_assert!((fit.log_prefactor - c.ln()).abs() < 1e-8);
    }

    #[test]
    fn weighted_error_scales_with_r(seed in 0u64..1000, r in 0.01f64..2.0, beta in 0.0f64..4.0) {
        let psi = roll(grid(), 0.2).unwrap();
        let noise = random_band(grid(), 0.05, seed).unwrap();
        let u = psi.add_scaled(&noise, 1.0);
        let plain = weighted_error(&u, &psi, 1.0, beta, 1).unwrap();
        let w = weighted_error(&u, &psi, r, beta, 1).unwrap();
        prop_assert!((w * r.powf(beta) - plain).abs() <= 1e-12 * plain);
    }

    #[test]
    fn linear_exit_solves_the_gain_equation(
        k in 0.5f64..1.5, rho in 0.2f64..2.0, eps in 1e-5f64..1e-1, ratio in 0.0f64..20.0,
    ) {
        let v = linear_exit(k, rho, eps, ratio);
        prop_assert!(v >= rho - 1e-12);
        let gain = linear_log_gain(k, rho, eps, v);
        prop_assert!((gain - ratio).abs() <= 1e-7 * (1.0 + ratio) / eps.min(1.0));
    }
}
