use proptest::prelude::*;
use tp_charts::{k1_flow, k2_flow, k3_flow, ChartError, ChartState, SectionSpec};
use tp_numerics::quad::integrate;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn entry_chart_transition() {
    let f = k1_flow(0.1, 0.1, 1.0).unwrap();
    assert_eq!(f.t1, 0.0);

    let f = k1_flow(0.01, 0.1, 1.0).unwrap();
    assert!(rel(f.t1, 45.0) < 1e-14, "T1 = {}", f.t1);
    assert_eq!(f.eps1(f.t1), 0.1);
    let r_star: f64 = 0.8;
    let f = k1_flow(0.01, 0.1, r_star).unwrap();
    assert!(rel(f.r1(f.t1), r_star * 0.1f64.powf(0.25)) < 1e-14);

    assert!(matches!(k1_flow(0.2, 0.1, 1.0), Err(ChartError::Domain(_))));
    assert!(matches!(k1_flow(0.0, 0.1, 1.0), Err(ChartError::Domain(_))));
}

#[test]
fn rescaling_chart_transition() {
    let zeta: f64 = 0.1;
    let f = k2_flow(zeta, zeta.powf(-0.5)).unwrap();
    assert!((f.t2 - 6.324555320336759).abs() < 1e-12);
    assert_eq!(f.v2(0.0), -zeta.powf(-0.5));
    assert_eq!(f.v2(f.t2), zeta.powf(-0.5));
    assert!(k2_flow(0.0, 1.0).is_err());
}

#[test]
fn exit_chart_transition() {
    let f = k3_flow(0.5f64.sqrt(), 0.1, 0.5).unwrap();
    assert!(f.t3.abs() < 1e-15);

    let f = k3_flow(0.5, 0.1, 0.5).unwrap();
    assert!(rel(f.t3, 15.0) < 1e-14);
    assert_eq!(f.r3(f.t3), 0.5f64.sqrt());
    assert!(rel(f.eps3(f.t3), 0.1 * 0.0625 / 0.25) < 1e-14);

    assert!(matches!(k3_flow(0.9, 0.1, 0.5), Err(ChartError::Domain(_))));
}

#[test]
fn physical_time_matches_desingularised_quadrature() {
    let sec = SectionSpec::default();
    let eps = 2e-3;
    let f1 = k1_flow(eps / sec.rho_in.powi(2), sec.zeta, sec.rho_in.sqrt()).unwrap();
    let f2 = k2_flow(sec.zeta, sec.rho_mid).unwrap();
    let r2 = eps.powf(0.25);
    let r3 = r2 * sec.rho_mid.sqrt();
    let f3 = k3_flow(r3, 1.0 / sec.rho_mid.powi(2), sec.rho_out).unwrap();

    // t = ∫ r(s)^{-2} ds along each leg; v must then equal -ρ_in + ε t.
    let mut offset = 0.0;
    for frac in [0.0, 0.3, 0.7, 1.0] {
        let t = frac * f1.t1;
        let quad = integrate(|s| f1.r1(s).powi(-2), 0.0, t, 1e-12);
        assert!((f1.global_time(t) - quad).abs() <= 1e-9 * quad.max(1.0));
        let (v, e) = f1.state(t).blow_down();
        assert!(rel(e, eps) < 1e-13);
        assert!((v - (-sec.rho_in + eps * f1.global_time(t))).abs() < 1e-6);
    }
    offset += f1.global_time(f1.t1);
    for frac in [0.25, 1.0] {
        let t = frac * f2.t2;
        let (v, e) = f2.state(r2, t).blow_down();
        assert!(rel(e, eps) < 1e-13);
        assert!((v - (-sec.rho_in + eps * (offset + f2.global_time(r2, t)))).abs() < 1e-6);
    }
    offset += f2.global_time(r2, f2.t2);
    assert!(rel(offset, sec.t_mid(eps)) < 1e-9);
    for frac in [0.1, 0.5, 1.0] {
        let t = frac * f3.t3;
        let quad = integrate(|s| f3.r3(s).powi(-2), 0.0, t, 1e-12);
        assert!(rel(f3.global_time(t), quad) < 1e-9);
        let (v, e) = f3.state(t).blow_down();
        assert!(rel(e, eps) < 1e-13);
        assert!((v - (-sec.rho_in + eps * (offset + f3.global_time(t)))).abs() < 1e-6);
    }
    assert!(rel(offset + f3.global_time(f3.t3), sec.t_out(eps)) < 1e-9);
}

#[test]
fn section_defaults() {
    let s = SectionSpec::default();
    assert_eq!((s.rho_in, s.rho_out, s.zeta, s.k), (1.0, 0.5, 0.1, 0.1));
    assert!(rel(s.rho_mid, 0.1f64.powf(-0.5)) < 1e-15);
    assert!((s.delay_margin() - 0.5).abs() < 1e-15);
    assert!(SectionSpec { zeta: -1.0, ..s }.validate().is_err());
}

#[test]
fn chart_state_blow_down() {
    let s = ChartState::K2 { v2: -2.0, r2: 0.5, t: 0.0 };
    assert_eq!(s.blow_down(), (-0.5, 0.0625));
    assert_eq!(s.with_t_local(3.0).t_local(), 3.0);
}

proptest! {
    #[test]
    fn flows_conserve_eps(eps1 in 1e-4f64..0.1, frac in 0.0f64..1.0, r in 0.2f64..2.0) {
        let f = k1_flow(eps1, 0.1, r).unwrap();
        let t = frac * f.t1;
        prop_assert!(rel(f.r1(t).powi(4) * f.eps1(t), f.eps()) < 1e-14);

        let g = k3_flow(r.min(0.7), eps1, 0.5).unwrap();
        let t = frac * g.t3;
        prop_assert!(rel(g.r3(t).powi(4) * g.eps3(t), g.eps()) < 1e-14);
    }
}
