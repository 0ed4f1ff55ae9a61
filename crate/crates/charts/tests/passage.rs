use tp_charts::{
    full_passage, write_passage_csv, PassageOptions, PassageRecord, SectionSpec, SectionTag, StopAt, PASSAGE_CSV_HEADER,
};
use tp_modulation::{DampingConvention, Hierarchy, ModeIndex, ModulationSet};
use tp_numerics::{Complex64, ComplexField, Grid1D};

fn fast() -> Grid1D {
    Grid1D::new(2, 32).unwrap()
}

fn roll_data(order: u32, amplitude: f64) -> ModulationSet {
    let grid = Grid1D::with_length(4, 1.0).unwrap();
    let mut set = ModulationSet::zeros(order, grid);
    set.insert(ModeIndex::new(1, 1), ComplexField::constant(grid, Complex64::new(amplitude, 0.0))).unwrap();
    set
}

fn run(hier: &Hierarchy, init: &ModulationSet, eps: f64, stop: StopAt, samples: usize) -> PassageRecord {
    let opts = PassageOptions::new(fast()).stop_at(stop).with_step(0.05).with_samples(samples);
    full_passage(hier, init, eps, &SectionSpec::default(), &opts).unwrap()
}

#[test]
fn zero_data_without_source_stays_zero() {
    let hier = Hierarchy::new(5, DampingConvention::Exact, &[]).unwrap();
    let rec = run(&hier, &roll_data(5, 0.0), 1e-2, StopAt::Out, 2);
    assert!(rec.rows.iter().all(|r| r.norm_theta == 0.0 && r.mode1_abs == 0.0));
    let tags: Vec<SectionTag> = rec.rows.iter().map(|r| r.section).filter(|t| *t != SectionTag::Flow).collect();
    assert_eq!(tags, vec![SectionTag::In, SectionTag::K1Exit, SectionTag::Mid, SectionTag::Out]);
}

#[test]
fn passage_times_and_blow_down_are_consistent() {
    let hier = Hierarchy::new(4, DampingConvention::Exact, &[]).unwrap();
    let sec = SectionSpec::default();
    for eps in [2e-2, 4e-3] {
        let rec = run(&hier, &roll_data(4, 0.05), eps, StopAt::Out, 3);
        let mid = rec.section(SectionTag::Mid).unwrap();
        assert!((mid.t_global - sec.t_mid(eps)).abs() < 1e-9 * sec.t_mid(eps));
        assert!((rec.last().t_global - sec.t_out(eps)).abs() < 1e-9 * sec.t_out(eps));
        for row in &rec.rows {
            let (v, e) = row.state.blow_down();
            assert!((e - eps).abs() < 1e-12 * eps);
            assert!((v - (-sec.rho_in + eps * row.t_global)).abs() < 1e-6, "{:?}", row.section);
        }
        assert!((mid.v - sec.rho_mid * eps.sqrt()).abs() < 1e-12);
        assert!((rec.last().v - sec.rho_out).abs() < 1e-12);
    }
}

#[test]
fn symmetric_rolls_are_exponentially_small_at_exit() {
    let eps = 1e-3;
    let hier = Hierarchy::new(5, DampingConvention::Exact, &[]).unwrap();
    let rec = run(&hier, &roll_data(5, 0.1), eps, StopAt::Out, 0);
    let sec = SectionSpec::default();
    let entry = rec.section(SectionTag::In).unwrap().norm_theta;
    let exit = rec.last().norm_theta;
    assert!(exit > 0.0 && entry > 0.0);
    // ‖Ψ‖ at Δ^out stays below exp(-κ(ρ_in² - κ₊ρ_out²)/2ε) for κ = 0.8, κ₊ = 1.25.
    let bound = -0.8 * (sec.rho_in.powi(2) - 1.25 * sec.rho_out.powi(2)) / (2.0 * eps);
    assert!(exit.ln() < bound, "ln‖Ψ_out‖ = {}, bound {bound}", exit.ln());
    // The linear exponent is -(ρ_in² - ρ_out²)/2ε.
    let kappa = -(exit / entry).ln() * 2.0 * eps / (sec.rho_in.powi(2) - sec.rho_out.powi(2));
    assert!((0.8..1.1).contains(&kappa), "fitted κ = {kappa}");
}

#[test]
fn forced_rolls_scale_like_root_eps_at_mid_section() {
    let nu1 = Complex64::new(0.2, 0.1);
    let hier = Hierarchy::new(5, DampingConvention::Exact, &[Complex64::new(0.0, 0.0), nu1]).unwrap();
    let ratios: Vec<f64> = [4e-3, 1e-3, 2.5e-4]
        .iter()
        .map(|&eps| run(&hier, &roll_data(5, 0.05), eps, StopAt::Mid, 0).last().mode1_abs / eps.sqrt())
        .collect();
    assert!(ratios.iter().all(|r| *r > 0.0));
    let spread = |a: f64, b: f64| (a - b).abs() / b;
    assert!(spread(ratios[1], ratios[2]) < 0.2, "{ratios:?}");
    assert!(spread(ratios[1], ratios[2]) < spread(ratios[0], ratios[1]) + 1e-3, "{ratios:?}");
}

#[test]
fn csv_rows_are_deterministic() {
    let hier = Hierarchy::new(4, DampingConvention::Exact, &[]).unwrap();
    let a = run(&hier, &roll_data(4, 0.05), 1e-2, StopAt::Mid, 1);
    let b = run(&hier, &roll_data(4, 0.05), 1e-2, StopAt::Mid, 1);
    let (mut x, mut y) = (Vec::new(), Vec::new());
    write_passage_csv(std::slice::from_ref(&a), &mut x).unwrap();
    write_passage_csv(&[b], &mut y).unwrap();
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(PASSAGE_CSV_HEADER));
    assert_eq!(lines.count(), a.rows.len());
    assert!(text.contains(",mid,"));
}

#[test]
fn entry_beyond_chart_boundary_is_rejected() {
    let hier = Hierarchy::new(4, DampingConvention::Exact, &[]).unwrap();
    let opts = PassageOptions::new(fast());
    assert!(full_passage(&hier, &roll_data(4, 0.05), 0.5, &SectionSpec::default(), &opts).is_err());
}
