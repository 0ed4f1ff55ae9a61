//! The acceptance suite: ten checks, each reduced to a pass/fail verdict
//! with a one-line account of the measured numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use tp_charts::{
    full_passage, k1_flow, k3_flow, kappa12, kappa21, kappa23, kappa32, ChartState, PassageOptions, SectionSpec, StopAt,
};
use tp_modulation::{
    enumerate_cubic, gl_graph_eval, ChartPoint, DampingConvention, Hierarchy, ModeIndex, ModulationSet,
};
use tp_numerics::{gamma_window_integral, quad, Complex64, ComplexField, Grid1D};
use tp_sh::dispersion;

use crate::{
    compare_at_mid, delay_experiment, dynamic_error_experiment, mid_amplitude_check, residual_order_experiment,
    static_error_experiment, DelayConfig, DelayMode, PassageSetup, ResidualAnsatz, ResidualSetup, ScalingFit,
    StaticSetup, ValidationError,
};

/// Largest RMS misfit, in natural-log units, accepted for any fit.
pub const MAX_FIT_RESIDUAL: f64 = 0.15;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {:>2} {:<28} {:>8.2?}  {}", self.id, self.name, self.elapsed, self.detail)
    }
}

type Check = Result<(bool, String), ValidationError>;

fn timed(id: u8, name: &'static str, check: impl FnOnce() -> Check) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = match check() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, name, passed, detail, elapsed: start.elapsed() }
}

fn fit_ok(fit: &ScalingFit) -> bool {
    fit.residual < MAX_FIT_RESIDUAL
}

/// `λ(±1, 0) = 0` and `λ(k, 0) < 0` at every other resolved wavenumber.
pub fn dispersion_sanity() -> CriterionResult {
    timed(1, "dispersion", || {
        let grid = Grid1D::new(16, 512)?;
        let at_critical = dispersion(1.0, 0.0) == 0.0 && dispersion(-1.0, 0.0) == 0.0;
        let mut worst = f64::NEG_INFINITY;
        for k in grid.wavenumbers() {
            if (k.abs() - 1.0).abs() > 1e-12 {
                worst = worst.max(dispersion(k, 0.0));
            }
        }
        Ok((at_critical && worst < 0.0, format!("λ(±1,0) = 0: {at_critical}, max λ(k≠±1,0) = {worst:.3e}")))
    })
}

/// Every ordered product of three truncated-series terms, collected by
/// `(level, m)` into multisets of factors with counts.
fn cubic_oracle(big_n: u32) -> BTreeMap<(u32, i32), BTreeMap<[ModeIndex; 3], u32>> {
    let all = ModeIndex::all(big_n);
    let mut out: BTreeMap<(u32, i32), BTreeMap<[ModeIndex; 3], u32>> = BTreeMap::new();
    for a in &all {
        for b in &all {
            for c in &all {
                let mut key = [*a, *b, *c];
                key.sort();
                *out.entry((a.level() + b.level() + c.level(), a.m + b.m + c.m))
                    .or_default()
                    .entry(key)
                    .or_default() += 1;
            }
        }
    }
    out
}

fn term_list(m: i32, j: u32, big_n: u32) -> Vec<(Vec<(i32, u32)>, u32)> {
    enumerate_cubic(m, j, big_n)
        .iter()
        .map(|t| (t.factors.iter().map(|f| (f.m, f.j)).collect(), t.multiplicity))
        .collect()
}

/// Leading cubic coefficients, the order-4 graph, and the enumerator
/// against brute-force expansion for `N ≤ 6`.
pub fn hierarchy_golden_values() -> CriterionResult {
    timed(2, "hierarchy golden values", || {
        let a11 = term_list(1, 1, 3) == vec![(vec![(-1, 1), (1, 1), (1, 1)], 3)];
        let a12 = term_list(1, 2, 4) == vec![(vec![(-1, 1), (1, 1), (1, 2)], 6), (vec![(-1, 2), (1, 1), (1, 1)], 3)];

        let grid = Grid1D::with_length(16, 4.0 * std::f64::consts::PI)?;
        let amp = ComplexField::from_fn(grid, |x| Complex64::new(0.3 + 0.1 * (x / 2.0).cos(), 0.2 * (x / 2.0).sin()));
        let hier = Hierarchy::new(4, DampingConvention::Exact, &[])?;
        let set = gl_graph_eval(
            &hier,
            &ModulationSet::from_critical(4, std::slice::from_ref(&amp))?,
            ChartPoint::K2 { v2: 0.3 },
        )?;
        let zero = [(0, 1), (2, 1), (-2, 1)]
            .iter()
            .all(|&(m, j)| set.get(ModeIndex::new(m, j)).is_some_and(|f| f.max_abs() == 0.0));
        let cube = amp.mul(&amp).mul(&amp).scaled(Complex64::new(-1.0 / 64.0, 0.0));
        let dev = |idx: ModeIndex, want: &ComplexField| {
            set.get(idx).map_or(f64::INFINITY, |f| f.add_scaled(want, Complex64::new(-1.0, 0.0)).max_abs())
        };
        let a31 = dev(ModeIndex::new(3, 1), &cube).max(dev(ModeIndex::new(-3, 1), &cube.conj()));

        let mut mismatches = 0usize;
        let mut checked = 0usize;
        for big_n in 3..=6 {
            let oracle = cubic_oracle(big_n);
            for idx in ModeIndex::all(big_n) {
                let got: BTreeMap<[ModeIndex; 3], u32> =
                    enumerate_cubic(idx.m, idx.j, big_n).into_iter().map(|t| (t.factors, t.multiplicity)).collect();
                let want = oracle.get(&(idx.matching_order(), idx.m)).cloned().unwrap_or_default();
                checked += 1;
                mismatches += usize::from(got != want);
            }
        }
        let passed = a11 && a12 && zero && a31 < 1e-15 && mismatches == 0;
        Ok((
            passed,
            format!(
                "a11 {a11}, a12 {a12}, A01=A±21=0 {zero}, |A±31+A11³/64| = {a31:.1e}, enumerator {}/{checked} match",
                checked - mismatches
            ),
        ))
    })
}

/// Residual norms of the order-4 and order-5 ansatz scale as `r^n`.
pub fn residual_order() -> CriterionResult {
    timed(3, "residual order", || {
        let setup = ResidualSetup::default();
        let rs = [0.4, 0.3, 0.2, 0.15, 0.1];
        let mut passed = true;
        let mut parts = Vec::new();
        for n in [4u32, 5] {
            let fit = residual_order_experiment(&setup, &rs, n, ResidualAnsatz::Full)?.fit;
            passed &= (fit.slope - n as f64).abs() <= 0.4 && fit_ok(&fit);
            parts.push(format!("n={n} slope {:.3} (res {:.3})", fit.slope, fit.residual));
        }
        let ablation = residual_order_experiment(&setup, &rs, 4, ResidualAnsatz::LeadingOnly)?.fit;
        parts.push(format!("A11 only slope {:.3}", ablation.slope));
        Ok((passed, parts.join(", ")))
    })
}

/// Errors of the static approximations over `[0, 1/δ²]`.
pub fn static_validity() -> CriterionResult {
    timed(4, "static validity", || {
        let rep = static_error_experiment(&StaticSetup::default(), &[0.2, 0.15, 0.1, 0.07], 4)?;
        let passed = rep.fit_gl.slope >= 1.3 && rep.fit_n.slope >= 1.6 && fit_ok(&rep.fit_gl) && fit_ok(&rep.fit_n);
        Ok((
            passed,
            format!(
                "ψ_GL slope {:.3} (res {:.3}), ψ_4 slope {:.3} (res {:.3})",
                rep.fit_gl.slope, rep.fit_gl.residual, rep.fit_n.slope, rep.fit_n.residual
            ),
        ))
    })
}

/// Error at the mid section of the order-5 passage scales as `ε^{3/4}`
/// within ±0.3.
pub fn dynamic_validity() -> CriterionResult {
    timed(5, "dynamic validity", || {
        let setup = PassageSetup::default();
        let eps = [4e-3, 2e-3, 1e-3, 5e-4];
        let rep = dynamic_error_experiment(&setup, &eps, 5, &[11, 12])?;
        let passed = (rep.fit.slope - 0.75).abs() <= 0.3 && fit_ok(&rep.fit);
        let attracted = rep.paired.iter().all(|p| p.error_perturbed >= p.error_exact && p.gap_mid < p.gap_in);
        let lower = eps
            .iter()
            .zip(&rep.fit.ordinate)
            .map(|(&e, &err5)| Ok(compare_at_mid(&setup, 4, e, None)?.error >= err5))
            .collect::<Result<Vec<bool>, ValidationError>>()?
            .into_iter()
            .all(|b| b);
        Ok((
            passed,
            format!(
                "slope {:.3} (res {:.3}); perturbations attracted {attracted}; error(n=5) ≤ error(n=4) {lower}",
                rep.fit.slope, rep.fit.residual
            ),
        ))
    })
}

/// Forced rolls of size `ε^{1/2}` at the mid section, and exponential
/// smallness without forcing.
pub fn mid_section_rolls() -> CriterionResult {
    timed(6, "mid-section rolls", || {
        let eps = [4e-3, 2e-3, 1e-3, 5e-4];
        let forced = PassageSetup::default();
        let table = mid_amplitude_check(&forced, &eps, 5)?;
        let spread = table.tail_spread().unwrap_or(f64::INFINITY);

        let unforced = PassageSetup { nu: Vec::new(), ..forced.clone() };
        let decay = mid_amplitude_check(&unforced, &eps, 5)?.decay_fit()?;
        let kappa = -2.0 * decay.slope / unforced.sections.rho_in.powi(2);

        let passed = spread < 0.2 && decay.slope < 0.0 && decay.rms < MAX_FIT_RESIDUAL;
        let last = table.rows.last().map_or(f64::NAN, |r| r.ratio);
        Ok((
            passed,
            format!(
                "ratio spread {:.2}% (ratio {last:.4}, linear prediction {:.4}); ν≡0: ln-slope in 1/ε {:.4} (κ = {kappa:.4}, rms {:.1e})",
                100.0 * spread,
                table.prediction,
                decay.slope,
                decay.rms
            ),
        ))
    })
}

/// Symmetric crossing of the linear mode: `v_exit = ρ_in` exactly.
pub fn linear_delay() -> CriterionResult {
    timed(7, "delay, linear oracle", || {
        let cfg = DelayConfig {
            mode: DelayMode::LinearizedLog,
            threshold: 1e-3,
            initial_amplitude: 1e-3,
            ..Default::default()
        };
        let recs = delay_experiment(&[1e-2, 2e-3, 1e-4, 1e-6], &cfg)?;
        let worst = recs.iter().map(|r| r.v_exit.map_or(f64::INFINITY, |v| (v - cfg.rho_in).abs())).fold(0.0, f64::max);
        Ok((worst <= 1e-10, format!("max |v_exit - ρ_in| = {worst:.1e}")))
    })
}

/// Delay of the full equation with `μ ≡ 0`.
pub fn full_delay() -> CriterionResult {
    timed(8, "delay, full system", || {
        let cfg = DelayConfig::default();
        let rec = delay_experiment(&[2e-3], &cfg)?.remove(0);
        let kappa = rec.kappa_minus.unwrap_or(f64::NAN);
        let v_exit = rec.v_exit.unwrap_or(f64::NAN);
        let passed = kappa > 0.5 && kappa < 1.1 && v_exit >= 0.55;
        Ok((passed, format!("κ₋ = {kappa:.4}, v_exit = {v_exit:.4} (censored {})", rec.censored)))
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn sample_set(r: f64, seed: f64) -> Result<ModulationSet, ValidationError> {
    let grid = Grid1D::with_length(8, r * 4.0 * std::f64::consts::TAU)?;
    let q = std::f64::consts::TAU / grid.length();
    let mut set = ModulationSet::zeros(5, grid);
    for idx in ModeIndex::all(4).into_iter().filter(|i| i.m >= 0) {
        let a = 0.3 + 0.1 * (seed * (idx.m as f64 + 1.0) + idx.j as f64).sin();
        let b = if idx.m == 0 { 0.0 } else { 0.2 * (seed + idx.j as f64).cos() };
        set.insert(idx, ComplexField::from_fn(grid, |x| Complex64::new(a + 0.1 * (q * x).cos(), b)))?;
    }
    Ok(set)
}

fn set_rel_diff(a: &ModulationSet, b: &ModulationSet) -> f64 {
    a.iter()
        .flat_map(|(idx, fa)| {
            let fb = b.get(*idx).map(|f| f.values().to_vec()).unwrap_or_default();
            fa.values().iter().zip(fb).map(|(x, y)| (x - y).norm() / x.norm().max(1e-300)).collect::<Vec<_>>()
        })
        .fold(0.0, f64::max)
}

/// Conservation of `ε`, chart round trips, and blow-down consistency.
pub fn chart_machinery() -> CriterionResult {
    timed(9, "chart machinery", || {
        let mut conservation: f64 = 0.0;
        for &e in &[1e-4, 1e-3, 1e-2, 0.05, 0.099] {
            for &r in &[0.2, 0.7, 1.0, 1.9] {
                let f = k1_flow(e, 0.1, r)?;
                let g = k3_flow(r.min(0.7), e, 0.5)?;
                for i in 0..=8 {
                    let s = i as f64 / 8.0;
                    conservation = conservation.max(rel(f.r1(s * f.t1).powi(4) * f.eps1(s * f.t1), f.eps()));
                    conservation = conservation.max(rel(g.r3(s * g.t3).powi(4) * g.eps3(s * g.t3), g.eps()));
                }
            }
        }

        let mut round_trip: f64 = 0.0;
        for (i, &r) in [0.05, 0.3, 0.9, 1.4].iter().enumerate() {
            for &e in &[1e-3, 0.1, 1.0, 1.9] {
                let set = sample_set(r, i as f64 + e)?;
                let (s2, set2) = kappa12(ChartState::K1 { r1: r, eps1: e, t: 0.7 }, &set)?;
                let (back, set_back) = kappa21(s2, &set2)?;
                round_trip = round_trip.max(rel(back.radius(), r)).max(set_rel_diff(&set, &set_back));
                let (s2, set2) = kappa32(ChartState::K3 { r3: r, eps3: e, t: 0.0 }, &set)?;
                let (back, set_back) = kappa23(s2, &set2)?;
                round_trip = round_trip.max(rel(back.radius(), r)).max(set_rel_diff(&set, &set_back));
            }
        }

        let hier = Hierarchy::new(4, DampingConvention::Exact, &[])?;
        let sec = SectionSpec::default();
        let grid = Grid1D::with_length(4, 1.0)?;
        let init = ModulationSet::from_critical(4, &[ComplexField::constant(grid, Complex64::new(0.05, 0.0))])?;
        let mut blow_down: f64 = 0.0;
        for eps in [2e-2, 4e-3] {
            let opts = PassageOptions::new(Grid1D::new(1, 32)?).stop_at(StopAt::Out).with_samples(3);
            let rec = full_passage(&hier, &init, eps, &sec, &opts)?;
            for row in &rec.rows {
                let (v, e) = row.state.blow_down();
                blow_down = blow_down.max((v - (-sec.rho_in + eps * row.t_global)).abs()).max(rel(e, eps));
            }
        }
        let passed = conservation <= 1e-14 && round_trip <= 1e-12 && blow_down <= 1e-6;
        Ok((
            passed,
            format!(
                "ε conservation {conservation:.1e}, κ round trip {round_trip:.1e}, blow-down/global time {blow_down:.1e}"
            ),
        ))
    })
}

/// `∫_0^t e^{-αs}(1+βs)^{-γ} ds` in closed form against adaptive
/// quadrature on the 5×5×5 parameter grid, and monotone in `t`.
pub fn special_functions() -> CriterionResult {
    timed(10, "special functions", || {
        let alphas = [0.0, 0.5, 1.0, 2.0, 5.0];
        let betas = [-0.05, -0.01, 0.0, 0.01, 0.05];
        let gammas = [-1.0, -0.5, 0.0, 0.5, 0.75];
        let mut worst: f64 = 0.0;
        let mut monotone = true;
        for &a in &alphas {
            for &b in &betas {
                for &g in &gammas {
                    let t_max = if b < 0.0 { 0.95 / f64::abs(b) } else { 20.0 };
                    let mut prev = 0.0;
                    for i in 1..=5 {
                        let t = t_max * i as f64 / 5.0;
                        let got = gamma_window_integral(a, b, g, t)?;
                        let want = quad::integrate(|s| (-a * s).exp() * (1.0 + b * s).powf(-g), 0.0, t, 1e-13);
                        worst = worst.max(rel(got, want));
                        monotone &= got >= prev - 1e-14 * got;
                        prev = got;
                    }
                }
            }
        }
        Ok((worst <= 1e-9 && monotone, format!("max relative deviation {worst:.1e}, monotone in t {monotone}")))
    })
}

/// Every criterion in order.
pub fn run_acceptance() -> Vec<CriterionResult> {
    vec![
        dispersion_sanity(),
        hierarchy_golden_values(),
        residual_order(),
        static_validity(),
        dynamic_validity(),
        mid_section_rolls(),
        linear_delay(),
        full_delay(),
        chart_machinery(),
        special_functions(),
    ]
}
