//! Command execution and artifact writing.

use std::fmt::Write as _;
use std::path::PathBuf;

use tp_charts::{full_passage, write_passage_csv, PassageOptions, StopAt};
use tp_modulation::{assemble_psi, derive_document, Hierarchy};
use tp_numerics::SpectralField;
use tp_sh::{
    integrate, random_band, write_observables_csv, write_snapshots, IntegrateOptions, SHParams, SHState, Snapshot,
};
use tp_validation::{
    compare_at_mid, delay_experiment, dynamic_error_experiment, mid_amplitude_check, min_full_eps, run_acceptance,
    CriterionResult, DelayConfig, DelayMode,
};

use crate::{CliError, Command, ExperimentSpec, RunManifest};

/// Writes into the output directory and remembers what it wrote.
struct Output {
    dir: PathBuf,
    files: Vec<String>,
}

impl Output {
    fn path(&mut self, name: &str) -> PathBuf {
        self.files.push(name.to_string());
        self.dir.join(name)
    }

    fn write(&mut self, name: &str, text: &str) -> Result<(), CliError> {
        let p = self.path(name);
        std::fs::write(p, text)?;
        Ok(())
    }
}

fn num(x: f64) -> String {
    format!("{x:.12e}")
}

/// `x,y` pairs for external plotting.
fn plot_data(points: impl IntoIterator<Item = (f64, f64)>) -> String {
    let mut s = String::from("x,y\n");
    for (x, y) in points {
        let _ = writeln!(s, "{},{}", num(x), num(y));
    }
    s
}

fn initial_field(spec: &ExperimentSpec) -> Result<SpectralField, CliError> {
    let setup = &spec.setup;
    let set = setup.entry_set(spec.order, spec.eps)?;
    let psi = assemble_psi(&set, setup.sections.rho_in.sqrt(), setup.fast)?;
    Ok(match perturbation(spec, &psi)? {
        Some(p) => psi.add_scaled(&p, 1.0),
        None => psi,
    })
}

fn perturbation(spec: &ExperimentSpec, psi: &SpectralField) -> Result<Option<SpectralField>, CliError> {
    if spec.perturbation > 0.0 {
        Ok(Some(random_band(spec.setup.fast, spec.perturbation * psi.max_abs(), spec.seed)?))
    } else {
        Ok(None)
    }
}

fn simulate(spec: &ExperimentSpec, out: &mut Output) -> Result<String, CliError> {
    let setup = &spec.setup;
    let sec = &setup.sections;
    let eps = spec.eps;
    let params = SHParams::new(eps, setup.source()?, setup.fast)?.with_log_tracking(true);
    let t_out = sec.t_out(eps);
    let every = ((t_out / setup.h_sh) / 2000.0).ceil().max(1.0) as usize;
    let mut opts = IntegrateOptions::new(t_out, setup.h_sh)
        .with_sections(vec![-sec.rho_in, sec.rho_mid * eps.sqrt(), sec.rho_out])
        .observe_every(every);
    opts.theta = setup.theta;
    let traj = integrate(&SHState::new(initial_field(spec)?, -sec.rho_in), &params, &opts)?;

    write_observables_csv(&out.path("simulate_observables.csv"), &traj.observations)?;
    let mut csv = String::from("section,v,t,hul_norm,mode1_abs,ln_max_abs\n");
    let names = ["in", "mid", "out"];
    for (name, hit) in names.iter().zip(&traj.sections) {
        let mode1 = hit.state.u.amplitude_at(1.0) * hit.state.log_scale.exp();
        let _ = writeln!(
            csv,
            "{name},{},{},{},{},{}",
            num(hit.v_section),
            num(hit.t),
            num(hit.hul_norm),
            num(mode1),
            num(hit.state.ln_max_abs())
        );
    }
    out.write("simulate_sections.csv", &csv)?;
    let snaps: Vec<Snapshot> =
        traj.sections.iter().map(|h| Snapshot { t: h.t, v: h.v_section, field: h.field() }).collect();
    write_snapshots(&out.path("simulate_snapshots.bin"), &snaps)?;
    out.files.push("simulate_snapshots.bin.json".into());
    out.write("simulate_plot.csv", &plot_data(traj.observations.iter().map(|o| (o.v, o.ln_max_abs))))?;
    Ok(format!("{} steps, ln max|u| at v = rho_out: {:.4}", traj.steps, traj.last.ln_max_abs()))
}

fn approx(spec: &ExperimentSpec, out: &mut Output) -> Result<String, CliError> {
    let setup = &spec.setup;
    let hier = setup.hierarchy(spec.order)?;
    let init = setup.entry_set(spec.order, spec.eps)?;
    let mut opts = PassageOptions::new(setup.fast).stop_at(StopAt::Out).with_step(setup.h_env).with_samples(20);
    opts.theta = setup.theta;
    let rec = full_passage(&hier, &init, spec.eps, &setup.sections, &opts)?;
    let mut buf = Vec::new();
    write_passage_csv(std::slice::from_ref(&rec), &mut buf)?;
    out.write("approx_passage.csv", &String::from_utf8_lossy(&buf))?;
    let points = rec.rows.iter().filter(|r| r.norm_theta > 0.0).map(|r| (r.v, r.norm_theta.ln()));
    out.write("approx_plot.csv", &plot_data(points))?;
    Ok(format!("{} rows, norm at Delta^out {:.4e}", rec.rows.len(), rec.last().norm_theta))
}

fn compare(spec: &ExperimentSpec, out: &mut Output) -> Result<String, CliError> {
    let setup = &spec.setup;
    let psi0 = assemble_psi(&setup.entry_set(spec.order, spec.eps)?, setup.sections.rho_in.sqrt(), setup.fast)?;
    let p = perturbation(spec, &psi0)?;
    let c = compare_at_mid(setup, spec.order, spec.eps, p.as_ref())?;
    let mut csv = String::from("eps,order,error,max_abs_u,max_abs_psi,mode1_u,mode1_psi\n");
    let _ = writeln!(
        csv,
        "{},{},{},{},{},{},{}",
        num(spec.eps),
        spec.order,
        num(c.error),
        num(c.u_mid.max_abs()),
        num(c.psi_mid.max_abs()),
        num(c.u_mid.amplitude_at(1.0)),
        num(c.psi_mid.amplitude_at(1.0))
    );
    out.write("compare.csv", &csv)?;
    let xs = setup.fast.points();
    out.write("compare_u_plot.csv", &plot_data(xs.iter().copied().zip(c.u_mid.to_physical())))?;
    out.write("compare_psi_plot.csv", &plot_data(xs.iter().copied().zip(c.psi_mid.to_physical())))?;
    Ok(format!("error at Delta^mid {:.4e}", c.error))
}

fn sweep_dynamic(spec: &ExperimentSpec, out: &mut Output) -> Result<String, CliError> {
    let rep = dynamic_error_experiment(&spec.setup, &spec.sweep_eps, spec.order, &spec.sweep_seeds)?;
    let f = &rep.fit;
    let mut csv = format!(
        "# claim: error at Delta^mid scales as eps^((n-2)/4) = eps^{}\n# fit: slope={},log_prefactor={},residual={}\n",
        (spec.order as f64 - 2.0) / 4.0,
        num(f.slope),
        num(f.log_prefactor),
        num(f.residual)
    );
    csv.push_str("eps,seed,error_exact,error_perturbed,gap_in,gap_mid\n");
    for p in &rep.paired {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            num(p.eps),
            p.seed,
            num(p.error_exact),
            num(p.error_perturbed),
            num(p.gap_in),
            num(p.gap_mid)
        );
    }
    out.write("sweep_dynamic.csv", &csv)?;
    out.write("sweep_dynamic_plot.csv", &plot_data(f.abscissa.iter().copied().zip(f.ordinate.iter().copied())))?;
    Ok(format!("slope {:.3}, fit residual {:.3}", f.slope, f.residual))
}

fn sweep_mid(spec: &ExperimentSpec, out: &mut Output) -> Result<String, CliError> {
    let table = mid_amplitude_check(&spec.setup, &spec.sweep_eps, spec.order)?;
    let mut csv = format!(
        "# claim: mode-1 amplitude at Delta^mid is eps^(1/2) times a constant when nu_1 != 0\n# prediction: ratio={}\n",
        num(table.prediction)
    );
    csv.push_str("eps,ln_mode1,ratio\n");
    for r in &table.rows {
        let _ = writeln!(csv, "{},{},{}", num(r.eps), num(r.ln_mode1), num(r.ratio));
    }
    out.write("sweep_mid.csv", &csv)?;
    out.write("sweep_mid_plot.csv", &plot_data(table.rows.iter().map(|r| (r.eps, r.ratio))))?;
    Ok(format!("spread between the two smallest eps {:.2}%", 100.0 * table.tail_spread().unwrap_or(f64::NAN)))
}

fn sweep_delay(spec: &ExperimentSpec, out: &mut Output) -> Result<String, CliError> {
    let full_eps: Vec<f64> = spec.sweep_eps.iter().copied().filter(|e| *e >= min_full_eps(spec.delay.rho_in)).collect();
    let mut records = delay_experiment(&full_eps, &spec.delay)?;
    let linear = DelayConfig { mode: DelayMode::LinearizedLog, ..spec.delay.clone() };
    records.extend(delay_experiment(&spec.sweep_eps, &linear)?);
    let modes = std::iter::repeat_n("full", full_eps.len()).chain(std::iter::repeat("linearized-log"));

    let mut csv = format!(
        "# claim: with mu = 0 the loss of stability is delayed to v_exit >= rho_in/sqrt(2 kappa_plus)\n# threshold={},initial_amplitude={}\n",
        num(spec.delay.threshold),
        num(spec.delay.initial_amplitude)
    );
    csv.push_str("eps,mode,v_exit,censored,kappa_minus\n");
    let mut plot = Vec::new();
    for (r, mode) in records.iter().zip(modes) {
        let v = r.v_exit.map_or_else(|| "nan".to_string(), num);
        let k = r.kappa_minus.map_or_else(|| "nan".to_string(), num);
        let _ = writeln!(csv, "{},{mode},{v},{},{k}", num(r.eps), r.censored);
        if mode == "full" {
            if let Some(v) = r.v_exit {
                plot.push((r.eps, v));
            }
        }
    }
    out.write("sweep_delay.csv", &csv)?;
    out.write("sweep_delay_plot.csv", &plot_data(plot))?;
    let censored = records.iter().filter(|r| r.censored).count();
    Ok(format!("{} records, {censored} censored", records.len()))
}

fn derive(spec: &ExperimentSpec, out: &mut Output) -> Result<String, CliError> {
    let hier = Hierarchy::new(spec.order, spec.setup.convention, &spec.setup.nu)?;
    let doc = derive_document(&hier);
    out.write(&format!("hierarchy_n{}.txt", spec.order), &doc)?;
    print!("{doc}");
    Ok(format!("order {}", spec.order))
}

/// Prints and writes the acceptance table; fails when any criterion fails.
fn verify(out: &mut Output) -> Result<String, CliError> {
    let results = run_acceptance();
    let mut csv = String::from("id,name,passed,seconds,detail\n");
    for r in &results {
        println!("{r}");
        let _ = writeln!(
            csv,
            "{},{},{},{:.3},\"{}\"",
            r.id,
            r.name,
            r.passed,
            r.elapsed.as_secs_f64(),
            r.detail.replace('"', "'")
        );
    }
    out.write("verify.csv", &csv)?;
    let failed: Vec<&CriterionResult> = results.iter().filter(|r| !r.passed).collect();
    if failed.is_empty() {
        Ok(format!("{} criteria passed", results.len()))
    } else {
        let ids: Vec<String> = failed.iter().map(|r| r.id.to_string()).collect();
        Err(CliError::Domain(format!("criteria {} failed", ids.join(", "))))
    }
}

/// Executes `spec` and writes its artifacts and `manifest.json` into
/// `spec.out_dir`. The manifest lists every sub-run, including failures.
pub fn run(spec: &ExperimentSpec) -> Result<RunManifest, CliError> {
    std::fs::create_dir_all(&spec.out_dir)?;
    let mut manifest = RunManifest::start(spec);
    let mut out = Output { dir: spec.out_dir.clone(), files: Vec::new() };
    match spec.command {
        Command::Simulate => manifest.record("simulate", simulate(spec, &mut out)),
        Command::Approx => manifest.record("approx", approx(spec, &mut out)),
        Command::Compare => manifest.record("compare", compare(spec, &mut out)),
        Command::Derive => manifest.record("derive", derive(spec, &mut out)),
        Command::Verify => manifest.record("acceptance", verify(&mut out)),
        Command::Sweep => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(spec.worker_count(spec.sweep_eps.len()))
                .build()
                .map_err(|e| CliError::Config(format!("cannot start workers: {e}")))?;
            pool.install(|| {
                manifest.record("dynamic", sweep_dynamic(spec, &mut out));
                manifest.record("mid", sweep_mid(spec, &mut out));
                manifest.record("delay", sweep_delay(spec, &mut out));
            });
        }
    }
    manifest.files = out.files;
    manifest.finish(&spec.out_dir)?;
    Ok(manifest)
}
