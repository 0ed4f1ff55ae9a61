//! The composed passage `Δ^in → Δ^mid (→ Δ^out)` through K1, K2 and K3.

use std::fmt;
use std::io::{self, Write};

use tp_modulation::{assemble_psi, solve_modulation, ChartId, Hierarchy, ModulationSet};
use tp_numerics::{hul_norm_default, Grid1D, SpectralField};

use crate::error::domain;
use crate::{k1_flow, k2_flow, k3_flow, kappa12, kappa23, ChartError, ChartState, SectionSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopAt {
    Mid,
    Out,
}

/// Where along the passage a row was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionTag {
    In,
    /// End of K1 (`ε₁ = ζ`), where the solution is handed to K2.
    K1Exit,
    Mid,
    Out,
    /// Intermediate sample inside a chart.
    Flow,
}

impl fmt::Display for SectionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SectionTag::In => "in",
            SectionTag::K1Exit => "k1_exit",
            SectionTag::Mid => "mid",
            SectionTag::Out => "out",
            SectionTag::Flow => "flow",
        })
    }
}

#[derive(Debug, Clone)]
pub struct PassageOptions {
    pub stop_at: StopAt,
    /// Chart-time step of the envelope solver.
    pub h: f64,
    /// Physical grid on which `Ψ` is assembled.
    pub fast: Grid1D,
    pub theta: u32,
    /// Intermediate rows per chart (0 for section rows only).
    pub samples_per_chart: usize,
}

impl PassageOptions {
    pub fn new(fast: Grid1D) -> Self {
        Self { stop_at: StopAt::Mid, h: 0.05, fast, theta: 1, samples_per_chart: 0 }
    }

    pub fn stop_at(mut self, stop: StopAt) -> Self {
        self.stop_at = stop;
        self
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.h = h;
        self
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.samples_per_chart = n;
        self
    }
}

#[derive(Debug, Clone)]
pub struct PassageRow {
    pub section: SectionTag,
    pub state: ChartState,
    /// Physical time since `Δ^in`.
    pub t_global: f64,
    pub v: f64,
    pub norm_theta: f64,
    pub mode1_abs: f64,
    /// Blown-down approximation `Ψ` on the fast grid.
    pub psi: SpectralField,
    /// Envelopes in the chart of `state`.
    pub set: ModulationSet,
}

#[derive(Debug, Clone)]
pub struct PassageRecord {
    pub eps: f64,
    pub sections: SectionSpec,
    pub rows: Vec<PassageRow>,
    /// Whether `‖ψ₁‖ ≤ K` held at `Δ^in`.
    pub within_k: bool,
}

impl PassageRecord {
    pub fn section(&self, tag: SectionTag) -> Option<&PassageRow> {
        self.rows.iter().find(|r| r.section == tag)
    }

    pub fn last(&self) -> &PassageRow {
        self.rows.last().expect("a passage always has rows")
    }
}

/// Runs the envelope cascade across the charts.
///
/// `init` holds the K1 envelopes at `Δ^in`; its samples are taken to sit at
/// the fast grid points, so its slow length is reset to `r₁* L_fast`. The
/// slow domain follows `r` in the same way at every row. This ignores the
/// slow-space transport generated by a moving `r`, which vanishes for
/// x-homogeneous envelopes.
pub fn full_passage(
    hier: &Hierarchy,
    init: &ModulationSet,
    eps: f64,
    sections: &SectionSpec,
    opts: &PassageOptions,
) -> Result<PassageRecord, ChartError> {
    sections.validate()?;
    if !(eps > 0.0 && eps <= sections.max_eps()) {
        return Err(domain(format!("need 0 < ε ≤ ρ_in²ζ = {}, got {eps}", sections.max_eps())));
    }
    let length = opts.fast.length();
    let row = |section, state: ChartState, t_global, set: &ModulationSet| {
        make_row(section, state, t_global, set, length, opts)
    };
    let samples = |t_end: f64| -> Vec<f64> {
        let n = opts.samples_per_chart;
        (1..=n).map(|i| t_end * i as f64 / (n + 1) as f64).collect()
    };
    let tag_of = |i: usize, n: usize, last: SectionTag| if i + 1 == n { last } else { SectionTag::Flow };

    // K1
    let r1_star = sections.rho_in.sqrt();
    let flow1 = k1_flow(eps / (sections.rho_in * sections.rho_in), sections.zeta, r1_star)?;
    let init = init.with_length(r1_star * length)?;
    let mut rows = vec![row(SectionTag::In, flow1.state(0.0), 0.0, &init)?];
    let traj = solve_modulation(hier, &init, flow1.state(0.0).point(), flow1.t1, opts.h, &samples(flow1.t1))?;
    let n = traj.times.len();
    for (i, (&t, set)) in traj.times.iter().zip(&traj.sets).enumerate() {
        rows.push(row(tag_of(i, n, SectionTag::K1Exit), flow1.state(t), flow1.global_time(t), set)?);
    }
    let t_k1 = flow1.global_time(flow1.t1);
    let exit1 = rows.last().expect("K1 rows");
    let (state2, set2) = kappa12(exit1.state.with_t_local(0.0), &exit1.set)?;
    let r2 = state2.radius();

    // K2
    let flow2 = k2_flow(sections.zeta, sections.rho_mid)?;
    let traj = solve_modulation(hier, &set2, state2.point(), flow2.t2, opts.h, &samples(flow2.t2))?;
    let n = traj.times.len();
    for (i, (&t, set)) in traj.times.iter().zip(&traj.sets).enumerate() {
        rows.push(row(tag_of(i, n, SectionTag::Mid), flow2.state(r2, t), t_k1 + flow2.global_time(r2, t), set)?);
    }
    if opts.stop_at == StopAt::Mid {
        let within_k = within_k(&rows[0], sections);
        return Ok(PassageRecord { eps, sections: *sections, rows, within_k });
    }

    // K3
    let t_k2 = t_k1 + flow2.global_time(r2, flow2.t2);
    let mid = rows.last().expect("K2 rows");
    let (state3, set3) = kappa23(mid.state.with_t_local(0.0), &mid.set)?;
    let ChartState::K3 { r3, eps3, .. } = state3 else { unreachable!("kappa23 lands in K3") };
    let flow3 = k3_flow(r3, eps3, sections.rho_out)?;
    let traj = solve_modulation(hier, &set3, state3.point(), flow3.t3, opts.h, &samples(flow3.t3))?;
    let n = traj.times.len();
    for (i, (&t, set)) in traj.times.iter().zip(&traj.sets).enumerate() {
        rows.push(row(tag_of(i, n, SectionTag::Out), flow3.state(t), t_k2 + flow3.global_time(t), set)?);
    }
    let within_k = within_k(&rows[0], sections);
    Ok(PassageRecord { eps, sections: *sections, rows, within_k })
}

fn make_row(
    section: SectionTag,
    state: ChartState,
    t_global: f64,
    set: &ModulationSet,
    length: f64,
    opts: &PassageOptions,
) -> Result<PassageRow, ChartError> {
    let r = state.radius();
    let set = set.with_length(r * length)?;
    let psi = assemble_psi(&set, r, opts.fast)?;
    Ok(PassageRow {
        section,
        state,
        t_global,
        v: state.blow_down().0,
        norm_theta: hul_norm_default(&psi, opts.theta),
        mode1_abs: psi.amplitude_at(1.0),
        psi,
        set,
    })
}

fn within_k(entry: &PassageRow, sections: &SectionSpec) -> bool {
    // ψ₁ = Ψ / r₁.
    entry.norm_theta / entry.state.radius() <= sections.k
}

pub const PASSAGE_CSV_HEADER: &str = "epsilon,section,t_global,v,r_chart,norm_theta,mode1_abs,chart_id";

fn chart_number(id: ChartId) -> u8 {
    match id {
        ChartId::K1 => 1,
        ChartId::K2 => 2,
        ChartId::K3 => 3,
    }
}

/// Writes the rows of several passages as one CSV table.
pub fn write_passage_csv(records: &[PassageRecord], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "{PASSAGE_CSV_HEADER}")?;
    for rec in records {
        for row in &rec.rows {
            writeln!(
                out,
                "{:e},{},{:e},{:e},{:e},{:e},{:e},{}",
                rec.eps,
                row.section,
                row.t_global,
                row.v,
                row.state.radius(),
                row.norm_theta,
                row.mode1_abs,
                chart_number(row.state.chart())
            )?;
        }
    }
    Ok(())
}
