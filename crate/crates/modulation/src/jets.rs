use std::collections::HashMap;

use tp_numerics::{Complex64, ComplexField, Grid1D};

use crate::ops::invert_l0;
use crate::{ChartPoint, Hierarchy, ModError, ModeIndex, ModulationSet, ScalarJets};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Taylor coefficients in chart time of every envelope, given the critical
/// envelopes at one instant.
///
/// Coefficient `k` of a critical envelope is `RHS_{k-1} / k`, where the
/// right-hand side coefficients follow from Cauchy products of lower ones.
/// Slaved envelopes come from their graph equation order by order; the
/// `∂_t̄` inside `L̃²` is `(k+1)` times the next coefficient.
pub struct JetEngine<'h> {
    hier: &'h Hierarchy,
    point: ChartPoint,
    grid: Grid1D,
    scalars: ScalarJets,
    critical: Vec<ComplexField>,
    memo: HashMap<(ModeIndex, usize), ComplexField>,
}

impl<'h> JetEngine<'h> {
    /// `critical[j-1] = A_{1j}`.
    pub fn new(hier: &'h Hierarchy, point: ChartPoint, critical: Vec<ComplexField>) -> Result<Self, ModError> {
        if critical.len() != hier.critical_count() as usize {
            return Err(ModError::Config(format!(
                "order {} needs {} critical envelopes, got {}",
                hier.order(),
                hier.critical_count(),
                critical.len()
            )));
        }
        let grid = *critical[0].grid();
        if critical.iter().any(|f| *f.grid() != grid) {
            return Err(ModError::Config("critical envelopes live on different grids".into()));
        }
        Ok(Self {
            hier,
            point,
            grid,
            scalars: point.jets(2 * hier.order() as usize + 2),
            critical,
            memo: HashMap::new(),
        })
    }

    pub fn from_set(hier: &'h Hierarchy, point: ChartPoint, set: &ModulationSet) -> Result<Self, ModError> {
        Self::new(hier, point, set.critical())
    }

    fn ensure_scalars(&mut self, k: usize) {
        if self.scalars.eps.len() <= k {
            self.scalars = self.point.jets(2 * k + 2);
        }
    }

    fn weight(&self, idx: ModeIndex) -> f64 {
        self.hier.convention().weight(self.point.id(), idx.level(), idx.is_critical(), idx.j)
    }

    /// Coefficient `k` of `A_{mj}` (zero for envelopes that are not kept).
    pub fn coefficient(&mut self, idx: ModeIndex, k: usize) -> Result<ComplexField, ModError> {
        if !idx.is_valid(self.hier.big_n()) {
            return Ok(ComplexField::zeros(self.grid));
        }
        if idx.m < 0 {
            return Ok(self.coefficient(idx.conj(), k)?.conj());
        }
        if let Some(f) = self.memo.get(&(idx, k)) {
            return Ok(f.clone());
        }
        let value = if idx.is_critical() {
            if k == 0 {
                self.critical[idx.j as usize - 1].clone()
            } else {
                self.rhs(idx.j, k - 1)?.scaled(Complex64::new(1.0 / k as f64, 0.0))
            }
        } else {
            let s = self.graph_source(idx, k)?;
            invert_l0(idx.m, &s)?.scaled(Complex64::new(-1.0, 0.0))
        };
        self.memo.insert((idx, k), value.clone());
        Ok(value)
    }

    /// Coefficient `k` of the right-hand side of the `A_{1j}` equation.
    pub fn rhs(&mut self, j: u32, k: usize) -> Result<ComplexField, ModError> {
        let idx = ModeIndex::new(1, j);
        let x_k = self.coefficient(idx, k)?;
        let mut out = x_k.derivative(2).scaled(Complex64::new(4.0, 0.0));
        out = out.add_scaled(&self.damping_product(idx, k)?, Complex64::new(1.0, 0.0));
        Ok(out.add_scaled(&self.forcing(j, k)?, Complex64::new(1.0, 0.0)))
    }

    /// Coefficient `k` of the `A_{1j}` right-hand side without the diagonal
    /// part `4∂² + v̄ - cρ`: couplings to lower envelopes, the cubic term and
    /// the source.
    pub fn forcing(&mut self, j: u32, k: usize) -> Result<ComplexField, ModError> {
        let idx = ModeIndex::new(1, j);
        let mut out = ComplexField::zeros(self.grid);
        if j >= 2 {
            let lower = self.coefficient(ModeIndex::new(1, j - 1), k)?;
            out = out.add_scaled(&lower.derivative(3), Complex64::new(0.0, -4.0));
        }
        if j >= 3 {
            let lower = self.coefficient(ModeIndex::new(1, j - 2), k)?;
            out = out.add_scaled(&lower.derivative(4), Complex64::new(-1.0, 0.0));
        }
        out = out.add_scaled(&self.cubic(idx, k)?, Complex64::new(-1.0, 0.0));
        if idx.matching_order() == 4 {
            self.ensure_scalars(k);
            let nu = self.hier.nu(1) * self.scalars.eps[k];
            if nu != ZERO {
                out = out.add_scaled(&ComplexField::constant(self.grid, nu), Complex64::new(1.0, 0.0));
            }
        }
        Ok(out)
    }

    /// Coefficient `k` of `(v̄ - c ρ) X` for `X = A_idx`.
    fn damping_product(&mut self, idx: ModeIndex, k: usize) -> Result<ComplexField, ModError> {
        self.ensure_scalars(k);
        let c = self.weight(idx);
        let mut out = ComplexField::zeros(self.grid);
        for a in 0..=k {
            let s = self.scalars.v[a] - c * self.scalars.rate[a];
            if s != 0.0 {
                out = out.add_scaled(&self.coefficient(idx, k - a)?, Complex64::new(s, 0.0));
            }
        }
        Ok(out)
    }

    /// Coefficient `k` of `S` in the graph equation `L⁰ A_{mj} + S = 0`.
    fn graph_source(&mut self, idx: ModeIndex, k: usize) -> Result<ComplexField, ModError> {
        let (m, j) = (idx.m, idx.j);
        let mf = m as f64;
        let mut s = ComplexField::zeros(self.grid);
        let big_n = self.hier.big_n();
        let lower = |d: u32| ModeIndex::new(m, j.wrapping_sub(d));
        if j > 1 && lower(1).is_valid(big_n) {
            let x = self.coefficient(lower(1), k)?;
            s = s.add_scaled(&x.derivative(1), Complex64::new(0.0, -4.0 * mf * (1.0 - mf * mf)));
        }
        if j > 2 && lower(2).is_valid(big_n) {
            let x_idx = lower(2);
            let x_k = self.coefficient(x_idx, k)?;
            let x_next = self.coefficient(x_idx, k + 1)?;
            s = s
                .add_scaled(&x_next, Complex64::new(-((k + 1) as f64), 0.0))
                .add_scaled(&x_k.derivative(2), Complex64::new(-2.0 * (1.0 - 3.0 * mf * mf), 0.0))
                .add_scaled(&self.damping_product(x_idx, k)?, Complex64::new(1.0, 0.0));
        }
        if j > 3 && lower(3).is_valid(big_n) {
            let x = self.coefficient(lower(3), k)?;
            s = s.add_scaled(&x.derivative(3), Complex64::new(0.0, -4.0 * mf));
        }
        if j > 4 && lower(4).is_valid(big_n) {
            let x = self.coefficient(lower(4), k)?;
            s = s.add_scaled(&x.derivative(4), Complex64::new(-1.0, 0.0));
        }
        s = s.add_scaled(&self.cubic(idx, k)?, Complex64::new(-1.0, 0.0));
        if idx.matching_order() == 4 {
            self.ensure_scalars(k);
            let nu = self.hier.nu(m) * self.scalars.eps[k];
            if nu != ZERO {
                s = s.add_scaled(&ComplexField::constant(self.grid, nu), Complex64::new(1.0, 0.0));
            }
        }
        Ok(s)
    }

    /// Coefficient `k` of the cubic matching term `a_idx`.
    pub fn cubic(&mut self, idx: ModeIndex, k: usize) -> Result<ComplexField, ModError> {
        let terms = self.hier.cubic_terms(idx).to_vec();
        let mut out = ComplexField::zeros(self.grid);
        for term in terms {
            let [f1, f2, f3] = term.factors;
            for k1 in 0..=k {
                let a = self.coefficient(f1, k1)?;
                for k2 in 0..=k - k1 {
                    let b = self.coefficient(f2, k2)?;
                    let c = self.coefficient(f3, k - k1 - k2)?;
                    out = out.add_scaled(&a.mul(&b).mul(&c), Complex64::new(term.multiplicity as f64, 0.0));
                }
            }
        }
        Ok(out)
    }
}
