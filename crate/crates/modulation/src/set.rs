use std::collections::BTreeMap;

use tp_numerics::{ComplexField, Grid1D};

use crate::{ModError, ModeIndex};

/// Envelopes `A_{mj}` on a common slow grid, kept reality-paired:
/// `A_{-m,j} = conj(A_{mj})`.
#[derive(Debug, Clone)]
pub struct ModulationSet {
    order: u32,
    grid: Grid1D,
    fields: BTreeMap<ModeIndex, ComplexField>,
}

impl ModulationSet {
    /// All envelopes zero.
    pub fn zeros(order: u32, grid: Grid1D) -> Self {
        let fields = ModeIndex::all(order - 1).into_iter().map(|i| (i, ComplexField::zeros(grid))).collect();
        Self { order, grid, fields }
    }

    /// Zero set with the given critical envelopes `A_{1,1}, A_{1,2}, …`.
    pub fn from_critical(order: u32, critical: &[ComplexField]) -> Result<Self, ModError> {
        let grid = match critical.first() {
            Some(f) => *f.grid(),
            None => return Err(ModError::Config("no critical envelopes given".into())),
        };
        let mut set = Self::zeros(order, grid);
        for (j, f) in critical.iter().enumerate() {
            set.insert(ModeIndex::new(1, j as u32 + 1), f.clone())?;
        }
        Ok(set)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    /// Sets `A_{mj}` and its conjugate partner.
    pub fn insert(&mut self, idx: ModeIndex, field: ComplexField) -> Result<(), ModError> {
        if !idx.is_valid(self.order - 1) {
            return Err(ModError::Config(format!("{idx} is not kept at order {}", self.order)));
        }
        if *field.grid() != self.grid {
            return Err(ModError::Config(format!("{idx} lives on a different slow grid")));
        }
        if idx.m != 0 {
            self.fields.insert(idx.conj(), field.conj());
            self.fields.insert(idx, field);
        } else {
            // A_{0j} is real by the pairing.
            let mut f = field;
            for c in f.values_mut() {
                c.im = 0.0;
            }
            self.fields.insert(idx, f);
        }
        Ok(())
    }

    pub fn get(&self, idx: ModeIndex) -> Option<&ComplexField> {
        self.fields.get(&idx)
    }

    /// `A_{1j}` for `j = 1..=N-2`.
    pub fn critical(&self) -> Vec<ComplexField> {
        let count = self.order.saturating_sub(3);
        (1..=count).map(|j| self.fields[&ModeIndex::new(1, j)].clone()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModeIndex, &ComplexField)> {
        self.fields.iter()
    }

    /// Largest `|A_{-m,j} - conj(A_{mj})|`.
    pub fn reality_defect(&self) -> f64 {
        self.fields
            .iter()
            .map(|(idx, f)| {
                let partner = &self.fields[&idx.conj()];
                f.values().iter().zip(partner.values()).map(|(a, b)| (a - b.conj()).norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.fields.values().all(ComplexField::is_finite)
    }

    /// The same envelopes viewed on a slow domain of a different length.
    pub fn with_length(&self, length: f64) -> Result<Self, ModError> {
        let fields =
            self.fields.iter().map(|(i, f)| Ok((*i, f.with_length(length)?))).collect::<Result<_, ModError>>()?;
        Ok(Self { order: self.order, grid: Grid1D::with_length(self.grid.n_points(), length)?, fields })
    }

    /// Every envelope multiplied by `factor(level)`.
    pub fn scaled_by_level(&self, factor: impl Fn(u32) -> f64) -> Self {
        let fields = self
            .fields
            .iter()
            .map(|(i, f)| (*i, f.scaled(tp_numerics::Complex64::new(factor(i.level()), 0.0))))
            .collect();
        Self { order: self.order, grid: self.grid, fields }
    }
}
