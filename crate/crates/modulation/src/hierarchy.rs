use std::collections::BTreeMap;

use tp_numerics::Complex64;

use crate::{enumerate_cubic, CubicTerm, DampingConvention, ModError, ModeIndex};

/// Truncation, damping convention, source coefficients and the cubic
/// matching tables of one hierarchy.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    order: u32,
    convention: DampingConvention,
    nu: Vec<Complex64>,
    cubic: BTreeMap<ModeIndex, Vec<CubicTerm>>,
}

impl Hierarchy {
    /// Order `n` in `4..=6` and source coefficients `ν_0, ν_1, …` (missing
    /// entries are zero, `ν_{-m} = conj(ν_m)`, `ν_0` must be real).
    pub fn new(order: u32, convention: DampingConvention, nu: &[Complex64]) -> Result<Self, ModError> {
        if !(4..=6).contains(&order) {
            return Err(ModError::Config(format!("order n = {order} outside 4..=6")));
        }
        if let Some(nu0) = nu.first() {
            if nu0.im.abs() > 1e-14 * nu0.norm().max(1.0) {
                return Err(ModError::Config(format!("ν_0 = {nu0} must be real")));
            }
        }
        let big_n = order - 1;
        let cubic = ModeIndex::all(big_n)
            .into_iter()
            .filter(|idx| idx.m >= 0)
            .map(|idx| (idx, enumerate_cubic(idx.m, idx.j, big_n)))
            .collect();
        Ok(Self { order, convention, nu: nu.to_vec(), cubic })
    }

    /// Order `n`; envelopes are kept up to level `N = n - 1`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Truncation `N = n - 1`.
    pub fn big_n(&self) -> u32 {
        self.order - 1
    }

    pub fn convention(&self) -> DampingConvention {
        self.convention
    }

    /// `ν_m` for any `m`.
    pub fn nu(&self, m: i32) -> Complex64 {
        let c = self.nu.get(m.unsigned_abs() as usize).copied().unwrap_or_default();
        if m < 0 {
            c.conj()
        } else {
            c
        }
    }

    /// Number of critical envelopes per sign, `N - 2`.
    pub fn critical_count(&self) -> u32 {
        self.big_n() - 2
    }

    /// Cubic monomials of `a_{mj}` (`m ≥ 0`; use conjugation otherwise).
    pub fn cubic_terms(&self, idx: ModeIndex) -> &[CubicTerm] {
        self.cubic.get(&idx).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Envelopes with `m ≥ 0` that are slaved to the critical ones, in the
    /// order in which the graph equations can be solved.
    pub fn slaved_indices(&self) -> Vec<ModeIndex> {
        let mut v: Vec<ModeIndex> =
            ModeIndex::all(self.big_n()).into_iter().filter(|i| i.m >= 0 && !i.is_critical()).collect();
        v.sort_by_key(|i| (i.level(), i.m, i.j));
        v
    }
}
