use std::fmt;

use crate::ModError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChartId {
    /// Entry chart, `v = -r₁²`, `ε = r₁⁴ ε₁`.
    K1,
    /// Rescaling chart, `v = r₂² v₂`, `ε = r₂⁴`.
    K2,
    /// Exit chart, `v = r₃²`, `ε = r₃⁴ ε₃`.
    K3,
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChartId::K1 => "K1",
            ChartId::K2 => "K2",
            ChartId::K3 => "K3",
        };
        f.write_str(s)
    }
}

/// How the time derivative of `r^ℓ` is charged to an envelope of level `ℓ`.
///
/// Differentiating `r^ℓ A` in chart time gives `r^ℓ (∂A + ℓ ρ A)` with
/// `ρ = r⁻¹ ∂r`, so the damping of a level-`ℓ` envelope carries `ℓ ρ`.
/// [`DampingConvention::AsPrinted`] instead charges a single `ρ` to every
/// envelope and uses `v̄ + ρ` in the leading K3 equation, reproducing the
/// coefficients `-1 + ε₁/2`, `v₂`, `1 - ε₃/2` (and `1 + ε₃/2` for the leading
/// K3 row) found in the reference derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DampingConvention {
    #[default]
    Exact,
    AsPrinted,
}

impl DampingConvention {
    /// Weight `c` in the damping `v̄ - c ρ` of envelope `(m, j)` with level `ℓ`.
    pub fn weight(&self, chart: ChartId, level: u32, critical: bool, j: u32) -> f64 {
        match self {
            DampingConvention::Exact => level as f64,
            DampingConvention::AsPrinted => {
                if chart == ChartId::K3 && critical && j == 1 {
                    -1.0
                } else {
                    1.0
                }
            }
        }
    }
}

/// Position along a chart flow, which fixes every chart scalar.
///
/// The flows are explicit: in K1 `ε₁' = 2ε₁²`, in K2 `v₂' = 1`, in K3
/// `ε₃' = -2ε₃²`. `ρ = r⁻¹ ∂r` equals `-ε₁/2`, `0`, `ε₃/2` respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartPoint {
    K1 {
        eps1: f64,
    },
    K2 {
        v2: f64,
    },
    K3 {
        eps3: f64,
    },
    /// Static problem `ε = 0` with fixed `v = r² v₂`: K2 geometry without
    /// drift or source.
    Static {
        v2: f64,
    },
}

/// Taylor coefficients in chart time of `ε̄`, `v̄` and `ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarJets {
    pub eps: Vec<f64>,
    pub v: Vec<f64>,
    pub rate: Vec<f64>,
}

impl ChartPoint {
    pub fn id(&self) -> ChartId {
        match self {
            ChartPoint::K1 { .. } => ChartId::K1,
            ChartPoint::K2 { .. } | ChartPoint::Static { .. } => ChartId::K2,
            ChartPoint::K3 { .. } => ChartId::K3,
        }
    }

    /// Source prefactor `ε̄` (`ε₁`, `1`, `ε₃`; `0` when static).
    pub fn eps_bar(&self) -> f64 {
        match *self {
            ChartPoint::Static { .. } => 0.0,
            ChartPoint::K1 { eps1 } => eps1,
            ChartPoint::K2 { .. } => 1.0,
            ChartPoint::K3 { eps3 } => eps3,
        }
    }

    /// `v̄` (`-1`, `v₂`, `1`).
    pub fn v_bar(&self) -> f64 {
        match *self {
            ChartPoint::K1 { .. } => -1.0,
            ChartPoint::K2 { v2 } | ChartPoint::Static { v2 } => v2,
            ChartPoint::K3 { .. } => 1.0,
        }
    }

    /// `ρ = r⁻¹ ∂_t̄ r`.
    pub fn rate(&self) -> f64 {
        match *self {
            ChartPoint::K1 { eps1 } => -0.5 * eps1,
            ChartPoint::K2 { .. } | ChartPoint::Static { .. } => 0.0,
            ChartPoint::K3 { eps3 } => 0.5 * eps3,
        }
    }

    /// Longest admissible advance (K1 reaches `ε₁ = ∞` in finite time).
    pub fn horizon(&self) -> f64 {
        match *self {
            ChartPoint::K1 { eps1 } if eps1 > 0.0 => 0.5 / eps1,
            _ => f64::INFINITY,
        }
    }

    /// The point reached after chart time `h`.
    pub fn advanced(&self, h: f64) -> Result<ChartPoint, ModError> {
        if h >= self.horizon() {
            return Err(ModError::Config(format!("advance {h} exceeds the chart horizon {}", self.horizon())));
        }
        Ok(match *self {
            ChartPoint::K1 { eps1 } => ChartPoint::K1 { eps1: eps1 / (1.0 - 2.0 * eps1 * h) },
            ChartPoint::K2 { v2 } => ChartPoint::K2 { v2: v2 + h },
            ChartPoint::K3 { eps3 } => ChartPoint::K3 { eps3: eps3 / (1.0 + 2.0 * eps3 * h) },
            p @ ChartPoint::Static { .. } => p,
        })
    }

    /// `∫_0^h v̄`.
    pub fn v_integral(&self, h: f64) -> f64 {
        match *self {
            ChartPoint::K1 { .. } => -h,
            ChartPoint::K2 { v2 } => v2 * h + 0.5 * h * h,
            ChartPoint::K3 { .. } => h,
            ChartPoint::Static { v2 } => v2 * h,
        }
    }

    /// `∫_0^h ρ = ln(r(h) / r(0))`.
    pub fn log_r_increment(&self, h: f64) -> f64 {
        match *self {
            ChartPoint::K1 { eps1 } => 0.25 * (-2.0 * eps1 * h).ln_1p(),
            ChartPoint::K2 { .. } | ChartPoint::Static { .. } => 0.0,
            ChartPoint::K3 { eps3 } => 0.25 * (2.0 * eps3 * h).ln_1p(),
        }
    }

    /// Taylor coefficients `0..=order` of the chart scalars.
    pub fn jets(&self, order: usize) -> ScalarJets {
        let n = order + 1;
        let geometric = |first: f64, ratio: f64| -> Vec<f64> {
            let mut out = Vec::with_capacity(n);
            let mut c = first;
            for _ in 0..n {
                out.push(c);
                c *= ratio;
            }
            out
        };
        let constant = |c: f64| -> Vec<f64> {
            let mut out = vec![0.0; n];
            out[0] = c;
            out
        };
        match *self {
            ChartPoint::K1 { eps1 } => {
                let eps = geometric(eps1, 2.0 * eps1);
                let rate = eps.iter().map(|e| -0.5 * e).collect();
                ScalarJets { eps, v: constant(-1.0), rate }
            }
            ChartPoint::K2 { v2 } => {
                let mut v = constant(v2);
                if n > 1 {
                    v[1] = 1.0;
                }
                ScalarJets { eps: constant(1.0), v, rate: vec![0.0; n] }
            }
            ChartPoint::Static { v2 } => ScalarJets { eps: vec![0.0; n], v: constant(v2), rate: vec![0.0; n] },
            ChartPoint::K3 { eps3 } => {
                let eps = geometric(eps3, -2.0 * eps3);
                let rate = eps.iter().map(|e| 0.5 * e).collect();
                ScalarJets { eps, v: constant(1.0), rate }
            }
        }
    }
}
