//! The explicit constants that carry the source forcing through K1 and K2.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use tp_numerics::{erf, gamma_window_integral, upper_gamma_scaled, Complex64};

use crate::{k1_flow, ChartError};

/// `f_{2,1}` and its approximations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F21 {
    /// `ζ ∫_0^{T₁} e^{-τ}(1+2ζτ)^{-3/4} dτ`, the exact K1 exit value of the
    /// forced `A₂` envelope per unit `ν₁`.
    pub exact: f64,
    /// The same quantity when the envelope of level 2 is damped by its full
    /// weight `2ρ` (see [`f21_weighted`]).
    pub exact_level_weight: f64,
    /// The `ε₁* → 0` limit `e^{1/2ζ}(ζ/8)^{1/4} Γ(1/4, 1/(2ζ))`.
    pub limit: f64,
    /// The leading approximation `ζ` of the limit for small `ζ`.
    pub leading: f64,
}

/// `f_{2,1}(ε₁*)` for chart boundary `ζ`.
///
/// The forced envelope solves `Ã' = -Ã + ε₁* (1-2ε₁*s)^{-3/4} ν₁`, and at
/// `T₁` it is rescaled by `(ζ/ε₁*)^{1/4}`. Reversing time in the Duhamel
/// integral turns it into the window integral `Q(T₁; 1, 2ζ, 3/4)`.
pub fn f21(eps1_star: f64, zeta: f64) -> Result<F21, ChartError> {
    Ok(F21 {
        exact: f21_weighted(eps1_star, zeta, 1.0)?,
        exact_level_weight: f21_weighted(eps1_star, zeta, 2.0)?,
        limit: f21_limit(zeta)?,
        leading: zeta,
    })
}

/// K1 exit value per unit `ν₁` of `A' = (-1 + cε₁/2) A + ε₁ν₁`, `A(0) = 0`,
/// i.e. `ζ Q(T₁; 1, 2ζ, 1 - c/4)`.
///
/// `c = 1` is the damping used in the published integral; `c = 2` is the
/// weight `ℓρ` that follows from differentiating `r² A`.
pub fn f21_weighted(eps1_star: f64, zeta: f64, c: f64) -> Result<f64, ChartError> {
    let flow = k1_flow(eps1_star, zeta, 1.0)?;
    Ok(zeta * gamma_window_integral(1.0, 2.0 * zeta, 1.0 - 0.25 * c, flow.t1)?)
}

/// `e^{1/2ζ}(ζ/8)^{1/4} Γ(1/4, 1/(2ζ))`.
pub fn f21_limit(zeta: f64) -> Result<f64, ChartError> {
    Ok((zeta / 8.0).powf(0.25) * upper_gamma_scaled(0.25, 0.5 / zeta)?)
}

/// `f_{2,1}(ε₁*)` from the incomplete-gamma antiderivative
/// `(ζ/8)^{1/4} [G(1/(2ζ)) - e^{-T₁} G(1/(2ε₁*))]` with `G(z) = e^z Γ(1/4, z)`.
pub fn f21_gamma_form(eps1_star: f64, zeta: f64) -> Result<f64, ChartError> {
    let flow = k1_flow(eps1_star, zeta, 1.0)?;
    let outer = upper_gamma_scaled(0.25, 0.5 / zeta)?;
    let inner = upper_gamma_scaled(0.25, 0.5 / eps1_star)?;
    Ok((zeta / 8.0).powf(0.25) * (outer - (-flow.t1).exp() * inner))
}

/// `f_{2,2}` in its two published forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F22 {
    /// `√(π/2) e^{ρ_mid²/2} (erf(ρ_mid/√2) + erf(1/√(2ζ)))`.
    pub statement: f64,
    /// The same with prefactor `e^{1/2ζ}`; equal to `statement` iff
    /// `ρ_mid = ζ^{-1/2}`.
    pub proof: f64,
}

pub fn f22(rho_mid: f64, zeta: f64) -> Result<F22, ChartError> {
    if !(rho_mid > 0.0 && zeta > 0.0) {
        return Err(crate::error::domain(format!("f22 needs positive arguments, got {rho_mid}, {zeta}")));
    }
    let bracket = erf(rho_mid * FRAC_1_SQRT_2) + erf((0.5 / zeta).sqrt());
    let pre = (0.5 * PI).sqrt();
    Ok(F22 { statement: pre * (0.5 * rho_mid * rho_mid).exp() * bracket, proof: pre * (0.5 / zeta).exp() * bracket })
}

/// Heuristic roll prediction `ν₁ζ^{-1/2}(f_{2,1}(0) + t₂) exp(-t₂/√ζ + t₂²/2)`
/// for the forced K2 envelope `A_{1,2}`.
pub fn a12_prediction(t2: f64, zeta: f64, nu1: Complex64, f210: f64) -> Complex64 {
    let s = zeta.sqrt();
    nu1 * ((f210 + t2) / s * (-t2 / s + 0.5 * t2 * t2).exp())
}

/// Exact solution of `A' = (t - ζ^{-1/2}) A + ν₁`, `A(0) = a0`:
/// `e^{Φ(t)} a0 + ν₁ √(π/2) e^{(t-c)²/2} (erf((t-c)/√2) + erf(c/√2))` with
/// `c = ζ^{-1/2}` and `Φ(t) = t²/2 - c t`.
///
/// This is the x-homogeneous forced K2 equation for `A_{1,2}` once `A_{1,1}`
/// vanishes; at `t = T₂` the forced part is `ν₁ f_{2,2}`.
pub fn a12_linear(t2: f64, zeta: f64, nu1: Complex64, a0: Complex64) -> Complex64 {
    let c = zeta.powf(-0.5);
    let d = t2 - c;
    let phi = 0.5 * t2 * t2 - c * t2;
    let forced = (0.5 * PI).sqrt() * (0.5 * d * d).exp() * (erf(d * FRAC_1_SQRT_2) + erf(c * FRAC_1_SQRT_2));
    a0 * phi.exp() + nu1 * forced
}
