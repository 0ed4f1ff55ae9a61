use tp_numerics::{Complex64, ComplexField};

use crate::ModError;

/// Inputs of `L̃^{(2)}_m = -∂_t̄ - c ρ - 2(1 - 3m²)∂² + v̄` beyond the field.
#[derive(Debug, Clone, Copy)]
pub struct TildeInputs<'a> {
    /// `∂_t̄ f`.
    pub time_derivative: &'a ComplexField,
    pub v_bar: f64,
    pub rate: f64,
    /// Damping weight (see [`crate::DampingConvention`]).
    pub weight: f64,
}

/// Applies `L^{(i)}_m`, the coefficient of `r^i` when `-(1+∂_x²)²` acts on
/// `A(r x) e^{imx}`:
///
/// ```text
/// L⁰ = -(1-m²)²   L¹ = -4im(1-m²)∂   L³ = -4im∂³   L⁴ = -∂⁴
/// ```
///
/// `i = 2` is the tilde operator and needs [`TildeInputs`].
pub fn linear_op_apply(
    i: u8,
    m: i32,
    f: &ComplexField,
    tilde: Option<TildeInputs<'_>>,
) -> Result<ComplexField, ModError> {
    let mf = m as f64;
    let one_minus = 1.0 - mf * mf;
    Ok(match i {
        0 => f.scaled(Complex64::new(-one_minus * one_minus, 0.0)),
        1 => {
            if one_minus == 0.0 {
                ComplexField::zeros(*f.grid())
            } else {
                f.derivative(1).scaled(Complex64::new(0.0, -4.0 * mf * one_minus))
            }
        }
        2 => {
            let t = tilde.ok_or_else(|| ModError::Config("L̃² needs the time derivative and chart scalars".into()))?;
            f.derivative(2)
                .scaled(Complex64::new(-2.0 * (1.0 - 3.0 * mf * mf), 0.0))
                .add_scaled(f, Complex64::new(t.v_bar - t.weight * t.rate, 0.0))
                .add_scaled(t.time_derivative, Complex64::new(-1.0, 0.0))
        }
        3 => f.derivative(3).scaled(Complex64::new(0.0, -4.0 * mf)),
        4 => f.derivative(4).scaled(Complex64::new(-1.0, 0.0)),
        _ => return Err(ModError::Config(format!("no operator L^({i})"))),
    })
}

/// Solves `L⁰_m A = f`.
pub fn invert_l0(m: i32, f: &ComplexField) -> Result<ComplexField, ModError> {
    let mf = m as f64;
    let l0 = -(1.0 - mf * mf).powi(2);
    if l0 == 0.0 {
        return Err(ModError::Singular(format!("L⁰ vanishes for m = {m}")));
    }
    Ok(f.scaled(Complex64::new(1.0 / l0, 0.0)))
}
