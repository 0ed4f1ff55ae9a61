//! Upper incomplete gamma function, error function and the gamma-type
//! window integral `Q(t) = ∫_0^t e^{-αs} (1+βs)^{-γ} ds`.

use statrs::function::gamma::gamma;

use crate::NumericsError;

/// Above this argument the asymptotic expansion is used.
const ASYMPTOTIC_SWITCH: f64 = 30.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Error function, accurate to a few ulp.
pub fn erf(z: f64) -> f64 {
    libm::erf(z)
}

/// `e^z Γ(a, z)`, finite for all `z > 0`.
pub fn upper_gamma_scaled(a: f64, z: f64) -> Result<f64, NumericsError> {
    if !(a.is_finite() && z.is_finite()) {
        return Err(NumericsError::Domain(format!("upper_gamma({a}, {z}): non-finite argument")));
    }
    if z < 0.0 {
        return Err(NumericsError::Domain(format!("upper_gamma({a}, {z}): z must be non-negative")));
    }
    if z == 0.0 {
        if a <= 0.0 {
            return Err(NumericsError::Domain(format!("upper_gamma({a}, 0) diverges for a <= 0")));
        }
        return Ok(gamma(a));
    }
    if z > ASYMPTOTIC_SWITCH {
        return Ok(asymptotic_scaled(a, z));
    }
    if z > a + 1.0 {
        return Ok(continued_fraction_scaled(a, z));
    }
    if a > 0.0 {
        return Ok(z.exp() * gamma(a) - lower_series_scaled(a, z));
    }
    if a == 0.0 {
        return Ok(z.exp() * e1_series(z));
    }
    // Γ(a, z) = (Γ(a+1, z) - z^a e^{-z}) / a for a < 0.
    let up = upper_gamma_scaled(a + 1.0, z)?;
    Ok((up - z.powf(a)) / a)
}

/// Upper incomplete gamma function `Γ(a, z) = ∫_z^∞ s^{a-1} e^{-s} ds`.
pub fn upper_gamma(a: f64, z: f64) -> Result<f64, NumericsError> {
    Ok((-z).exp() * upper_gamma_scaled(a, z)?)
}

/// `z^{a-1} Σ_k (a-1)(a-2)…(a-k) / z^k`, summed to the smallest term.
fn asymptotic_scaled(a: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        term *= (a - k as f64) / z;
        let size = term.abs();
        if size >= last && k >= 3 {
            break;
        }
        sum += term;
        last = size;
        if size < 1e-17 * sum.abs() && k >= 3 {
            break;
        }
    }
    z.powf(a - 1.0) * sum
}

/// Legendre continued fraction (modified Lentz), scaled by `e^z`.
fn continued_fraction_scaled(a: f64, z: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = z + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    z.powf(a) * h
}

/// `e^z γ(a, z)` by its power series (`a > 0`).
fn lower_series_scaled(a: f64, z: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..10_000 {
        ap += 1.0;
        term *= z / ap;
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    z.powf(a) * sum
}

/// Exponential integral `E1(z) = Γ(0, z)` for small `z`.
fn e1_series(z: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..10_000 {
        term *= -z / k as f64;
        let add = -term / k as f64;
        sum += add;
        if add.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - z.ln() + sum
}

fn check_window(alpha: f64, beta: f64, gamma_: f64, t: f64) -> Result<(), NumericsError> {
    if ![alpha, beta, gamma_, t].iter().all(|v| v.is_finite()) {
        return Err(NumericsError::Domain("gamma_window_integral: non-finite argument".into()));
    }
    if t < 0.0 {
        return Err(NumericsError::Domain(format!("gamma_window_integral: t = {t} is negative")));
    }
    if 1.0 + beta * t <= 0.0 {
        return Err(NumericsError::Domain(format!(
            "gamma_window_integral: 1 + βt = {} must be positive",
            1.0 + beta * t
        )));
    }
    Ok(())
}

/// `Q(t) = ∫_0^t e^{-αs} (1+βs)^{-γ} ds`.
///
/// Uses the incomplete-gamma closed form when `α/β > 0`, its convergent
/// power-series continuation when `α/β < 0`, and elementary antiderivatives
/// when `α` or `β` vanishes. Defined whenever `1 + βt > 0`.
pub fn gamma_window_integral(alpha: f64, beta: f64, gamma_: f64, t: f64) -> Result<f64, NumericsError> {
    check_window(alpha, beta, gamma_, t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let z0 = alpha / beta;
    if beta != 0.0 && alpha != 0.0 && z0 > 0.0 {
        // Q = β^{-1} (β/α)^a [G(a, z0) - e^{-αt} G(a, z0 w)], G(a, z) = e^z Γ(a, z)
        let a = 1.0 - gamma_;
        let w = 1.0 + beta * t;
        let g0 = upper_gamma_scaled(a, z0)?;
        let g1 = upper_gamma_scaled(a, z0 * w)?;
        return Ok((beta / alpha).powf(a) / beta * (g0 - (-alpha * t).exp() * g1));
    }
    window_elementary_or_series(alpha, beta, gamma_, t)
}

fn window_elementary_or_series(alpha: f64, beta: f64, gamma_: f64, t: f64) -> Result<f64, NumericsError> {
    if beta == 0.0 {
        if alpha == 0.0 {
            return Ok(t);
        }
        return Ok(-(-alpha * t).exp_m1() / alpha);
    }
    let a = 1.0 - gamma_;
    let log_w = (beta * t).ln_1p();
    // ∫_1^w s^{k+a-1} ds without cancellation for w close to 1.
    let power_integral = |p: f64| -> f64 {
        if p == 0.0 {
            log_w
        } else {
            (p * log_w).exp_m1() / p
        }
    };
    if alpha == 0.0 {
        return Ok(power_integral(a) / beta);
    }
    // α/β < 0: expand e^{-z0 w} with -z0 > 0; all terms share one sign.
    let z0 = alpha / beta;
    let mut coeff = 1.0;
    let mut sum = power_integral(a);
    let mut k = 0usize;
    loop {
        k += 1;
        coeff *= -z0 / k as f64;
        let term = coeff * power_integral(k as f64 + a);
        sum += term;
        if (k as f64 > -z0 && term.abs() <= 1e-17 * sum.abs()) || k > 100_000 {
            break;
        }
    }
    Ok(z0.exp() / beta * sum)
}
