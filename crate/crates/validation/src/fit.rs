use crate::ValidationError;

/// Ordinary least squares `y ≈ intercept + slope · x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square deviation of the points from the line.
    pub rms: f64,
}

pub fn line_fit(x: &[f64], y: &[f64]) -> Result<LineFit, ValidationError> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(ValidationError::Config(format!(
            "line fit needs ≥ 2 paired points, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(ValidationError::Config("line fit got non-finite data".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(ValidationError::Config("degenerate abscissa: all x values coincide".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum::<f64>() / n).sqrt();
    Ok(LineFit { slope, intercept, rms })
}

/// Power law `y ≈ C x^p` fitted in log–log coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub abscissa: Vec<f64>,
    pub ordinate: Vec<f64>,
    pub slope: f64,
    pub log_prefactor: f64,
    /// RMS misfit in natural-log units.
    pub residual: f64,
}

impl ScalingFit {
    pub const MIN_POINTS: usize = 4;

    /// Rejects fewer than four points, non-positive data and repeated
    /// abscissae.
    pub fn fit(abscissa: &[f64], ordinate: &[f64]) -> Result<Self, ValidationError> {
        if abscissa.len() != ordinate.len() {
            return Err(ValidationError::Config("abscissa and ordinate lengths differ".into()));
        }
        if abscissa.len() < Self::MIN_POINTS {
            return Err(ValidationError::Config(format!(
                "a scaling fit needs at least {} points, got {}",
                Self::MIN_POINTS,
                abscissa.len()
            )));
        }
        if let Some(bad) = abscissa.iter().chain(ordinate).find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(ValidationError::Config(format!("scaling fits need positive finite data, got {bad}")));
        }
        for (i, a) in abscissa.iter().enumerate() {
            if abscissa[..i].iter().any(|b| (a - b).abs() <= 1e-12 * a.abs()) {
                return Err(ValidationError::Config(format!("degenerate abscissa: {a} appears twice")));
            }
        }
        let lx: Vec<f64> = abscissa.iter().map(|v| v.ln()).collect();
        let ly: Vec<f64> = ordinate.iter().map(|v| v.ln()).collect();
        let line = line_fit(&lx, &ly)?;
        Ok(Self {
            abscissa: abscissa.to_vec(),
            ordinate: ordinate.to_vec(),
            slope: line.slope,
            log_prefactor: line.intercept,
            residual: line.rms,
        })
    }
}
