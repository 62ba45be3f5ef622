use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficient linking the sensor resolution to `δ√N`.
pub const SQRT_ETA_REFERENCE: f64 = 0.375;

/// Coefficient in the usefulness bound `δ√N < 1.33 σ/ω₀`.
pub const CONSTRAINT_COEFFICIENT: f64 = 1.33;

/// Origin-constrained least-squares fit of `ε₀ = √η · √N · δ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaFit {
    pub sqrt_eta: f64,
    /// Uncentred coefficient of determination `1 − SS_res / Σ ε₀²`.
    pub r_squared: f64,
    pub points: Vec<(f64, f64)>,
    pub n_spins: usize,
}

pub fn fit_eta(points: &[(f64, f64)], n_spins: usize) -> Result<EtaFit> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    if n_spins == 0 {
        return Err(Error::InvalidFitInput("chain length must be positive".into()));
    }
    for (i, &(delta, eps)) in points.iter().enumerate() {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::InvalidFitInput(format!("epsilon0 = {eps} at delta = {delta} is not positive")));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidFitInput(format!("delta = {delta} is not positive")));
        }
        if points[..i].iter().any(|&(d, _)| d == delta) {
            return Err(Error::InvalidFitInput(format!("duplicate delta {delta}")));
        }
    }
    let root_n = (n_spins as f64).sqrt();
    let (sxy, sxx, syy) = points.iter().fold((0.0, 0.0, 0.0), |(sxy, sxx, syy), &(d, y)| {
        let x = root_n * d;
        (sxy + x * y, sxx + x * x, syy + y * y)
    });
    let sqrt_eta = sxy / sxx;
    let ss_res: f64 = points
        .iter()
        .map(|&(d, y)| (y - sqrt_eta * root_n * d).powi(2))
        .sum();
    Ok(EtaFit {
        sqrt_eta,
        r_squared: (1.0 - ss_res / syy).clamp(0.0, 1.0),
        points: points.to_vec(),
        n_spins,
    })
}

/// Sensor resolution `ΔΩ = 2 √η ω₀ δ √N`.
pub fn resolution(omega0: f64, delta: f64, n_spins: usize, sqrt_eta: f64) -> f64 {
    2.0 * sqrt_eta * omega0 * delta * (n_spins as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintCheck {
    pub satisfied: bool,
    /// `δ√N / (1.33 σ/ω₀)`; below one when satisfied.
    pub margin: f64,
}

/// Whether the chain out-resolves a pre-measurement of resolution `sigma`.
pub fn constraint_check(delta: f64, n_spins: usize, sigma: f64, omega0: f64) -> Result<ConstraintCheck> {
    if !(sigma > 0.0) || !(omega0 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sigma = {sigma} and omega0 = {omega0} must be positive"
        )));
    }
    let lhs = delta * (n_spins as f64).sqrt();
    let bound = CONSTRAINT_COEFFICIENT * sigma / omega0;
    Ok(ConstraintCheck {
        satisfied: lhs < bound,
        margin: lhs / bound,
    })
}
