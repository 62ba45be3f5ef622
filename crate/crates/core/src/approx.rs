//! Small-momentum cutoff approximations to the echo.
//!
//! Keeping only the first `N_c` modes gives the partial log-sum `S = ln L_c`.
//! Expanding those modes for `ka ≪ 1` yields a closed form whose only
//! chain-length dependence is through `m = Σ k² a²`, and whose short-time limit
//! is a Gaussian in `δ/ε` with `ε = 1 − λ̃ − δ`.

use std::f64::consts::PI;

use crate::chain::{ChainSpec, FieldConfig};
use crate::echo::{bloch_modes, factor_for};
use crate::error::{Error, Result};

/// Default floor below which the closed-form denominators count as zero.
pub const SINGULARITY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxParams {
    pub cutoff_number: usize,
    /// `α = K_c a/π = N_c/N`.
    pub alpha_frac: f64,
    pub m: f64,
    /// `η = 4π²α³/3`, the large-`N` limit of `m/N`.
    pub eta: f64,
}

impl ApproxParams {
    pub fn new(spec: &ChainSpec, cutoff_number: usize) -> Result<Self> {
        let m = m_parameter(spec, cutoff_number)?;
        let alpha_frac = cutoff_number as f64 / spec.n_spins as f64;
        Ok(Self {
            cutoff_number,
            alpha_frac,
            m,
            eta: 4.0 * PI * PI * alpha_frac.powi(3) / 3.0,
        })
    }

    /// Cutoff wave vector `K_c = N_c π/(Na)`.
    pub fn cutoff_wavevector(&self, spec: &ChainSpec) -> f64 {
        self.cutoff_number as f64 * PI / (spec.n_spins as f64 * spec.lattice_spacing)
    }
}

fn check_cutoff(spec: &ChainSpec, cutoff_number: usize) -> Result<()> {
    spec.validate()?;
    let max = spec.mode_count();
    if cutoff_number < 1 || cutoff_number > max {
        return Err(Error::InvalidCutoff {
            cutoff: cutoff_number,
            max,
        });
    }
    Ok(())
}

/// `m = 4π² N_c(N_c+1)(2N_c+1) / (6N²)`.
pub fn m_parameter(spec: &ChainSpec, cutoff_number: usize) -> Result<f64> {
    check_cutoff(spec, cutoff_number)?;
    let nc = cutoff_number as f64;
    let n = spec.n_spins as f64;
    Ok(4.0 * PI * PI * nc * (nc + 1.0) * (2.0 * nc + 1.0) / (6.0 * n * n))
}

/// `S = −Σ_{n ≤ N_c} |ln F_k|`, the log of the product of the first `N_c`
/// exact mode factors.
pub fn log_echo_partial_sum(spec: &ChainSpec, fields: &FieldConfig, t: f64, cutoff: &ApproxParams) -> Result<f64> {
    check_cutoff(spec, cutoff.cutoff_number)?;
    fields.validate()?;
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    let lambda_tilde = fields.lambda_tilde(spec);
    Ok(-bloch_modes(spec)?
        .iter()
        .take(cutoff.cutoff_number)
        .map(|mode| factor_for(spec, mode, lambda_tilde, fields.delta, t).ln().abs())
        .sum::<f64>())
}

/// Closed-form cutoff echo and its short-time Gaussian limit, with the
/// quantities that decide whether the expansion applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianEcho {
    /// `exp{−δ² m sin²[2J(1−λ̃)t/ħ] / [(1−λ̃)²(1−λ̃−δ)²]}`.
    pub closed_form: f64,
    /// `exp[−4 (δ/ε)² m J² t²/ħ²]`.
    pub short_time: f64,
    /// `K_c a`; the expansion needs this `≪ 1`.
    pub cutoff_phase: f64,
    /// `2J(ε+δ)t/ħ`; the Gaussian limit needs this `≪ 1`.
    pub short_time_phase: f64,
}

pub fn gaussian_echo_approx(spec: &ChainSpec, fields: &FieldConfig, t: f64, cutoff: &ApproxParams) -> Result<GaussianEcho> {
    gaussian_echo_approx_with_floor(spec, fields, t, cutoff, SINGULARITY_FLOOR)
}

pub fn gaussian_echo_approx_with_floor(
    spec: &ChainSpec,
    fields: &FieldConfig,
    t: f64,
    cutoff: &ApproxParams,
    floor: f64,
) -> Result<GaussianEcho> {
    check_cutoff(spec, cutoff.cutoff_number)?;
    fields.validate()?;
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    let delta = fields.delta;
    let detuning = 1.0 - fields.lambda_tilde(spec);
    let epsilon = detuning - delta;
    if detuning.abs() < floor {
        return Err(Error::ApproximationSingular {
            which: "1 - lambda_tilde",
            value: detuning.abs(),
            floor,
        });
    }
    if epsilon.abs() < floor {
        return Err(Error::ApproximationSingular {
            which: "1 - lambda_tilde - delta",
            value: epsilon.abs(),
            floor,
        });
    }
    let (j, hbar, m) = (spec.coupling, spec.hbar, cutoff.m);
    let sine = (2.0 * j * detuning * t / hbar).sin();
    let closed = -delta * delta * m * sine * sine / (detuning * detuning * epsilon * epsilon);
    let gaussian = -4.0 * (delta / epsilon).powi(2) * m * (j * t / hbar).powi(2);
    Ok(GaussianEcho {
        closed_form: closed.exp(),
        short_time: gaussian.exp(),
        cutoff_phase: cutoff.cutoff_wavevector(spec) * spec.lattice_spacing,
        short_time_phase: 2.0 * j * detuning * t / hbar,
    })
}
