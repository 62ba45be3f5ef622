//! Monte Carlo model of the three-stage sensing workflow.
//!
//! 1. A coarse pre-measurement returns `Ω₀` within `±σ` of the true `Ω`.
//! 2. The field controller sets a scan window for `λ` that puts the
//!    effective field through the critical point for every `Ω` in range.
//! 3. The echo is swept over that window; its minimum at `λ₀` gives the
//!    estimate `Ω₁ = 2J(λ₀ − 1)/ħ`.
//!
//! The echo minimum sits at `λ̃ ≈ 1 − δ`, not at `λ̃ = 1`, so the estimate
//! carries a systematic offset of order `2Jδ/ħ`. Each trial also reports the
//! shifted estimate `Ω₁' = 2J(λ₀ − 1 + δ)/ħ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{resolution, uniform_grid, SQRT_ETA_REFERENCE};
use crate::chain::{characteristic_time, effective_lambda, ChainSpec};
use crate::echo::loschmidt_echo_at;
use crate::error::{Error, Result};

pub const MIN_SCAN_POINTS: usize = 101;
const FLAT_SCAN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NoiseModel {
    /// `Ω₀ ~ U[Ω − σ, Ω + σ]`.
    #[default]
    Uniform,
    /// `Ω₀ ~ N(Ω, (σ/2)²)` resampled until it lands in `[Ω − σ, Ω + σ]`.
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolConfig {
    pub true_omega: f64,
    pub sigma: f64,
    pub noise_model: NoiseModel,
    pub spec: ChainSpec,
    pub delta: f64,
    /// Echo evaluation time; `None` means `t₀ = ħ/(2J)`.
    pub time: Option<f64>,
    pub scan_points: usize,
    pub trials: usize,
    pub seed: u64,
}

impl ProtocolConfig {
    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !self.true_omega.is_finite() {
            return bad(format!("true_omega = {} must be finite", self.true_omega));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return bad(format!("sigma = {} must be positive", self.sigma));
        }
        if !(self.delta.is_finite() && self.delta >= 0.0) {
            return bad(format!("delta = {} must be non-negative", self.delta));
        }
        if let Some(t) = self.time {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::NegativeTime(t));
            }
        }
        if self.scan_points < MIN_SCAN_POINTS {
            return bad(format!("scan_points = {} must be at least {MIN_SCAN_POINTS}", self.scan_points));
        }
        if self.trials < 1 {
            return bad("trials must be at least 1".into());
        }
        Ok(())
    }

    pub fn time(&self) -> f64 {
        self.time.unwrap_or_else(|| characteristic_time(&self.spec))
    }

    /// `ΔΩ = 2√η ω₀ δ√N` with the reference `√η`.
    pub fn resolution(&self) -> f64 {
        resolution(self.spec.omega0(), self.delta, self.spec.n_spins, SQRT_ETA_REFERENCE)
    }

    /// `ΔΩ < σ`: the chain improves on the pre-measurement.
    pub fn feasible(&self) -> bool {
        self.resolution() < self.sigma
    }
}

/// Pre-measurement reading. Always inside `[Ω − σ, Ω + σ]`.
pub fn pmg_sample<R: Rng + ?Sized>(true_omega: f64, sigma: f64, noise_model: NoiseModel, rng: &mut R) -> f64 {
    if !(sigma > 0.0) {
        return true_omega;
    }
    let (lo, hi) = (true_omega - sigma, true_omega + sigma);
    match noise_model {
        NoiseModel::Uniform => rng.random_range(lo..=hi),
        NoiseModel::Gaussian => {
            let normal = Normal::new(true_omega, 0.5 * sigma).expect("positive width");
            loop {
                let x = normal.sample(rng);
                if (lo..=hi).contains(&x) {
                    break x;
                }
            }
        }
    }
}

/// Field-controller window `[1 + ħ(Ω₀−σ)/(2J), 1 + ħ(Ω₀+σ)/(2J)]`.
pub fn mfc_window(omega0: f64, sigma: f64, spec: &ChainSpec) -> (f64, f64) {
    (
        1.0 + spec.omega_to_field(omega0 - sigma),
        1.0 + spec.omega_to_field(omega0 + sigma),
    )
}

/// `Ω₁ = 2J(λ₀ − 1)/ħ`.
pub fn estimate_omega(spec: &ChainSpec, lambda0: f64) -> f64 {
    2.0 * spec.coupling * (lambda0 - 1.0) / spec.hbar
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProtocolTrial {
    pub omega0: f64,
    pub lambda_window: (f64, f64),
    pub lambda0: f64,
    pub omega1: f64,
    pub omega1_corrected: f64,
    /// `|Ω₁ − Ω|` for the unshifted estimate.
    pub abs_error: f64,
    pub corrected_abs_error: f64,
    /// The echo-minimum field `1 − δ + ħΩ/(2J)` lies in the scan window.
    pub critical_in_window: bool,
}

/// Vertex offset of the parabola through three equally spaced samples.
fn parabolic_offset(left: f64, mid: f64, right: f64, spacing: f64) -> f64 {
    let curvature = left - 2.0 * mid + right;
    if curvature <= 0.0 {
        return 0.0;
    }
    (0.5 * spacing * (left - right) / curvature).clamp(-spacing, spacing)
}

/// Sweeps `λ` over the controller window with the chain at the true `Ω`
/// and estimates `Ω` from the echo minimum.
pub fn scan_and_estimate(config: &ProtocolConfig, omega0: f64) -> Result<ProtocolTrial> {
    config.validate()?;
    let spec = &config.spec;
    let time = config.time();
    let window = mfc_window(omega0, config.sigma, spec);
    let lambdas = uniform_grid(window.0, window.1, config.scan_points)?;
    let echoes = lambdas
        .iter()
        .map(|&lambda| {
            loschmidt_echo_at(
                spec,
                effective_lambda(spec, lambda, config.true_omega),
                config.delta,
                time,
            )
        })
        .collect::<Result<Vec<f64>>>()?;

    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut best = 0;
    for (i, &l) in echoes.iter().enumerate() {
        if l < echoes[best] {
            best = i;
        }
        lo = lo.min(l);
        hi = hi.max(l);
    }
    if hi - lo < FLAT_SCAN {
        return Err(Error::FlatScan { range: hi - lo });
    }

    let spacing = lambdas[1] - lambdas[0];
    let mut lambda0 = lambdas[best];
    if best > 0 && best + 1 < echoes.len() {
        lambda0 += parabolic_offset(echoes[best - 1], echoes[best], echoes[best + 1], spacing);
    }
    let omega1 = estimate_omega(spec, lambda0);
    let omega1_corrected = estimate_omega(spec, lambda0 + config.delta);
    let critical = 1.0 - config.delta + spec.omega_to_field(config.true_omega);
    Ok(ProtocolTrial {
        omega0,
        lambda_window: window,
        lambda0,
        omega1,
        omega1_corrected,
        abs_error: (omega1 - config.true_omega).abs(),
        corrected_abs_error: (omega1_corrected - config.true_omega).abs(),
        critical_in_window: (window.0..=window.1).contains(&critical),
    })
}

/// Private random stream for trial `index`.
pub fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub index: usize,
    pub omega0: f64,
    pub outcome: Result<ProtocolTrial>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorStats {
    pub mean_abs_error: f64,
    pub p95_abs_error: f64,
    /// Fraction of successful trials with `|error| < ΔΩ`.
    pub success_rate: f64,
    pub mean_signed_error: f64,
}

impl ErrorStats {
    fn from_signed(errors: &[f64], threshold: f64) -> Self {
        let n = errors.len() as f64;
        let mut abs: Vec<f64> = errors.iter().map(|e| e.abs()).collect();
        abs.sort_by(f64::total_cmp);
        let rank = ((0.95 * n).ceil() as usize).clamp(1, abs.len()) - 1;
        Self {
            mean_abs_error: abs.iter().sum::<f64>() / n,
            p95_abs_error: abs[rank],
            success_rate: abs.iter().filter(|&&e| e < threshold).count() as f64 / n,
            mean_signed_error: errors.iter().sum::<f64>() / n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProtocolSummary {
    pub trials: usize,
    pub succeeded: usize,
    /// Statistics of `Ω₁ = 2J(λ₀ − 1)/ħ`.
    pub uncorrected: ErrorStats,
    /// Statistics of `Ω₁' = 2J(λ₀ − 1 + δ)/ħ`.
    pub corrected: ErrorStats,
    pub resolution_delta_omega: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolRun {
    pub records: Vec<TrialRecord>,
    pub summary: ProtocolSummary,
}

/// Runs `config.trials` independent trials, in parallel, each on its own
/// random stream.
pub fn run_trials(config: &ProtocolConfig) -> Result<ProtocolRun> {
    config.validate()?;
    let records: Vec<TrialRecord> = (0..config.trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = trial_rng(config.seed, index);
            let omega0 = pmg_sample(config.true_omega, config.sigma, config.noise_model, &mut rng);
            TrialRecord {
                index,
                omega0,
                outcome: scan_and_estimate(config, omega0),
            }
        })
        .collect();

    let ok: Vec<&ProtocolTrial> = records.iter().filter_map(|r| r.outcome.as_ref().ok()).collect();
    if ok.is_empty() {
        return Err(Error::NoSuccessfulTrials);
    }
    let threshold = config.resolution();
    let raw: Vec<f64> = ok.iter().map(|t| t.omega1 - config.true_omega).collect();
    let shifted: Vec<f64> = ok.iter().map(|t| t.omega1_corrected - config.true_omega).collect();
    let summary = ProtocolSummary {
        trials: config.trials,
        succeeded: ok.len(),
        uncorrected: ErrorStats::from_signed(&raw, threshold),
        corrected: ErrorStats::from_signed(&shifted, threshold),
        resolution_delta_omega: threshold,
        feasible: config.feasible(),
    };
    Ok(ProtocolRun { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(delta: f64) -> ProtocolConfig {
        ProtocolConfig {
            true_omega: 2.0,
            sigma: 0.5,
            noise_model: NoiseModel::Uniform,
            spec: ChainSpec::new(200).unwrap(),
            delta,
            time: None,
            scan_points: 101,
            trials: 8,
            seed: 7,
        }
    }

    #[test]
    fn window_examples() {
        let spec = ChainSpec::new(2).unwrap();
        let (lo, hi) = mfc_window(2.0, 0.1, &spec);
        assert!((lo - 1.95).abs() < 1e-15 && (hi - 2.05).abs() < 1e-15);
        assert_eq!(mfc_window(0.0, 0.1, &spec), (0.95, 1.05));
        let (lo, hi) = mfc_window(-3.3, 0.4, &spec);
        let mid = 1.0 + spec.omega_to_field(-3.3);
        assert!(lo <= mid && mid <= hi);
    }

    #[test]
    fn small_sigma_reads_true_value() {
        let mut rng = trial_rng(1, 0);
        let x = pmg_sample(1.25, 1e-12, NoiseModel::Uniform, &mut rng);
        assert!((x - 1.25).abs() <= 1e-12);
        let g = pmg_sample(1.25, 1e-12, NoiseModel::Gaussian, &mut rng);
        assert!((g - 1.25).abs() <= 1e-12);
    }

    #[test]
    fn uniform_mean_within_standard_error() {
        let (omega, sigma, n) = (0.7, 0.3, 100_000);
        let mut rng = trial_rng(99, 0);
        let mean = (0..n)
            .map(|_| pmg_sample(omega, sigma, NoiseModel::Uniform, &mut rng))
            .sum::<f64>()
            / n as f64;
        // σ/√3 per draw, three standard errors
        assert!((mean - omega).abs() < 3.0 * sigma / (3.0 * n as f64).sqrt());
    }

    #[test]
    fn gaussian_stays_in_range() {
        let mut rng = trial_rng(5, 3);
        for _ in 0..10_000 {
            let x = pmg_sample(0.0, 0.2, NoiseModel::Gaussian, &mut rng);
            assert!(x.abs() <= 0.2);
        }
    }

    #[test]
    fn seeded_samples_repeat() {
        let a = pmg_sample(1.0, 0.5, NoiseModel::Uniform, &mut trial_rng(42, 3));
        let b = pmg_sample(1.0, 0.5, NoiseModel::Uniform, &mut trial_rng(42, 3));
        let c = pmg_sample(1.0, 0.5, NoiseModel::Uniform, &mut trial_rng(42, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn no_probe_is_flat() {
        assert!(matches!(scan_and_estimate(&config(0.0), 2.0), Err(Error::FlatScan { .. })));
        assert_eq!(run_trials(&config(0.0)), Err(Error::NoSuccessfulTrials));
    }

    #[test]
    fn estimate_relation_is_exact() {
        let t = scan_and_estimate(&config(0.05), 2.1).unwrap();
        assert_eq!(t.omega1, estimate_omega(&ChainSpec::new(200).unwrap(), t.lambda0));
        assert_eq!(t.omega1, 2.0 * (t.lambda0 - 1.0));
    }

    #[test]
    fn parabola_vertex() {
        // y = (x − 0.3)² sampled at −1, 0, 1
        let f = |x: f64| (x - 0.3).powi(2);
        assert!((parabolic_offset(f(-1.0), f(0.0), f(1.0), 1.0) - 0.3).abs() < 1e-14);
        assert_eq!(parabolic_offset(1.0, 2.0, 1.0, 1.0), 0.0);
    }

    #[test]
    fn config_validation() {
        let mut c = config(0.01);
        c.scan_points = 100;
        assert!(c.validate().is_err());
        let mut c = config(0.01);
        c.sigma = 0.0;
        assert!(c.validate().is_err());
        let mut c = config(0.01);
        c.trials = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn feasibility_flag() {
        let mut c = config(0.01);
        assert!(c.feasible());
        c.sigma = 0.01;
        assert!(!c.feasible());
    }
}
