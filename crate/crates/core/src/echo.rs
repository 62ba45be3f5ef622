//! Exact Loschmidt echo of the periodic chain as a product over Bloch modes.
//!
//! Each pair of modes `±k` evolves independently after the Jordan–Wigner and
//! Bogoliubov transformations, so the echo factorises:
//!
//! ```text
//! L(λ̃, t) = Π_{k>0} [1 − sin²(2α_k) sin²(ε_k t / ħ)]
//! α_k     = ½ [θ_k(λ̃) − θ_k(λ̃ + δ)]
//! θ_k(x)  = atan2(−sin ka, cos ka − x)
//! ε_k     = 2J √(1 + (λ̃+δ)² − 2(λ̃+δ) cos ka)
//! ```
//!
//! The product is accumulated as a sum of logarithms; thousands of factors
//! slightly below one underflow otherwise.

use std::f64::consts::PI;

use crate::chain::{ChainSpec, FieldConfig};
use crate::error::{Error, Result};

/// Smallest mode factor fed to `ln`.
pub const FACTOR_FLOOR: f64 = 1e-300;

/// Quantisation of the Bloch wave vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeGrid {
    /// `k = 2nπ/(Na)`, `n = 1..N/2`.
    #[default]
    Periodic,
    /// `k = (2n−1)π/(Na)`, `n = 1..N/2`. This is the fermion grid of the
    /// even-parity sector that holds the ground state of a finite periodic
    /// chain; it reproduces dense diagonalisation to rounding.
    AntiPeriodic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochMode {
    pub index: usize,
    /// `k`, in inverse lattice units.
    pub wavevector: f64,
    /// `k·a`, the dimensionless phase the dispersion depends on.
    pub phase: f64,
}

impl BlochMode {
    /// `sin(ka)` with the rounding residue at `ka = π` removed.
    fn sin_phase(&self) -> f64 {
        let s = self.phase.sin();
        if s.abs() < 8.0 * f64::EPSILON {
            0.0
        } else {
            s
        }
    }
}

/// A single factor `F_k` of the echo product, always in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ModeFactor(f64);

impl ModeFactor {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn ln(self) -> f64 {
        self.0.max(FACTOR_FLOOR).ln()
    }
}

pub fn bloch_modes(spec: &ChainSpec) -> Result<Vec<BlochMode>> {
    bloch_modes_on(spec, ModeGrid::Periodic)
}

pub fn bloch_modes_on(spec: &ChainSpec, grid: ModeGrid) -> Result<Vec<BlochMode>> {
    spec.validate()?;
    let n = spec.n_spins as f64;
    Ok((1..=spec.mode_count())
        .map(|index| {
            let numerator = match grid {
                ModeGrid::Periodic => 2 * index,
                ModeGrid::AntiPeriodic => 2 * index - 1,
            } as f64;
            let phase = numerator * PI / n;
            BlochMode {
                index,
                wavevector: phase / spec.lattice_spacing,
                phase,
            }
        })
        .collect())
}

/// Bogoliubov angle `θ_k(x)` on the two-argument branch `(−π, π]`.
///
/// Only `sin²(2α)` enters the echo and it is invariant under `θ → θ + π`, so
/// the branch is immaterial. The undefined point `sin ka = 0, cos ka = x`
/// returns `0`.
pub fn bogoliubov_angle(mode: &BlochMode, x: f64) -> f64 {
    let y = -mode.sin_phase();
    let d = mode.phase.cos() - x;
    if y == 0.0 && d == 0.0 {
        return 0.0;
    }
    // atan2(-0.0, d < 0) would land on -π, outside the branch.
    let y = if y == 0.0 { 0.0 } else { y };
    y.atan2(d)
}

/// Single quasi-particle energy `ε_k(x) = 2J √(1 + x² − 2x cos ka)`.
pub fn quasiexcitation_energy(spec: &ChainSpec, mode: &BlochMode, x: f64) -> f64 {
    let radicand = 1.0 + x * x - 2.0 * x * mode.phase.cos();
    2.0 * spec.coupling * radicand.max(0.0).sqrt()
}

/// `F = 1 − sin²(θ_g − θ_e) · sin²(ε t/ħ)`, clamped to `[0, 1]`.
pub fn mode_factor(theta_ground: f64, theta_excited: f64, energy: f64, t: f64, hbar: f64) -> ModeFactor {
    // 2α = θ_g − θ_e
    let mixing = (theta_ground - theta_excited).sin().powi(2);
    let phase = (energy * t / hbar).sin().powi(2);
    let s = (mixing * phase).clamp(0.0, 1.0);
    ModeFactor(1.0 - s)
}

fn check_time(t: f64) -> Result<()> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

fn check_field(lambda_tilde: f64, delta: f64) -> Result<()> {
    if !lambda_tilde.is_finite() {
        return Err(Error::InvalidParameter(format!("effective field {lambda_tilde} is not finite")));
    }
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} must be non-negative")));
    }
    Ok(())
}

pub(crate) fn factor_for(spec: &ChainSpec, mode: &BlochMode, lambda_tilde: f64, delta: f64, t: f64) -> ModeFactor {
    let excited = lambda_tilde + delta;
    let theta_g = bogoliubov_angle(mode, lambda_tilde);
    let theta_e = bogoliubov_angle(mode, excited);
    let energy = quasiexcitation_energy(spec, mode, excited);
    mode_factor(theta_g, theta_e, energy, t, spec.hbar)
}

/// All mode factors at effective field `λ̃`, in ascending `k`.
pub fn mode_factors(
    spec: &ChainSpec,
    lambda_tilde: f64,
    delta: f64,
    t: f64,
    grid: ModeGrid,
) -> Result<Vec<ModeFactor>> {
    check_time(t)?;
    check_field(lambda_tilde, delta)?;
    Ok(bloch_modes_on(spec, grid)?
        .iter()
        .map(|mode| factor_for(spec, mode, lambda_tilde, delta, t))
        .collect())
}

/// `ln L` at effective field `λ̃` on the given mode grid.
pub fn log_echo_at(spec: &ChainSpec, lambda_tilde: f64, delta: f64, t: f64, grid: ModeGrid) -> Result<f64> {
    check_time(t)?;
    check_field(lambda_tilde, delta)?;
    let modes = bloch_modes_on(spec, grid)?;
    Ok(modes
        .iter()
        .map(|mode| factor_for(spec, mode, lambda_tilde, delta, t).ln())
        .sum())
}

/// Echo at effective field `λ̃` on the periodic grid.
pub fn loschmidt_echo_at(spec: &ChainSpec, lambda_tilde: f64, delta: f64, t: f64) -> Result<f64> {
    Ok(log_echo_at(spec, lambda_tilde, delta, t, ModeGrid::Periodic)?.exp())
}

/// Exact Loschmidt echo `L(λ̃, t)` of the rotating chain.
pub fn loschmidt_echo(spec: &ChainSpec, fields: &FieldConfig, t: f64) -> Result<f64> {
    fields.validate()?;
    loschmidt_echo_at(spec, fields.lambda_tilde(spec), fields.delta, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::characteristic_time;

    fn mode(phase: f64) -> BlochMode {
        BlochMode {
            index: 1,
            wavevector: phase,
            phase,
        }
    }

    #[test]
    fn mode_grid_small_chains() {
        let four = bloch_modes(&ChainSpec::new(4).unwrap()).unwrap();
        let ks: Vec<f64> = four.iter().map(|m| m.wavevector).collect();
        assert_eq!(ks, vec![PI / 2.0, PI]);

        let two = bloch_modes(&ChainSpec::new(2).unwrap()).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].wavevector, PI);
    }

    #[test]
    fn mode_grid_large_chain() {
        let modes = bloch_modes(&ChainSpec::new(2000).unwrap()).unwrap();
        assert_eq!(modes.len(), 1000);
        assert_eq!(modes.last().unwrap().wavevector, PI);
        assert!(modes.windows(2).all(|w| w[0].wavevector < w[1].wavevector));
        assert!(modes.iter().all(|m| m.wavevector > 0.0 && m.wavevector <= PI));
    }

    #[test]
    fn mode_grid_respects_spacing() {
        let spec = ChainSpec::with_units(4, 2.0, 1.0, 1.0).unwrap();
        let modes = bloch_modes(&spec).unwrap();
        assert_eq!(modes[1].wavevector, PI / 2.0);
        assert_eq!(modes[1].phase, PI);
    }

    #[test]
    fn antiperiodic_grid_offsets_by_half_step() {
        let modes = bloch_modes_on(&ChainSpec::new(4).unwrap(), ModeGrid::AntiPeriodic).unwrap();
        assert_eq!(modes[0].wavevector, PI / 4.0);
        assert_eq!(modes[1].wavevector, 3.0 * PI / 4.0);
    }

    #[test]
    fn bogoliubov_angle_examples() {
        assert!((bogoliubov_angle(&mode(PI / 2.0), 0.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(bogoliubov_angle(&mode(PI), 1.0), PI);
        assert!((bogoliubov_angle(&mode(PI / 2.0), 1.0) + 3.0 * PI / 4.0).abs() < 1e-15);
        // undefined point
        assert_eq!(bogoliubov_angle(&mode(PI), -1.0), 0.0);
    }

    #[test]
    fn quasiexcitation_energy_examples() {
        let spec = ChainSpec::new(2).unwrap();
        assert!((quasiexcitation_energy(&spec, &mode(PI), 1.0) - 4.0).abs() < 1e-15);
        for phase in [0.1, 1.0, 2.5] {
            assert!((quasiexcitation_energy(&spec, &mode(phase), 0.0) - 2.0).abs() < 1e-15);
        }
        assert!(quasiexcitation_energy(&spec, &mode(1e-9), 1.0) < 1e-8);
    }

    #[test]
    fn trivial_echo_limits() {
        let spec = ChainSpec::new(100).unwrap();
        let still = FieldConfig::new(1.3, 0.0, 0.4).unwrap();
        assert_eq!(loschmidt_echo(&spec, &still, 3.7).unwrap(), 1.0);
        let probe = FieldConfig::new(1.3, 0.2, 0.4).unwrap();
        assert_eq!(loschmidt_echo(&spec, &probe, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn negative_time_rejected() {
        let spec = ChainSpec::new(10).unwrap();
        let f = FieldConfig::new(2.0, 0.1, 0.0).unwrap();
        assert_eq!(loschmidt_echo(&spec, &f, -1.0), Err(Error::NegativeTime(-1.0)));
    }

    #[test]
    fn critical_echo_at_characteristic_time() {
        // Independent numpy evaluation of the same product.
        let spec = ChainSpec::new(2000).unwrap();
        let fields = FieldConfig::new(2.0, 0.01, 2.0).unwrap();
        assert_eq!(fields.lambda_tilde(&spec), 1.0);
        let l = loschmidt_echo(&spec, &fields, characteristic_time(&spec)).unwrap();
        assert!((l - 0.963746761423739).abs() < 1e-12, "{l}");
    }

    #[test]
    fn factors_never_leave_unit_interval() {
        let spec = ChainSpec::new(64).unwrap();
        for f in mode_factors(&spec, 0.97, 0.05, 11.3, ModeGrid::Periodic).unwrap() {
            assert!((0.0..=1.0).contains(&f.value()));
        }
    }
}
