//! Dense exact-diagonalisation reference for small chains.
//!
//! Everything here works from definitions: the many-body Hamiltonian is
//! built explicitly, the echo is the overlap of two evolved ground states,
//! and the rotating-frame Hamiltonian is checked by integrating the lab-frame
//! problem and transforming it. None of it depends on the free-fermion
//! solution in [`crate::echo`].

mod frame;
mod hamiltonian;

pub use frame::{frame_convergence_study, frame_equivalence_check, FrameCheck, MAX_FRAME_SITES};
pub use hamiltonian::{
    build_hamiltonian, ground_state, ising_matrix, DenseHamiltonian, GroundState, SpinState, Units, C64, MAX_SITES,
};

use crate::error::{Error, Result};

/// Echo from the dense oracle together with ground-state metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdEcho {
    pub value: f64,
    pub degenerate: bool,
    pub gap: f64,
}

/// Reusable spectral data for evaluating the dense echo at many times.
///
/// `L(t) = |⟨G| e^{iH_g t/ħ} e^{−iH_e t/ħ} |G⟩|² = |Σ_j w_j e^{−i(E_j − E_G)t/ħ}|²`
/// with `w_j = |⟨e_j|G⟩|²` over the eigenbasis of `H_e`.
#[derive(Debug, Clone)]
pub struct EdEchoKernel {
    weights: Vec<f64>,
    shifted_energies: Vec<f64>,
    hbar: f64,
    degenerate: bool,
    gap: f64,
}

impl EdEchoKernel {
    pub fn new(n: usize, lambda_eff: f64, delta: f64, units: Units) -> Result<Self> {
        let h_g = build_hamiltonian(n, lambda_eff, delta, false, units)?;
        let h_e = build_hamiltonian(n, lambda_eff, delta, true, units)?;
        let ground = ground_state(&h_g, units);
        let (energies, vectors) = h_e.eigen();
        let g = ground.state.amplitudes().map(|a| a.re);
        let weights = (0..energies.len())
            .map(|j| vectors.column(j).dot(&g).powi(2))
            .collect();
        Ok(Self {
            weights,
            shifted_energies: energies.iter().map(|e| e - ground.energy).collect(),
            hbar: units.hbar,
            degenerate: ground.degenerate,
            gap: ground.gap,
        })
    }

    pub fn echo(&self, t: f64) -> Result<EdEcho> {
        if t < 0.0 || !t.is_finite() {
            return Err(Error::NegativeTime(t));
        }
        let amplitude: C64 = self
            .weights
            .iter()
            .zip(&self.shifted_energies)
            .map(|(w, e)| C64::from_polar(*w, -e * t / self.hbar))
            .sum();
        Ok(EdEcho {
            value: amplitude.norm_sqr().min(1.0),
            degenerate: self.degenerate,
            gap: self.gap,
        })
    }
}

/// Echo of the probe-coupled chain from its definition, for `N ≤ 12`.
pub fn loschmidt_echo_ed(n: usize, lambda_eff: f64, delta: f64, t: f64, units: Units) -> Result<EdEcho> {
    EdEchoKernel::new(n, lambda_eff, delta, units)?.echo(t)
}
