//! Numerical check of the rotating-frame Hamiltonian.
//!
//! In the lab frame the spin axes turn about `x` by `θ(t) = Ωt`, so
//! `σᶻ(t) = sin θ σʸ + cos θ σᶻ` while `σˣ` is unchanged. Transforming with
//! `R(θ) = exp(−iθ Σσˣ/2)` must reproduce evolution under the static
//! `H_eff = −J Σ [σᶻσᶻ + (λ − ħΩ/(2J)) σˣ]`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::hamiltonian::{SpinState, Units, C64};
use crate::error::{Error, Result};

pub const MAX_FRAME_SITES: usize = 4;
const MIN_STEPS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameCheck {
    pub steps: usize,
    /// `max_t 1 − |⟨ψ_eff(t)|R(θ(t)) ψ_lab(t)⟩|²` over step boundaries.
    pub max_infidelity: f64,
    /// `max_t | ‖ψ_lab(t)‖ − 1 |`.
    pub max_norm_drift: f64,
}

#[derive(Clone, Copy)]
enum Pauli {
    X,
    Y,
    Z,
}

/// Single-site Pauli operator on site `site` of an `n`-site register.
fn pauli(n: usize, site: usize, which: Pauli) -> DMatrix<C64> {
    let dim = 1usize << n;
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for col in 0..dim {
        let up = col >> site & 1 == 0;
        match which {
            Pauli::X => m[(col ^ (1 << site), col)] = C64::new(1.0, 0.0),
            // σʸ|↑⟩ = i|↓⟩, σʸ|↓⟩ = −i|↑⟩
            Pauli::Y => m[(col ^ (1 << site), col)] = C64::new(0.0, if up { 1.0 } else { -1.0 }),
            Pauli::Z => m[(col, col)] = C64::new(if up { 1.0 } else { -1.0 }, 0.0),
        }
    }
    m
}

struct Operators {
    x: Vec<DMatrix<C64>>,
    y: Vec<DMatrix<C64>>,
    z: Vec<DMatrix<C64>>,
}

impl Operators {
    fn new(n: usize) -> Self {
        Self {
            x: (0..n).map(|i| pauli(n, i, Pauli::X)).collect(),
            y: (0..n).map(|i| pauli(n, i, Pauli::Y)).collect(),
            z: (0..n).map(|i| pauli(n, i, Pauli::Z)).collect(),
        }
    }

    fn sites(&self) -> usize {
        self.x.len()
    }

    /// `−J Σ [σᶻ_i(θ) σᶻ_{i+1}(θ) + field σˣ_i]` with the `σᶻ` axis turned by `θ`.
    fn hamiltonian(&self, theta: f64, field: f64, coupling: f64) -> DMatrix<C64> {
        let n = self.sites();
        let (s, c) = theta.sin_cos();
        let turned: Vec<DMatrix<C64>> = (0..n)
            .map(|i| &self.y[i] * C64::new(s, 0.0) + &self.z[i] * C64::new(c, 0.0))
            .collect();
        let dim = 1usize << n;
        let mut h = DMatrix::<C64>::zeros(dim, dim);
        for i in 0..n {
            h += &turned[i] * &turned[(i + 1) % n];
            h += &self.x[i] * C64::new(field, 0.0);
        }
        h * C64::new(-coupling, 0.0)
    }
}

/// `exp(−i H τ/ħ)` via the Hermitian eigendecomposition.
fn propagator(h: DMatrix<C64>, tau: f64, hbar: f64) -> DMatrix<C64> {
    let eig = SymmetricEigen::new(h);
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| C64::from_polar(1.0, -e * tau / hbar)));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Applies `R(θ) = Π_i [cos(θ/2) − i sin(θ/2) σˣ_i]`.
fn rotate(state: &DVector<C64>, n: usize, theta: f64) -> DVector<C64> {
    let (s, c) = (0.5 * theta).sin_cos();
    let mut out = state.clone();
    for site in 0..n {
        let prev = out.clone();
        for idx in 0..prev.len() {
            out[idx] = prev[idx] * c + prev[idx ^ (1 << site)] * C64::new(0.0, -s);
        }
    }
    out
}

/// Integrates the lab-frame problem with `steps` midpoint-exponential steps
/// from `|↑…↑⟩` and compares with the static effective Hamiltonian.
pub fn frame_equivalence_check(
    n: usize,
    lambda: f64,
    omega: f64,
    t_max: f64,
    steps: usize,
    units: Units,
) -> Result<FrameCheck> {
    if !(1..=MAX_FRAME_SITES).contains(&n) {
        return Err(Error::FrameSizeCap(n));
    }
    if steps < MIN_STEPS {
        return Err(Error::TooFewSteps(steps));
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidParameter(format!("t_max = {t_max} must be positive")));
    }
    let effective_field = lambda - units.hbar * omega / (2.0 * units.coupling);
    compare_frames(n, lambda, omega, effective_field, t_max, steps, units)
}

fn compare_frames(
    n: usize,
    lambda: f64,
    omega: f64,
    effective_field: f64,
    t_max: f64,
    steps: usize,
    units: Units,
) -> Result<FrameCheck> {
    let ops = Operators::new(n);
    let (j, hbar) = (units.coupling, units.hbar);
    let initial = SpinState::all_up(n).amplitudes().clone();
    let eff = SymmetricEigen::new(ops.hamiltonian(0.0, effective_field, j));
    let eff_coeffs = eff.eigenvectors.adjoint() * &initial;

    let dt = t_max / steps as f64;
    let mut lab = initial;
    let mut max_infidelity = 0.0f64;
    let mut max_norm_drift = 0.0f64;
    for step in 0..steps {
        let t_mid = (step as f64 + 0.5) * dt;
        lab = propagator(ops.hamiltonian(omega * t_mid, lambda, j), dt, hbar) * lab;

        let t = (step + 1) as f64 * dt;
        let phased = DVector::from_iterator(
            eff_coeffs.len(),
            eff_coeffs
                .iter()
                .zip(eff.eigenvalues.iter())
                .map(|(a, e)| a * C64::from_polar(1.0, -e * t / hbar)),
        );
        let effective = &eff.eigenvectors * phased;
        let rotated = rotate(&lab, n, omega * t);
        let fidelity = effective.dotc(&rotated).norm_sqr();
        max_infidelity = max_infidelity.max(1.0 - fidelity);
        max_norm_drift = max_norm_drift.max((lab.norm() - 1.0).abs());
    }
    Ok(FrameCheck {
        steps,
        max_infidelity: max_infidelity.max(0.0),
        max_norm_drift,
    })
}

/// Repeats the frame check, doubling the step count `halvings` times.
pub fn frame_convergence_study(
    n: usize,
    lambda: f64,
    omega: f64,
    t_max: f64,
    initial_steps: usize,
    halvings: usize,
    units: Units,
) -> Result<Vec<FrameCheck>> {
    (0..=halvings)
        .map(|h| frame_equivalence_check(n, lambda, omega, t_max, initial_steps << h, units))
        .collect()
}
