//! Chain geometry, energy scales and the rotation-shifted transverse field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn one() -> f64 {
    1.0
}

/// Geometry and energy scales of a periodic Ising chain.
///
/// Units default to `a = J = ħ = 1`, in which every field, rotation
/// velocity and time in this crate is dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub n_spins: usize,
    #[serde(default = "one")]
    pub lattice_spacing: f64,
    #[serde(default = "one")]
    pub coupling: f64,
    #[serde(default = "one")]
    pub hbar: f64,
}

impl ChainSpec {
    /// A chain of `n_spins` sites in natural units.
    pub fn new(n_spins: usize) -> Result<Self> {
        Self::with_units(n_spins, 1.0, 1.0, 1.0)
    }

    pub fn with_units(n_spins: usize, lattice_spacing: f64, coupling: f64, hbar: f64) -> Result<Self> {
        let spec = Self {
            n_spins,
            lattice_spacing,
            coupling,
            hbar,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_spins < 2 || !self.n_spins.is_multiple_of(2) {
            return Err(Error::InvalidChain(format!(
                "N = {} must be even and at least 2",
                self.n_spins
            )));
        }
        for (name, v) in [
            ("lattice spacing", self.lattice_spacing),
            ("coupling J", self.coupling),
            ("hbar", self.hbar),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidChain(format!("{name} = {v} must be positive")));
            }
        }
        Ok(())
    }

    /// Number of Bloch modes with `k > 0`, i.e. `N/2`.
    pub fn mode_count(&self) -> usize {
        self.n_spins / 2
    }

    /// Characteristic spin-interaction frequency `ω₀ = J/ħ`.
    pub fn omega0(&self) -> f64 {
        self.coupling / self.hbar
    }

    /// Converts a field detuning to the equivalent rotation velocity, `2J·x/ħ`.
    pub fn field_to_omega(&self, field: f64) -> f64 {
        2.0 * self.coupling * field / self.hbar
    }

    /// Converts a rotation velocity to the equivalent field shift, `ħΩ/(2J)`.
    pub fn omega_to_field(&self, omega: f64) -> f64 {
        self.hbar * omega / (2.0 * self.coupling)
    }
}

/// Transverse field, probe coupling and rotation velocity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub lambda: f64,
    pub delta: f64,
    pub omega: f64,
}

impl FieldConfig {
    pub fn new(lambda: f64, delta: f64, omega: f64) -> Result<Self> {
        let fields = Self { lambda, delta, omega };
        fields.validate()?;
        Ok(fields)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || !self.omega.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "lambda = {} and omega = {} must be finite",
                self.lambda, self.omega
            )));
        }
        if !(self.delta.is_finite() && self.delta >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "delta = {} must be non-negative",
                self.delta
            )));
        }
        Ok(())
    }

    pub fn lambda_tilde(&self, spec: &ChainSpec) -> f64 {
        effective_lambda(spec, self.lambda, self.omega)
    }
}

/// Effective transverse field seen in the co-rotating frame, `λ̃ = λ − ħΩ/(2J)`.
///
/// Rotation about the field axis enters the Hamiltonian exactly like an
/// additional transverse field.
pub fn effective_lambda(spec: &ChainSpec, lambda: f64, omega: f64) -> f64 {
    lambda - spec.omega_to_field(omega)
}

/// `t₀ = ħ/(2J)`.
pub fn characteristic_time(spec: &ChainSpec) -> f64 {
    spec.hbar / (2.0 * spec.coupling)
}
