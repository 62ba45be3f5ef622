//! Loschmidt-echo gyroscope on a transverse-field Ising chain.
//!
//! A probe qubit coupled with strength `δ` to a periodic Ising chain makes
//! the chain evolve under two slightly different transverse fields. Rotation
//! at velocity `Ω` shifts the field to `λ̃ = λ − ħΩ/(2J)`, and the echo
//! between the two branches collapses when `λ̃` crosses the critical point.
//! Locating that collapse measures `Ω`.
//!
//! ## Modules
//!
//! - [`chain`]: chain geometry, units and the rotation-shifted field
//! - [`echo`]: the exact free-fermion echo product
//! - [`approx`]: cutoff partial sum and Gaussian closed forms
//! - [`oracle`]: dense exact diagonalisation and the rotating-frame check
//! - [`analysis`]: echo curves, half-widths, the `√η` fit, collapse checks
//! - [`protocol`]: Monte Carlo model of the sensing workflow
//! - [`io`], [`cli`]: run configs, CSV/JSON output, the `tfim-gyro` binary
//!
//! ## Examples
//!
//! ```text
//! examples/
//! ├── echo_curve.rs            # echo against rotation velocity
//! ├── half_width.rs            # L = 1/2 crossings of one valley
//! ├── eta_fit.rs               # half-width against δ and the √η fit
//! ├── scaling_collapse.rs      # widths at equal δ√N
//! ├── cutoff_approximation.rs  # exact product against the closed forms
//! ├── dense_oracle.rs          # product formula against exact diagonalisation
//! ├── rotating_frame.rs        # lab-frame integration against H_eff
//! ├── sensing_protocol.rs      # pre-measurement, field window, scan
//! └── resolution_budget.rs     # ΔΩ and the usefulness bound
//! ```
//!
//! ```bash
//! cargo run --release --example echo_curve
//! cargo run --release --example sensing_protocol
//! ```
//!
//! ## Quick start
//!
//! ```
//! use tfim_gyro::chain::{characteristic_time, ChainSpec, FieldConfig};
//! use tfim_gyro::echo::loschmidt_echo;
//!
//! let spec = ChainSpec::new(2000)?;
//! let fields = FieldConfig::new(2.0, 0.01, 2.0)?;
//! let l = loschmidt_echo(&spec, &fields, characteristic_time(&spec))?;
//! assert!(l > 0.0 && l < 1.0);
//! # Ok::<(), tfim_gyro::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod analysis;
pub mod approx;
pub mod chain;
pub mod cli;
pub mod echo;
mod error;
pub mod io;
pub mod oracle;
pub mod protocol;

pub use chain::{ChainSpec, FieldConfig};
pub use error::{Error, Result};
