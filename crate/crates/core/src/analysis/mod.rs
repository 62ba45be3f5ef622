//! Echo curves, valley widths, the `√η` fit and the resolution budget.

mod collapse;
mod curve;
mod fit;
mod halfwidth;

pub use collapse::{collapse_check, CollapseCase, CollapseEntry, CollapseReport, COLLAPSE_SPREAD_LIMIT, COLLAPSE_TOLERANCE};
pub use curve::{scan_curve, uniform_grid, EchoCurve, EchoSample};
pub use fit::{constraint_check, fit_eta, resolution, ConstraintCheck, EtaFit, CONSTRAINT_COEFFICIENT, SQRT_ETA_REFERENCE};
pub use halfwidth::{half_width, HalfWidthConvention, HalfWidthResult, RESIDUAL_TOLERANCE};
