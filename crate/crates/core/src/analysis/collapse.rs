use rayon::prelude::*;
use serde::Serialize;

use super::halfwidth::{half_width, HalfWidthConvention};
use crate::chain::ChainSpec;
use crate::error::{Error, Result};

/// Largest allowed relative spread of `δ√N` across a collapse set.
pub const COLLAPSE_SPREAD_LIMIT: f64 = 0.02;
/// Pass threshold on the relative spread of the widths.
pub const COLLAPSE_TOLERANCE: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseCase {
    pub spec: ChainSpec,
    pub delta: f64,
}

impl CollapseCase {
    pub fn new(n_spins: usize, delta: f64) -> Result<Self> {
        Ok(Self {
            spec: ChainSpec::new(n_spins)?,
            delta,
        })
    }

    pub fn delta_sqrt_n(&self) -> f64 {
        self.delta * (self.spec.n_spins as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollapseEntry {
    pub n: usize,
    pub delta: f64,
    pub delta_sqrt_n: f64,
    /// Width in rotation-velocity units under the report's convention.
    pub width_omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollapseReport {
    pub convention: HalfWidthConvention,
    pub entries: Vec<CollapseEntry>,
    /// `(max − min)/min` over the widths.
    pub max_relative_deviation: f64,
    pub passed: bool,
}

fn relative_spread(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = values.clone().fold(f64::NEG_INFINITY, f64::max);
    let min = values.fold(f64::INFINITY, f64::min);
    (max - min) / min
}

/// Checks that the valley width in `Ω` depends on `δ√N` alone.
pub fn collapse_check(
    cases: &[CollapseCase],
    lambda: f64,
    time: f64,
    window: f64,
    convention: HalfWidthConvention,
) -> Result<CollapseReport> {
    if cases.is_empty() {
        return Err(Error::InvalidParameter("no collapse cases".into()));
    }
    let spread = relative_spread(cases.iter().map(CollapseCase::delta_sqrt_n));
    if !(spread <= COLLAPSE_SPREAD_LIMIT) {
        return Err(Error::CollapsePrecondition {
            spread,
            limit: COLLAPSE_SPREAD_LIMIT,
        });
    }
    let entries = cases
        .par_iter()
        .map(|case| {
            let r = half_width(&case.spec, case.delta, lambda, time, window)?;
            Ok(CollapseEntry {
                n: case.spec.n_spins,
                delta: case.delta,
                delta_sqrt_n: case.delta_sqrt_n(),
                width_omega: r.width_omega(convention),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let deviation = relative_spread(entries.iter().map(|e| e.width_omega));
    Ok(CollapseReport {
        convention,
        entries,
        max_relative_deviation: deviation,
        passed: deviation < COLLAPSE_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatched_scaling_variable_rejected() {
        let cases = [CollapseCase::new(500, 0.07).unwrap(), CollapseCase::new(500, 0.01).unwrap()];
        assert!(matches!(
            collapse_check(&cases, 2.0, 0.5, 1.0, HalfWidthConvention::OneSided),
            Err(Error::CollapsePrecondition { .. })
        ));
    }

    #[test]
    fn identical_cases_have_zero_deviation() {
        let cases = [CollapseCase::new(500, 0.05).unwrap(); 2];
        let report = collapse_check(&cases, 2.0, 5.0, 1.0, HalfWidthConvention::OneSided).unwrap();
        assert_eq!(report.max_relative_deviation, 0.0);
        assert!(report.passed);
    }

    #[test]
    fn shallow_valleys_propagate() {
        let cases = [CollapseCase::new(500, 0.05).unwrap(); 2];
        assert!(matches!(
            collapse_check(&cases, 2.0, 0.5, 1.0, HalfWidthConvention::OneSided),
            Err(Error::ValleyTooShallow { .. })
        ));
    }

    #[test]
    fn standard_case_list_passes_precondition() {
        let cases: Vec<CollapseCase> = [(200, 0.1), (500, 0.063), (2000, 0.032), (20000, 0.01)]
            .iter()
            .map(|&(n, d)| CollapseCase::new(n, d).unwrap())
            .collect();
        let spread = relative_spread(cases.iter().map(CollapseCase::delta_sqrt_n));
        assert!(spread > 0.01 && spread < COLLAPSE_SPREAD_LIMIT, "{spread}");
    }
}
