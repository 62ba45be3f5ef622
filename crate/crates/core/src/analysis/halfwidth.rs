//! Width of the echo valley at `L = ½`.
//!
//! Distances are measured in the detuning `ε = 1 − λ̃ − δ`, whose origin is
//! the critical point of the probe-excited branch. The valley is located on
//! a probe grid, each flank is bracketed by geometric growth from the valley
//! and the `L = ½` crossing is refined by bisection.

use serde::{Deserialize, Serialize};

use crate::chain::ChainSpec;
use crate::echo::loschmidt_echo_at;
use crate::error::{Error, Result};

/// Bisection target on `|L − ½|`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;
const PROBE_POINTS: usize = 801;
const MAX_BISECTIONS: usize = 200;

/// Which width a result or fit refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum HalfWidthConvention {
    /// Half of the `L = ½` chord, the centre-to-crossing distance of a
    /// symmetric valley.
    #[default]
    OneSided,
    /// The whole `L = ½` chord.
    FullChord,
}

impl HalfWidthConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::OneSided => "one_sided",
            Self::FullChord => "full_chord",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfWidthResult {
    /// One-sided half-width `ε₀`, in field units.
    pub epsilon0: f64,
    /// `2J ε₀ / ħ`.
    pub delta_omega: f64,
    /// Full chord `ε₊ − ε₋`, in field units.
    pub chord: f64,
    /// `2J (ε₊ − ε₋) / ħ`.
    pub chord_omega: f64,
    /// Signed detunings of the lower and upper crossings.
    pub crossings: (f64, f64),
    /// Outermost points of the two solver brackets.
    pub bracket: (f64, f64),
    pub residual: f64,
    pub time: f64,
    pub min_echo: f64,
    /// Rotation velocity at `ε = 0` for the applied field.
    pub omega_center: f64,
}

impl HalfWidthResult {
    /// Width in field units under `convention`.
    pub fn width(&self, convention: HalfWidthConvention) -> f64 {
        match convention {
            HalfWidthConvention::OneSided => self.epsilon0,
            HalfWidthConvention::FullChord => self.chord,
        }
    }

    /// Width in rotation-velocity units under `convention`.
    pub fn width_omega(&self, convention: HalfWidthConvention) -> f64 {
        match convention {
            HalfWidthConvention::OneSided => self.delta_omega,
            HalfWidthConvention::FullChord => self.chord_omega,
        }
    }
}

struct Flank {
    crossing: f64,
    outer: f64,
    residual: f64,
}

fn bisect(f: &impl Fn(f64) -> Result<f64>, mut inside: f64, mut outside: f64) -> Result<(f64, f64)> {
    // f(inside) < 0 <= f(outside)
    let mut best = (outside, f(outside)?.abs());
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (inside + outside);
        let value = f(mid)?;
        if value.abs() < best.1 {
            best = (mid, value.abs());
        }
        if value.abs() < RESIDUAL_TOLERANCE || (outside - inside).abs() <= f64::EPSILON * mid.abs().max(1.0) {
            break;
        }
        if value < 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(best)
}

fn flank(
    f: &impl Fn(f64) -> Result<f64>,
    anchor: f64,
    direction: f64,
    window: f64,
    side: &'static str,
) -> Result<Flank> {
    let mut inside = anchor;
    let mut step = window * 1e-6;
    loop {
        let mut outer = anchor + direction * step;
        let capped = outer.abs() >= window;
        if capped {
            outer = direction * window;
        }
        if f(outer)? >= 0.0 {
            let (crossing, residual) = bisect(f, inside, outer)?;
            return Ok(Flank {
                crossing,
                outer,
                residual,
            });
        }
        if capped {
            return Err(Error::CrossingNotBracketed { side, window });
        }
        inside = outer;
        step *= 2.0;
    }
}

/// Half-width of the echo valley at time `time`, searching `|ε| ≤ window`.
///
/// Fails with [`Error::ValleyTooShallow`] when the echo stays above ½
/// everywhere in the window.
pub fn half_width(spec: &ChainSpec, delta: f64, lambda: f64, time: f64, window: f64) -> Result<HalfWidthResult> {
    spec.validate()?;
    if !(window.is_finite() && window > 0.0) {
        return Err(Error::InvalidParameter(format!("search window {window} must be positive")));
    }
    let echo = |eps: f64| loschmidt_echo_at(spec, 1.0 - delta - eps, delta, time);
    let f = |eps: f64| Ok(echo(eps)? - 0.5);

    let step = 2.0 * window / (PROBE_POINTS - 1) as f64;
    let mut anchor = (0.0, echo(0.0)?);
    let mut min_echo = anchor.1;
    let mut lowest = anchor;
    for i in 0..PROBE_POINTS {
        let eps = -window + step * i as f64;
        let l = echo(eps)?;
        if l < lowest.1 {
            lowest = (eps, l);
        }
        min_echo = min_echo.min(l);
    }
    if min_echo > 0.5 {
        return Err(Error::ValleyTooShallow { min_echo });
    }
    if anchor.1 >= 0.5 {
        anchor = lowest;
    }

    let lower = flank(&f, anchor.0, -1.0, window, "lower")?;
    let upper = flank(&f, anchor.0, 1.0, window, "upper")?;
    let chord = upper.crossing - lower.crossing;
    let epsilon0 = 0.5 * chord;
    Ok(HalfWidthResult {
        epsilon0,
        delta_omega: spec.field_to_omega(epsilon0),
        chord,
        chord_omega: spec.field_to_omega(chord),
        crossings: (lower.crossing, upper.crossing),
        bracket: (lower.outer, upper.outer),
        residual: lower.residual.max(upper.residual),
        time,
        min_echo,
        omega_center: spec.field_to_omega(lambda - (1.0 - delta)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::characteristic_time;

    #[test]
    fn shallow_valley_reported() {
        let spec = ChainSpec::new(500).unwrap();
        let t0 = characteristic_time(&spec);
        match half_width(&spec, 0.01, 2.0, t0, 0.5) {
            Err(Error::ValleyTooShallow { min_echo }) => assert!(min_echo > 0.5 && min_echo < 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn crossing_outside_window() {
        let spec = ChainSpec::new(2000).unwrap();
        // valley exists at t = 2 but its flanks sit well beyond 0.01
        assert!(matches!(
            half_width(&spec, 0.032, 2.0, 2.0, 0.01),
            Err(Error::CrossingNotBracketed { .. })
        ));
    }

    #[test]
    fn resolves_a_deep_valley() {
        let spec = ChainSpec::new(2000).unwrap();
        let r = half_width(&spec, 0.032, 2.0, 2.0, 1.0).unwrap();
        assert!(r.residual < RESIDUAL_TOLERANCE);
        assert!(r.crossings.0 < 0.0 && r.crossings.1 > 0.0);
        assert!(r.epsilon0 > 0.0);
        assert_eq!(r.delta_omega, 2.0 * r.epsilon0);
        assert_eq!(r.chord, 2.0 * r.epsilon0);
        for eps in [r.crossings.0, r.crossings.1] {
            let l = loschmidt_echo_at(&spec, 1.0 - 0.032 - eps, 0.032, 2.0).unwrap();
            assert!((l - 0.5).abs() < RESIDUAL_TOLERANCE);
        }
        assert!((r.omega_center - 2.0 * (1.0 + 0.032)).abs() < 1e-12);
    }
}
