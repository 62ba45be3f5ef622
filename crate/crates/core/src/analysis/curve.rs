use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{effective_lambda, ChainSpec};
use crate::echo::loschmidt_echo_at;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EchoSample {
    pub omega: f64,
    pub lambda_tilde: f64,
    pub echo: f64,
}

/// Echo sampled over rotation velocity at fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct EchoCurve {
    pub spec: ChainSpec,
    pub delta: f64,
    pub lambda: f64,
    pub time: f64,
    pub samples: Vec<EchoSample>,
}

impl EchoCurve {
    /// Sample with the smallest echo; ties resolve to the lowest `Ω`.
    pub fn minimum(&self) -> Option<&EchoSample> {
        self.samples
            .iter()
            .fold(None, |best: Option<&EchoSample>, s| match best {
                Some(b) if b.echo <= s.echo => Some(b),
                _ => Some(s),
            })
    }

    /// Number of strict interior local minima.
    pub fn local_minima(&self) -> usize {
        let mut count = 0;
        let echoes: Vec<f64> = self.samples.iter().map(|s| s.echo).collect();
        let mut i = 1;
        while i + 1 < echoes.len() {
            if echoes[i] < echoes[i - 1] {
                // walk over a flat bottom
                let mut j = i;
                while j + 1 < echoes.len() && echoes[j + 1] == echoes[i] {
                    j += 1;
                }
                if j + 1 < echoes.len() && echoes[j + 1] > echoes[i] {
                    count += 1;
                }
                i = j + 1;
            } else {
                i += 1;
            }
        }
        count
    }
}

/// `points` uniformly spaced values in `[min, max]`; a single point is `min`.
pub fn uniform_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(Error::InvalidGrid("grid needs at least one point".into()));
    }
    if !min.is_finite() || !max.is_finite() {
        return Err(Error::InvalidGrid("grid bounds must be finite".into()));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    if max <= min {
        return Err(Error::InvalidGrid(format!("max {max} must exceed min {min}")));
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { max } else { min + step * i as f64 })
        .collect())
}

/// Echo at every rotation velocity of `omega_grid` with the chain held at
/// applied field `lambda`. Samples are computed in parallel; each is an
/// independent sequential mode sum, so the output does not depend on the
/// thread count.
pub fn scan_curve(spec: &ChainSpec, delta: f64, lambda: f64, time: f64, omega_grid: &[f64]) -> Result<EchoCurve> {
    spec.validate()?;
    if omega_grid.is_empty() {
        return Err(Error::InvalidGrid("empty rotation-velocity grid".into()));
    }
    if omega_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid("rotation velocities must be strictly increasing".into()));
    }
    let samples = omega_grid
        .par_iter()
        .map(|&omega| {
            let lambda_tilde = effective_lambda(spec, lambda, omega);
            let echo = loschmidt_echo_at(spec, lambda_tilde, delta, time)?;
            Ok(EchoSample {
                omega,
                lambda_tilde,
                echo,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EchoCurve {
        spec: *spec,
        delta,
        lambda,
        time,
        samples,
    })
}
