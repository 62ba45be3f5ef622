//! Run configuration files and output serialisation.
//!
//! Numbers are written with 17 significant digits so regenerated datasets
//! compare byte for byte. Files are written to a temporary sibling and
//! renamed into place.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chain::{ChainSpec, FieldConfig};
use crate::error::{Error, Result};
use crate::protocol::{NoiseModel, ProtocolConfig};

/// Scan settings for echo curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
    #[serde(default)]
    pub time: Option<f64>,
}

/// Protocol settings; the chain comes from the enclosing [`RunConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolSection {
    pub true_omega: f64,
    pub sigma: f64,
    #[serde(default)]
    pub noise_model: NoiseModel,
    pub delta: f64,
    #[serde(default)]
    pub time: Option<f64>,
    pub scan_points: usize,
    pub trials: usize,
    pub seed: u64,
}

/// A complete run description, read from one JSON document.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub chain: ChainSpec,
    #[serde(default)]
    pub fields: Option<FieldConfig>,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub protocol: Option<ProtocolSection>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.chain.validate()?;
        if let Some(fields) = &self.fields {
            fields.validate()?;
        }
        if let Some(grid) = &self.grid {
            if grid.points == 0 || !(grid.omega_min <= grid.omega_max) {
                return Err(Error::InvalidGrid(format!(
                    "[{}, {}] with {} points",
                    grid.omega_min, grid.omega_max, grid.points
                )));
            }
        }
        if let Some(config) = self.protocol_config() {
            config.validate()?;
        }
        Ok(())
    }

    pub fn protocol_config(&self) -> Option<ProtocolConfig> {
        self.protocol.map(|p| ProtocolConfig {
            true_omega: p.true_omega,
            sigma: p.sigma,
            noise_model: p.noise_model,
            spec: self.chain,
            delta: p.delta,
            time: p.time,
            scan_points: p.scan_points,
            trials: p.trials,
            seed: p.seed,
        })
    }
}

/// 17 significant digits in scientific notation.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text with `header` and pre-formatted rows.
pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
