use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analytics::{EligibilityCriteria, DEFAULT_QUADRANT_THRESHOLD};
use crate::error::{Error, Result};
use crate::model::CostVector;

/// Environment variable naming the default config file for the CLI.
pub const CONFIG_ENV: &str = "RESEARCH_EFFICIENCY_CONFIG";

/// Run-time settings. Every field has a default, so a TOML file only needs
/// the values it overrides:
///
/// ```toml
/// quadrant_threshold = 0.5
/// precision = 3
///
/// [costs]
/// fp_cost = 111.7
///
/// [eligibility]
/// min_universities = 24
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AssessmentConfig {
    pub costs: CostVector,
    pub quadrant_threshold: f64,
    pub eligibility: EligibilityCriteria,
    /// When false every subfield is assessed regardless of eligibility.
    pub apply_filter: bool,
    /// Decimals in delimited and text tables.
    pub precision: usize,
    /// Citation census date, carried into reports as metadata.
    pub census_date: Option<String>,
}

impl Default for AssessmentConfig {
    fn default() -> Self {
        AssessmentConfig {
            costs: CostVector::default(),
            quadrant_threshold: DEFAULT_QUADRANT_THRESHOLD,
            eligibility: EligibilityCriteria::default(),
            apply_filter: true,
            precision: 3,
            census_date: None,
        }
    }
}

impl AssessmentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: AssessmentConfig =
            toml::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::InvalidInput(msg) => Error::InvalidInput(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.costs.check()?;
        if !(0.0..=1.0).contains(&self.quadrant_threshold) {
            return Err(Error::InvalidInput(format!(
                "quadrant_threshold must lie in [0, 1], got {}",
                self.quadrant_threshold
            )));
        }
        let f = self.eligibility.min_fraction_publishing;
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::InvalidInput(format!(
                "eligibility.min_fraction_publishing must lie in [0, 1], got {f}"
            )));
        }
        if !(1..=12).contains(&self.precision) {
            return Err(Error::InvalidInput(format!(
                "precision must be between 1 and 12 decimals, got {}",
                self.precision
            )));
        }
        Ok(())
    }
}
