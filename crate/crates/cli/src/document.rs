//! Motion documents: one JSON object with expression strings.

use std::path::Path;

use hyperkin::{Motion, MotionSpec, TimeExpr};
use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_RANGE: (f64, f64) = (0.0, 1.0);
pub const DEFAULT_SAMPLES: usize = 101;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanarField {
    pub re: String,
    pub uni: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionDocument {
    pub b: PlanarField,
    pub b_prime: PlanarField,
    pub phi: String,
    pub psi: String,
    #[serde(default)]
    pub t_range: Option<[f64; 2]>,
    #[serde(default)]
    pub samples: Option<usize>,
}

/// A validated document with its expressions parsed.
#[derive(Debug, Clone)]
pub struct LoadedDocument {
    pub spec: MotionSpec,
    pub range: (f64, f64),
    pub samples: usize,
}

impl LoadedDocument {
    pub fn motion(&self) -> Motion {
        Motion::new(self.spec.clone())
    }

    /// Applies command-line overrides of the sampling grid.
    pub fn with_grid(
        mut self,
        range: Option<(f64, f64)>,
        samples: Option<usize>,
    ) -> Result<Self, CliError> {
        if let Some(r) = range {
            self.range = r;
        }
        if let Some(n) = samples {
            self.samples = n;
        }
        check_grid(self.range, self.samples)?;
        Ok(self)
    }

    pub fn times(&self) -> Vec<f64> {
        hyperkin::motion::sample_times(self.range.0, self.range.1, self.samples)
    }
}

fn check_grid(range: (f64, f64), samples: usize) -> Result<(), CliError> {
    if samples < 2 {
        return Err(CliError::Input(format!(
            "samples must be at least 2, got {samples}"
        )));
    }
    if !(range.0.is_finite() && range.1.is_finite() && range.0 < range.1) {
        return Err(CliError::Input(format!(
            "t range must satisfy t0 < t1, got [{}, {}]",
            range.0, range.1
        )));
    }
    Ok(())
}

fn parse_field(name: &str, src: &str) -> Result<TimeExpr, CliError> {
    TimeExpr::parse(src).map_err(|e| CliError::Input(format!("field \"{name}\": {e}")))
}

impl MotionDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("invalid motion document: {e}")))
    }

    pub fn validate(&self) -> Result<LoadedDocument, CliError> {
        let b = hyperkin::motion::PlanarExpr::new(
            parse_field("b.re", &self.b.re)?,
            parse_field("b.uni", &self.b.uni)?,
        );
        let b_prime = hyperkin::motion::PlanarExpr::new(
            parse_field("b_prime.re", &self.b_prime.re)?,
            parse_field("b_prime.uni", &self.b_prime.uni)?,
        );
        let phi = parse_field("phi", &self.phi)?;
        let psi = parse_field("psi", &self.psi)?;
        let range = self.t_range.map(|[a, b]| (a, b)).unwrap_or(DEFAULT_RANGE);
        let samples = self.samples.unwrap_or(DEFAULT_SAMPLES);
        check_grid(range, samples)?;
        Ok(LoadedDocument {
            spec: MotionSpec::new(b, b_prime, phi, psi),
            range,
            samples,
        })
    }
}

pub fn load(path: &Path) -> Result<LoadedDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    MotionDocument::from_json(&text)?.validate()
}
