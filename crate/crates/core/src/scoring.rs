use serde::{Deserialize, Serialize};

use crate::alignment::{align_matrices, distance_matrix, AlignmentResult, Method, PenaltyConfig};
use crate::error::{Error, Result};
use crate::features::{
    CoefficientTable, FeatureExtractor, FeatureMode, FeatureRegistry, FeatureVector, DEFAULT_MIN_VISIBILITY,
};
use crate::med::MedParams;
use crate::skeleton::KeypointSequence;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScoringConfig {
    pub method: Method,
    pub mode: FeatureMode,
    pub params: MedParams,
    pub penalty: PenaltyConfig,
    pub min_visibility: f64,
}

impl Default for ScoringConfig {
    fn default() -> Self {
        Self {
            method: Method::Acdtw,
            mode: FeatureMode::Both,
            params: MedParams::default(),
            penalty: PenaltyConfig::default(),
            min_visibility: DEFAULT_MIN_VISIBILITY,
        }
    }
}

impl ScoringConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.penalty.validate()?;
        if !(0.0..=1.0).contains(&self.min_visibility) {
            return Err(Error::Config(format!(
                "min visibility {} outside [0, 1]",
                self.min_visibility
            )));
        }
        Ok(())
    }
}

/// Scores test sequences against templates with one fixed configuration.
#[derive(Debug, Clone)]
pub struct Scorer {
    config: ScoringConfig,
    extractor: FeatureExtractor,
}

impl Scorer {
    /// Uses the default registry for `config.mode`.
    pub fn new(config: ScoringConfig) -> Result<Self> {
        let registry = FeatureRegistry::default_for(config.mode);
        Self::with_registry(config, registry, CoefficientTable::default())
    }

    pub fn with_registry(
        config: ScoringConfig,
        registry: FeatureRegistry,
        coefficients: CoefficientTable,
    ) -> Result<Self> {
        config.validate()?;
        let extractor = FeatureExtractor::new(registry, coefficients, config.min_visibility)?;
        Ok(Self { config, extractor })
    }

    pub fn config(&self) -> &ScoringConfig {
        &self.config
    }

    pub fn extractor(&self) -> &FeatureExtractor {
        &self.extractor
    }

    pub fn features(&self, seq: &KeypointSequence) -> Vec<FeatureVector> {
        self.extractor.extract_sequence(seq)
    }

    /// Aligns precomputed feature sequences; `template` supplies the rows.
    pub fn align_features(&self, template: &[FeatureVector], test: &[FeatureVector]) -> Result<AlignmentResult> {
        let dm = distance_matrix(template, test, &self.config.params)?;
        Ok(align_matrices(&dm, self.config.method, &self.config.penalty))
    }

    pub fn score(&self, template: &KeypointSequence, test: &KeypointSequence) -> Result<AlignmentResult> {
        self.align_features(&self.features(template), &self.features(test))
    }
}
