//! Scoring of recorded exercise repetitions against reference templates.
//!
//! A recording is a [`KeypointSequence`] of 33-landmark skeleton frames. Each
//! frame becomes a vector of angle features, frames are compared with the MED
//! distance, and sequences are aligned with a length-aware DTW variant that
//! yields a final score in `[0, 100]`.

pub mod alignment;
pub mod error;
pub mod evaluation;
pub mod features;
pub mod med;
pub mod scoring;
pub mod skeleton;
pub mod synthetic;

pub use alignment::{AlignmentResult, Method, PenaltyConfig};
pub use error::{Error, Result};
pub use evaluation::{DatasetManifest, EvaluationReport, MatchResult, Template};
pub use features::{FeatureExtractor, FeatureMode, FeatureRegistry, FeatureVector};
pub use med::MedParams;
pub use scoring::{Scorer, ScoringConfig};
pub use skeleton::{KeypointSequence, Landmark, SkeletonFrame};
