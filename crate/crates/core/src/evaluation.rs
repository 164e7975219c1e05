//! Template matching and dataset-level metrics.
//!
//! A test sequence is aligned against every template; the template with the
//! highest final score decides the predicted category. Over a dataset this
//! yields matching accuracy, the share of pairs landing on the right side of
//! the 80-point line (`rate80`), and optionally Spearman's ρ against expert
//! scores.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alignment::Method;
use crate::error::{Error, Result};
use crate::features::{FeatureMode, FeatureVector};
use crate::med::MedParams;
use crate::scoring::{Scorer, ScoringConfig};
use crate::skeleton::KeypointSequence;

/// Score separating "same action" from "different action".
pub const PASS_SCORE: f64 = 80.0;

#[derive(Debug, Clone)]
pub struct Template {
    pub category: String,
    pub sequence: KeypointSequence,
}

impl Template {
    pub fn new(category: impl Into<String>, sequence: KeypointSequence) -> Self {
        Self {
            category: category.into(),
            sequence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemplateScore {
    /// Position of the template in the input list.
    pub template: usize,
    pub category: String,
    pub fs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchResult {
    /// Descending by fs; equal scores keep input order.
    pub ranked: Vec<TemplateScore>,
    pub predicted: String,
    /// Templates whose alignment failed, with the error message.
    pub failures: Vec<(usize, String)>,
}

/// Ranks templates given per-template alignment outcomes.
fn rank(outcomes: Vec<(usize, String, Result<f64>)>) -> Result<MatchResult> {
    let total = outcomes.len();
    let mut ranked = Vec::with_capacity(total);
    let mut failures = Vec::new();
    for (template, category, outcome) in outcomes {
        match outcome {
            Ok(fs) => ranked.push(TemplateScore { template, category, fs }),
            Err(e) => failures.push((template, e.to_string())),
        }
    }
    if ranked.is_empty() {
        return Err(Error::AllTemplatesFailed(total));
    }
    // stable: ties keep input order, so the first maximal template wins
    ranked.sort_by(|a, b| b.fs.total_cmp(&a.fs));
    let predicted = ranked[0].category.clone();
    Ok(MatchResult {
        ranked,
        predicted,
        failures,
    })
}

/// Matches precomputed test features against precomputed template features.
pub fn match_features(
    test: &[FeatureVector],
    templates: &[(String, Vec<FeatureVector>)],
    scorer: &Scorer,
) -> Result<MatchResult> {
    if templates.is_empty() {
        return Err(Error::Empty("template set"));
    }
    let outcomes = templates
        .iter()
        .enumerate()
        .map(|(k, (category, feats))| (k, category.clone(), scorer.align_features(feats, test).map(|r| r.fs)))
        .collect();
    rank(outcomes)
}

/// Aligns `test` against every template (each template is the reference side).
pub fn match_action(test: &KeypointSequence, templates: &[Template], scorer: &Scorer) -> Result<MatchResult> {
    let feats: Vec<(String, Vec<FeatureVector>)> = templates
        .iter()
        .map(|t| (t.category.clone(), scorer.features(&t.sequence)))
        .collect();
    match_features(&scorer.features(test), &feats, scorer)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestOutcome {
    pub test: String,
    pub category: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expert_score: Option<f64>,
    pub ranked: Vec<TemplateScore>,
    pub predicted: String,
    pub correct: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairScore {
    pub test: usize,
    pub template: usize,
    pub same_class: bool,
    pub fs: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    pub tests: Vec<TestOutcome>,
    pub pairs: Vec<PairScore>,
}

impl MatchReport {
    /// Appends one test's match result; `test_category` is its true category.
    pub fn push(&mut self, test: String, test_category: &str, expert_score: Option<f64>, result: &MatchResult) {
        let index = self.tests.len();
        for s in &result.ranked {
            self.pairs.push(PairScore {
                test: index,
                template: s.template,
                same_class: s.category == test_category,
                fs: s.fs,
            });
        }
        self.tests.push(TestOutcome {
            test,
            category: test_category.to_string(),
            expert_score,
            ranked: result.ranked.clone(),
            predicted: result.predicted.clone(),
            correct: result.predicted == test_category,
        });
    }
}

/// Percentage of tests whose top-ranked template has the true category.
pub fn accuracy(report: &MatchReport) -> Result<f64> {
    if report.tests.is_empty() {
        return Err(Error::Empty("match report"));
    }
    let correct = report.tests.iter().filter(|t| t.correct).count();
    Ok(100.0 * correct as f64 / report.tests.len() as f64)
}

/// Percentage of test × template pairs where a same-class pair scores above
/// 80 or a different-class pair scores below 80. Pairs at exactly 80 count
/// as misses.
pub fn rate80(report: &MatchReport) -> Result<f64> {
    if report.pairs.is_empty() {
        return Err(Error::Empty("match report"));
    }
    let hits = report
        .pairs
        .iter()
        .filter(|p| {
            if p.same_class {
                p.fs > PASS_SCORE
            } else {
                p.fs < PASS_SCORE
            }
        })
        .count();
    Ok(100.0 * hits as f64 / report.pairs.len() as f64)
}

/// 1-based ranks, ties sharing their average rank.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let rank = (start + 1 + end) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = rank;
        }
        start = end;
    }
    ranks
}

/// Spearman's rank correlation `1 - 6·Σd² / (n(n² - 1))` with average ranks
/// for ties.
pub fn spearman(pred: &[f64], truth: &[f64]) -> Result<f64> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: pred.len(),
            right: truth.len(),
        });
    }
    let n = pred.len();
    if n < 2 {
        return Err(Error::Config(format!("spearman needs at least 2 samples, got {n}")));
    }
    if pred.iter().chain(truth).any(|v| !v.is_finite()) {
        return Err(Error::Config("spearman inputs must be finite".into()));
    }
    let (rp, rt) = (average_ranks(pred), average_ranks(truth));
    let d2: f64 = rp.iter().zip(&rt).map(|(a, b)| (a - b) * (a - b)).sum();
    let n = n as f64;
    Ok(1.0 - 6.0 * d2 / (n * (n * n - 1.0)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestTemplate {
    pub path: PathBuf,
    pub category: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestTest {
    pub path: PathBuf,
    pub category: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expert_score: Option<f64>,
}

/// Template and test files with ground-truth categories. Relative paths are
/// resolved against the manifest's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub templates: Vec<ManifestTemplate>,
    pub tests: Vec<ManifestTest>,
    #[serde(default)]
    pub params: MedParams,
    #[serde(default)]
    pub mode: FeatureMode,
    #[serde(default)]
    pub method: Method,
}

impl DatasetManifest {
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let m: Self = serde_json::from_slice(bytes).map_err(|e| Error::Config(format!("manifest: {e}")))?;
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&bytes).map_err(|e| e.in_file(path))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.templates.is_empty() {
            return Err(Error::Config("manifest lists no templates".into()));
        }
        if self.tests.is_empty() {
            return Err(Error::Config("manifest lists no tests".into()));
        }
        self.params.validate()?;
        let known: BTreeSet<&str> = self.templates.iter().map(|t| t.category.as_str()).collect();
        for (k, t) in self.tests.iter().enumerate() {
            if !known.contains(t.category.as_str()) {
                return Err(Error::Config(format!(
                    "test {k} ({}) has category `{}` with no template",
                    t.path.display(),
                    t.category
                )));
            }
            if let Some(s) = t.expert_score {
                if !(0.0..=100.0).contains(&s) {
                    return Err(Error::Config(format!(
                        "test {k} ({}) expert score {s} outside [0, 100]",
                        t.path.display()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn scoring_config(&self) -> ScoringConfig {
        ScoringConfig {
            method: self.method,
            mode: self.mode,
            params: self.params,
            ..ScoringConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub method: Method,
    pub mode: FeatureMode,
    pub params: MedParams,
    pub accuracy: f64,
    pub rate80: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spearman: Option<f64>,
    pub report: MatchReport,
}

impl EvaluationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text summary and per-test breakdown.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let rho = self.spearman.map_or_else(|| "-".to_string(), |r| format!("{r:.4}"));
        let _ = writeln!(
            out,
            "{:<10} {:<6} {:>6} {:>8} {:>10} {:>9}",
            "Method", "Mode", "t", "Acc(%)", "Rate80(%)", "Spearman"
        );
        let _ = writeln!(
            out,
            "{:<10} {:<6} {:>6.2} {:>8.2} {:>10.2} {:>9}",
            format!("MED-{}", self.method.to_string().to_uppercase()),
            self.mode,
            self.params.t,
            self.accuracy,
            self.rate80,
            rho
        );
        out.push('\n');
        let width = self
            .report
            .tests
            .iter()
            .map(|t| t.test.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let _ = writeln!(
            out,
            "{:<width$} {:<16} {:<16} {:>8} {:>7}",
            "Test", "Category", "Predicted", "Top FS", "Correct"
        );
        for t in &self.report.tests {
            let _ = writeln!(
                out,
                "{:<width$} {:<16} {:<16} {:>8.2} {:>7}",
                t.test,
                t.category,
                t.predicted,
                t.ranked.first().map_or(0.0, |s| s.fs),
                if t.correct { "yes" } else { "no" }
            );
        }
        out
    }
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Runs the manifest with its own method, mode and parameters.
pub fn run_manifest(manifest: &DatasetManifest, base_dir: &Path) -> Result<EvaluationReport> {
    let scorer = Scorer::new(manifest.scoring_config())?;
    evaluate_with(manifest, base_dir, &scorer)
}

/// Runs the manifest with an explicit scorer (its config overrides the
/// manifest's). Tests are matched in parallel; output keeps manifest order.
pub fn evaluate_with(manifest: &DatasetManifest, base_dir: &Path, scorer: &Scorer) -> Result<EvaluationReport> {
    manifest.validate()?;
    let templates: Vec<(String, Vec<FeatureVector>)> = manifest
        .templates
        .par_iter()
        .map(|t| {
            let seq = KeypointSequence::load(resolve(base_dir, &t.path))?;
            Ok((t.category.clone(), scorer.features(&seq)))
        })
        .collect::<Result<_>>()?;

    let results: Vec<MatchResult> = manifest
        .tests
        .par_iter()
        .map(|t| {
            let path = resolve(base_dir, &t.path);
            let seq = KeypointSequence::load(&path)?;
            match_features(&scorer.features(&seq), &templates, scorer).map_err(|e| e.in_file(&path))
        })
        .collect::<Result<_>>()?;

    let mut report = MatchReport::default();
    for (t, result) in manifest.tests.iter().zip(&results) {
        report.push(t.path.display().to_string(), &t.category, t.expert_score, result);
    }

    // Predicted quality of a test: its best score against templates of its own category.
    let labelled: Vec<(f64, f64)> = manifest
        .tests
        .iter()
        .zip(&results)
        .filter_map(|(t, r)| {
            let expert = t.expert_score?;
            let fs = r.ranked.iter().find(|s| s.category == t.category)?.fs;
            Some((fs, expert))
        })
        .collect();
    let spearman = if labelled.len() >= 2 {
        let (pred, truth): (Vec<f64>, Vec<f64>) = labelled.into_iter().unzip();
        Some(spearman(&pred, &truth)?)
    } else {
        None
    };

    let config = scorer.config();
    Ok(EvaluationReport {
        method: config.method,
        mode: config.mode,
        params: config.params,
        accuracy: accuracy(&report)?,
        rate80: rate80(&report)?,
        spearman,
        report,
    })
}
