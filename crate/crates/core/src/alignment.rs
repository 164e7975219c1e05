//! Sequence alignment over MED frame distances: classic DTW, a greedy
//! baseline, and adaptively constrained DTW (ACDTW).
//!
//! ACDTW extends the classic recurrence with a penalty on non-diagonal steps.
//! Reaching cell `(i, j)` from `(i-1, j)` or `(i, j-1)` adds
//! `C · MED(i, j)` where `C = 2·max(a, b)/(a + b) · N` and `N = P + Q` is the
//! participation count stored at the predecessor cell. The counters restart at
//! 1 on every diagonal step and grow by one per consecutive reuse of a frame.
//!
//! Rows index the template sequence (length `a`), columns the test sequence
//! (length `b`). All indices are 0-based.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::med::{frame_score_value, med_from_score, MedParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dtw,
    Greedy,
    #[default]
    Acdtw,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dtw" => Ok(Method::Dtw),
            "greedy" => Ok(Method::Greedy),
            "acdtw" => Ok(Method::Acdtw),
            other => Err(Error::Config(format!("unknown alignment method `{other}`"))),
        }
    }
}

impl Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Dtw => "dtw",
            Method::Greedy => "greedy",
            Method::Acdtw => "acdtw",
        })
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    values: Vec<T>,
}

impl<T: Copy> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Self {
            rows,
            cols,
            values: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::Empty("matrix"));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                left: cols,
                right: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            values: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.values[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Value at the bottom-right cell.
    pub fn last(&self) -> T {
        self.get(self.rows - 1, self.cols - 1)
    }
}

impl<T: Copy + Display> Matrix<T> {
    /// CSV with header `i,j,value`, one row per cell in row-major order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,value\n");
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push_str(&format!("{i},{j},{}\n", self.get(i, j)));
            }
        }
        out
    }
}

impl<T: Copy + Serialize> Matrix<T> {
    /// JSON object `{"rows", "cols", "values": [[...], ...]}`; non-finite
    /// floats become `null`.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "values": self.to_rows(),
        })
        .to_string()
    }
}

/// How a cell was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    /// Cell (0, 0).
    Start,
    /// From (i-1, j-1); no penalty.
    Diagonal,
    /// From (i-1, j); test frame j reused.
    Up,
    /// From (i, j-1); template frame i reused.
    Left,
    /// Not reached (greedy alignment only).
    Unvisited,
}

impl Step {
    pub fn predecessor(self, i: usize, j: usize) -> Option<(usize, usize)> {
        match self {
            Step::Diagonal => Some((i - 1, j - 1)),
            Step::Up => Some((i - 1, j)),
            Step::Left => Some((i, j - 1)),
            Step::Start | Step::Unvisited => None,
        }
    }
}

impl Display for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Step::Start => "start",
            Step::Diagonal => "diagonal",
            Step::Up => "up",
            Step::Left => "left",
            Step::Unvisited => "unvisited",
        })
    }
}

/// Frame scores and MED distances for every template × test frame pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrices {
    pub score: Matrix<f64>,
    pub med: Matrix<f64>,
    /// Cells where no feature was valid in both frames (scored 0).
    pub empty_cells: usize,
}

impl DistanceMatrices {
    /// Builds the MED matrix from a given frame-score matrix.
    pub fn from_scores(score: Matrix<f64>, score_floor: f64) -> Self {
        let mut med = Matrix::filled(score.rows(), score.cols(), 0.0);
        for i in 0..score.rows() {
            for j in 0..score.cols() {
                med.set(i, j, med_from_score(score.get(i, j), score_floor));
            }
        }
        Self {
            score,
            med,
            empty_cells: 0,
        }
    }
}

/// Scores every template frame (rows) against every test frame (columns).
///
/// A pair with no jointly valid feature is scored 0, the maximal MED.
pub fn distance_matrix(
    template: &[FeatureVector],
    test: &[FeatureVector],
    params: &MedParams,
) -> Result<DistanceMatrices> {
    params.validate()?;
    let width = match (template.first(), test.first()) {
        (Some(a), Some(_)) => a.len(),
        _ => return Err(Error::Empty("feature sequence")),
    };
    if let Some(bad) = template.iter().chain(test).find(|v| v.len() != width) {
        return Err(Error::RegistryMismatch {
            left: width,
            right: bad.len(),
        });
    }
    let (m, n) = (template.len(), test.len());
    let mut score = Matrix::filled(m, n, 0.0);
    let mut med = Matrix::filled(m, n, 0.0);
    let mut empty_cells = 0;
    for (i, x) in template.iter().enumerate() {
        for (j, y) in test.iter().enumerate() {
            let s = match frame_score_value(x, y, params) {
                Ok(s) => s,
                Err(Error::NoValidFeatures) => {
                    empty_cells += 1;
                    0.0
                }
                Err(e) => return Err(e),
            };
            score.set(i, j, s);
            med.set(i, j, med_from_score(s, params.score_floor));
        }
    }
    Ok(DistanceMatrices {
        score,
        med,
        empty_cells,
    })
}

/// Length-imbalance factor of the adaptive penalty: `2·max(a, b) / (a + b)`.
pub fn penalty_coef(a: usize, b: usize) -> f64 {
    2.0 * a.max(b) as f64 / (a + b) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PenaltyConfig {
    pub enabled: bool,
    /// Replaces the length-imbalance factor when set.
    pub length_ratio_override: Option<f64>,
}

impl Default for PenaltyConfig {
    fn default() -> Self {
        Self {
            enabled: true,
            length_ratio_override: None,
        }
    }
}

impl PenaltyConfig {
    pub fn disabled() -> Self {
        Self {
            enabled: false,
            length_ratio_override: None,
        }
    }

    pub fn with_override(coefficient: f64) -> Self {
        Self {
            enabled: true,
            length_ratio_override: Some(coefficient),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.length_ratio_override {
            Some(c) if !(c.is_finite() && c >= 0.0) => {
                Err(Error::Config(format!("penalty override {c} must be finite and ≥ 0")))
            }
            _ => Ok(()),
        }
    }

    /// Factor multiplied by `N = P + Q` at use sites.
    pub fn coefficient(&self, a: usize, b: usize) -> f64 {
        match (self.enabled, self.length_ratio_override) {
            (false, _) => 0.0,
            (true, Some(c)) => c,
            (true, None) => penalty_coef(a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlignmentResult {
    pub method: Method,
    /// Accumulated distance (infinite on cells a greedy walk never reached).
    pub cost: Matrix<f64>,
    pub score: Matrix<f64>,
    pub med: Matrix<f64>,
    /// Template-frame participation counts.
    pub p: Matrix<u32>,
    /// Test-frame participation counts.
    pub q: Matrix<u32>,
    pub steps: Matrix<Step>,
    pub path: Vec<(usize, usize)>,
    pub fs: f64,
    /// Length-imbalance factor used for the penalty (0 when disabled).
    pub penalty_coefficient: f64,
}

impl AlignmentResult {
    pub fn total_cost(&self) -> f64 {
        self.cost.last()
    }

    pub fn path_json(&self) -> String {
        path_to_json(&self.path)
    }

    /// Per-cell frame scores along the path.
    pub fn path_scores(&self) -> Vec<f64> {
        self.path.iter().map(|&(i, j)| self.score.get(i, j)).collect()
    }

    /// Writes `cost.csv`, `score.csv`, `med.csv`, `P.csv`, `Q.csv`,
    /// `path.json` and `alignment.json` into `dir`, creating it if needed.
    pub fn write_exports(&self, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let files = [
            ("cost.csv", self.cost.to_csv()),
            ("score.csv", self.score.to_csv()),
            ("med.csv", self.med.to_csv()),
            ("P.csv", self.p.to_csv()),
            ("Q.csv", self.q.to_csv()),
            ("path.json", self.path_json()),
            (
                "alignment.json",
                serde_json::to_string(self).map_err(|e| Error::Syntax(e.to_string()))?,
            ),
        ];
        let mut written = Vec::with_capacity(files.len());
        for (name, body) in files {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

/// JSON list of `[i, j]` pairs.
pub fn path_to_json(path: &[(usize, usize)]) -> String {
    let pairs: Vec<[usize; 2]> = path.iter().map(|&(i, j)| [i, j]).collect();
    serde_json::to_string(&pairs).expect("pairs serialize")
}

/// Mean frame score over the cells of `path`.
pub fn final_score(score: &Matrix<f64>, path: &[(usize, usize)]) -> Result<f64> {
    if path.is_empty() {
        return Err(Error::Empty("path"));
    }
    let total: f64 = path.iter().map(|&(i, j)| score.get(i, j)).sum();
    Ok(total / path.len() as f64)
}

fn backtrack(steps: &Matrix<Step>) -> Vec<(usize, usize)> {
    let (mut i, mut j) = (steps.rows() - 1, steps.cols() - 1);
    let mut path = vec![(i, j)];
    while let Some(prev) = steps.get(i, j).predecessor(i, j) {
        (i, j) = prev;
        path.push(prev);
    }
    debug_assert_eq!(path.last(), Some(&(0, 0)));
    path.reverse();
    path
}

/// Picks the smallest candidate; earlier candidates win ties.
fn argmin(candidates: &[(Step, f64)]) -> (Step, f64) {
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if c.1 < best.1 {
            best = c;
        }
    }
    best
}

/// Participation counters after taking `step` into a cell.
fn counters(step: Step, pred: Option<(u32, u32)>) -> (u32, u32) {
    match (step, pred) {
        (Step::Up, Some((_, q))) => (1, q + 1),
        (Step::Left, Some((p, _))) => (p + 1, 1),
        _ => (1, 1),
    }
}

/// Classic DTW over a distance matrix. Returns the accumulated cost matrix
/// and the backtracked path; ties prefer the diagonal, then up, then left.
pub fn dtw_classic(med: &Matrix<f64>) -> (Matrix<f64>, Vec<(usize, usize)>) {
    let (cost, steps) = dtw_tables(med);
    let path = backtrack(&steps);
    (cost, path)
}

fn dtw_tables(med: &Matrix<f64>) -> (Matrix<f64>, Matrix<Step>) {
    let (m, n) = (med.rows(), med.cols());
    let mut cost = Matrix::filled(m, n, 0.0);
    let mut steps = Matrix::filled(m, n, Step::Start);
    let mut cands = Vec::with_capacity(3);
    for i in 0..m {
        for j in 0..n {
            let d = med.get(i, j);
            if i == 0 && j == 0 {
                cost.set(0, 0, d);
                continue;
            }
            cands.clear();
            if i > 0 && j > 0 {
                cands.push((Step::Diagonal, cost.get(i - 1, j - 1)));
            }
            if i > 0 {
                cands.push((Step::Up, cost.get(i - 1, j)));
            }
            if j > 0 {
                cands.push((Step::Left, cost.get(i, j - 1)));
            }
            let (step, prev) = argmin(&cands);
            cost.set(i, j, d + prev);
            steps.set(i, j, step);
        }
    }
    (cost, steps)
}

fn counters_along(steps: &Matrix<Step>) -> (Matrix<u32>, Matrix<u32>) {
    let (m, n) = (steps.rows(), steps.cols());
    let mut p = Matrix::filled(m, n, 0u32);
    let mut q = Matrix::filled(m, n, 0u32);
    for i in 0..m {
        for j in 0..n {
            let step = steps.get(i, j);
            if step == Step::Unvisited {
                continue;
            }
            let pred = step.predecessor(i, j).map(|(a, b)| (p.get(a, b), q.get(a, b)));
            let (pv, qv) = counters(step, pred);
            p.set(i, j, pv);
            q.set(i, j, qv);
        }
    }
    (p, q)
}

/// Classic DTW on precomputed matrices, packaged as an [`AlignmentResult`].
/// Participation counters follow the same update rule as ACDTW.
pub fn dtw_from(dm: &DistanceMatrices) -> AlignmentResult {
    let (cost, steps) = dtw_tables(&dm.med);
    let path = backtrack(&steps);
    let (p, q) = counters_along(&steps);
    let fs = final_score(&dm.score, &path).expect("path is never empty");
    AlignmentResult {
        method: Method::Dtw,
        cost,
        score: dm.score.clone(),
        med: dm.med.clone(),
        p,
        q,
        steps,
        path,
        fs,
        penalty_coefficient: 0.0,
    }
}

pub fn dtw_align(template: &[FeatureVector], test: &[FeatureVector], params: &MedParams) -> Result<AlignmentResult> {
    Ok(dtw_from(&distance_matrix(template, test, params)?))
}

/// ACDTW on precomputed matrices.
pub fn acdtw_from(dm: &DistanceMatrices, penalty: &PenaltyConfig) -> AlignmentResult {
    let med = &dm.med;
    let (m, n) = (med.rows(), med.cols());
    let coef = penalty.coefficient(m, n);
    let mut cost = Matrix::filled(m, n, 0.0);
    let mut p = Matrix::filled(m, n, 0u32);
    let mut q = Matrix::filled(m, n, 0u32);
    let mut steps = Matrix::filled(m, n, Step::Start);
    let mut cands = Vec::with_capacity(3);
    for i in 0..m {
        for j in 0..n {
            let d = med.get(i, j);
            if i == 0 && j == 0 {
                cost.set(0, 0, d);
                p.set(0, 0, 1);
                q.set(0, 0, 1);
                continue;
            }
            let reuse_penalty = |a: usize, b: usize| coef * f64::from(p.get(a, b) + q.get(a, b)) * d;
            cands.clear();
            if i > 0 && j > 0 {
                cands.push((Step::Diagonal, cost.get(i - 1, j - 1)));
            }
            if i > 0 {
                cands.push((Step::Up, cost.get(i - 1, j) + reuse_penalty(i - 1, j)));
            }
            if j > 0 {
                cands.push((Step::Left, cost.get(i, j - 1) + reuse_penalty(i, j - 1)));
            }
            let (step, prev) = argmin(&cands);
            let (pa, pb) = step.predecessor(i, j).expect("non-origin cell has a predecessor");
            let (pv, qv) = counters(step, Some((p.get(pa, pb), q.get(pa, pb))));
            cost.set(i, j, d + prev);
            p.set(i, j, pv);
            q.set(i, j, qv);
            steps.set(i, j, step);
        }
    }
    let path = backtrack(&steps);
    let fs = final_score(&dm.score, &path).expect("path is never empty");
    AlignmentResult {
        method: Method::Acdtw,
        cost,
        score: dm.score.clone(),
        med: dm.med.clone(),
        p,
        q,
        steps,
        path,
        fs,
        penalty_coefficient: coef,
    }
}

/// Aligns a template feature sequence with a test sequence using ACDTW.
pub fn acdtw(
    template: &[FeatureVector],
    test: &[FeatureVector],
    params: &MedParams,
    penalty: &PenaltyConfig,
) -> Result<AlignmentResult> {
    penalty.validate()?;
    Ok(acdtw_from(&distance_matrix(template, test, params)?, penalty))
}

/// Greedy walk on precomputed matrices: from (0, 0), step to the in-bounds
/// neighbour with the highest frame score (diagonal, then down, then right on
/// ties) until the bottom-right cell.
pub fn greedy_from(dm: &DistanceMatrices) -> AlignmentResult {
    let (m, n) = (dm.score.rows(), dm.score.cols());
    let mut cost = Matrix::filled(m, n, f64::INFINITY);
    let mut p = Matrix::filled(m, n, 0u32);
    let mut q = Matrix::filled(m, n, 0u32);
    let mut steps = Matrix::filled(m, n, Step::Unvisited);
    let (mut i, mut j) = (0, 0);
    cost.set(0, 0, dm.med.get(0, 0));
    p.set(0, 0, 1);
    q.set(0, 0, 1);
    steps.set(0, 0, Step::Start);
    let mut path = vec![(0, 0)];
    while (i, j) != (m - 1, n - 1) {
        let mut best: Option<(Step, usize, usize)> = None;
        for (step, a, b) in [(Step::Diagonal, i + 1, j + 1), (Step::Up, i + 1, j), (Step::Left, i, j + 1)] {
            if a < m && b < n && best.is_none_or(|(_, x, y)| dm.score.get(a, b) > dm.score.get(x, y)) {
                best = Some((step, a, b));
            }
        }
        let (step, a, b) = best.expect("some neighbour is in bounds before the end");
        let (pv, qv) = counters(step, Some((p.get(i, j), q.get(i, j))));
        cost.set(a, b, cost.get(i, j) + dm.med.get(a, b));
        p.set(a, b, pv);
        q.set(a, b, qv);
        steps.set(a, b, step);
        (i, j) = (a, b);
        path.push((i, j));
    }
    let fs = final_score(&dm.score, &path).expect("path is never empty");
    AlignmentResult {
        method: Method::Greedy,
        cost,
        score: dm.score.clone(),
        med: dm.med.clone(),
        p,
        q,
        steps,
        path,
        fs,
        penalty_coefficient: 0.0,
    }
}

pub fn greedy_align(template: &[FeatureVector], test: &[FeatureVector], params: &MedParams) -> Result<AlignmentResult> {
    Ok(greedy_from(&distance_matrix(template, test, params)?))
}

/// Runs `method` on precomputed matrices.
pub fn align_matrices(dm: &DistanceMatrices, method: Method, penalty: &PenaltyConfig) -> AlignmentResult {
    match method {
        Method::Dtw => dtw_from(dm),
        Method::Greedy => greedy_from(dm),
        Method::Acdtw => acdtw_from(dm, penalty),
    }
}

/// True when `path` runs from (0, 0) to (rows-1, cols-1) using only unit
/// right, down and diagonal steps.
pub fn is_valid_path(path: &[(usize, usize)], rows: usize, cols: usize) -> bool {
    if rows == 0 || cols == 0 {
        return false;
    }
    path.first() == Some(&(0, 0))
        && path.last() == Some(&(rows - 1, cols - 1))
        && path.windows(2).all(|w| {
            let di = w[1].0.checked_sub(w[0].0);
            let dj = w[1].1.checked_sub(w[0].1);
            matches!((di, dj), (Some(1), Some(0)) | (Some(0), Some(1)) | (Some(1), Some(1)))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dm_from_med(rows: Vec<Vec<f64>>) -> DistanceMatrices {
        let med = Matrix::from_rows(rows).unwrap();
        let mut score = Matrix::filled(med.rows(), med.cols(), 0.0);
        for i in 0..med.rows() {
            for j in 0..med.cols() {
                score.set(i, j, 100.0 / (1.0 + med.get(i, j)));
            }
        }
        DistanceMatrices {
            score,
            med,
            empty_cells: 0,
        }
    }

    #[test]
    fn penalty_coef_examples() {
        assert_eq!(penalty_coef(7, 7), 1.0);
        assert_eq!(penalty_coef(3, 5), 1.25);
        assert!((penalty_coef(1, 100) - 200.0 / 101.0).abs() < 1e-15);
        assert!((penalty_coef(1, 100) - 1.9802).abs() < 1e-4);
    }

    #[test]
    fn final_score_examples() {
        let s = Matrix::from_rows(vec![vec![80.0, 60.0]]).unwrap();
        assert_eq!(final_score(&s, &[(0, 0), (0, 1)]).unwrap(), 70.0);
        assert_eq!(final_score(&s, &[(0, 1)]).unwrap(), 60.0);
        assert!(final_score(&s, &[]).is_err());
        let all = Matrix::filled(3, 4, 100.0);
        assert_eq!(final_score(&all, &[(0, 0), (1, 1), (1, 2), (2, 3)]).unwrap(), 100.0);
    }

    #[test]
    fn single_row_is_forced() {
        let dm = dm_from_med(vec![vec![1.0, 2.0, 3.0, 4.0]]);
        let (cost, path) = dtw_classic(&dm.med);
        assert_eq!(cost.last(), 10.0);
        assert_eq!(path, vec![(0, 0), (0, 1), (0, 2), (0, 3)]);
        let g = greedy_from(&dm);
        assert_eq!(g.path, path);
    }

    #[test]
    fn one_by_one_base_case() {
        let dm = dm_from_med(vec![vec![0.25]]);
        let r = acdtw_from(&dm, &PenaltyConfig::default());
        assert_eq!(r.total_cost(), 0.25);
        assert_eq!(r.path, vec![(0, 0)]);
        assert_eq!(r.fs, dm.score.get(0, 0));
        assert_eq!((r.p.get(0, 0), r.q.get(0, 0)), (1, 1));
    }

    #[test]
    fn acdtw_counters_follow_reuse() {
        // Zero MED everywhere except off the first column: forces an Up run.
        let dm = dm_from_med(vec![vec![0.0, 5.0], vec![1.0, 5.0], vec![1.0, 0.0]]);
        let r = acdtw_from(&dm, &PenaltyConfig::with_override(1.0));
        // (1,0) reached from (0,0): P = 1, Q = 1 + 1
        assert_eq!(r.steps.get(1, 0), Step::Up);
        assert_eq!((r.p.get(1, 0), r.q.get(1, 0)), (1, 2));
        // (2,0): penalty uses N(1,0) = 3, cost = 1 + (1 + 3·1·1) = ... accumulated
        assert_eq!(r.cost.get(1, 0), 1.0 + 2.0);
        assert_eq!(r.cost.get(2, 0), 1.0 + 3.0 * 1.0 + 3.0);
        assert_eq!((r.p.get(2, 0), r.q.get(2, 0)), (1, 3));
        // first row uses Left: P grows
        assert_eq!((r.p.get(0, 1), r.q.get(0, 1)), (2, 1));
        assert!(is_valid_path(&r.path, 3, 2));
    }

    #[test]
    fn greedy_tie_prefers_diagonal() {
        let dm = dm_from_med(vec![vec![0.0, 0.0], vec![0.0, 0.0]]);
        let g = greedy_from(&dm);
        assert_eq!(g.path, vec![(0, 0), (1, 1)]);
        assert_eq!(g.fs, 100.0);
        assert_eq!(g.steps.get(0, 1), Step::Unvisited);
        assert!(g.cost.get(0, 1).is_infinite());
    }

    #[test]
    fn exports_are_well_formed() {
        let dm = dm_from_med(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let r = acdtw_from(&dm, &PenaltyConfig::default());
        let csv = r.cost.to_csv();
        assert_eq!(csv.lines().next(), Some("i,j,value"));
        assert_eq!(csv.lines().count(), 5);
        assert_eq!(r.path_json(), "[[0,0],[1,1]]");
        let json: serde_json::Value = serde_json::from_str(&r.score.to_json()).unwrap();
        assert_eq!(json["rows"], 2);
        assert_eq!(json["values"][1][1], 100.0);

        let g = greedy_from(&dm);
        let json: serde_json::Value = serde_json::from_str(&g.cost.to_json()).unwrap();
        assert!(json["values"][0][1].is_null());
    }

    #[test]
    fn path_validity_checks() {
        assert!(is_valid_path(&[(0, 0), (0, 1), (1, 2)], 2, 3));
        assert!(!is_valid_path(&[(0, 0), (1, 2)], 2, 3));
        assert!(!is_valid_path(&[(0, 0), (1, 1)], 2, 3));
        assert!(!is_valid_path(&[(0, 1), (1, 2)], 2, 3));
    }

    #[test]
    fn penalty_config_validation() {
        assert!(PenaltyConfig::with_override(-1.0).validate().is_err());
        assert!(PenaltyConfig::with_override(f64::NAN).validate().is_err());
        assert_eq!(PenaltyConfig::disabled().coefficient(3, 5), 0.0);
        assert_eq!(PenaltyConfig::default().coefficient(3, 5), 1.25);
        assert_eq!(PenaltyConfig::with_override(0.0).coefficient(3, 5), 0.0);
    }
}
