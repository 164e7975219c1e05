//! Feature specifications and the three default registries (2D: 30 features,
//! 3D: 22 features, combined: 52).
//!
//! Each [`FeatureSpec`] lists its geometric reference points in
//! `landmark_indices`. An entry is either a single landmark index or an array
//! of indices whose centroid is used (e.g. `[23, 24]` for mid-hip). The
//! meaning of each position depends on the kind:
//!
//! | kind            | points                                              |
//! |-----------------|-----------------------------------------------------|
//! | `barycentric`   | origin, spine top                                   |
//! | `joint_angle`   | A, B, C (angle at B)                                |
//! | `limb_center`   | 4 polygon vertices, origin, spine top               |
//! | `direction`     | line start, line end (plus `axis`)                  |
//! | `linkage`       | A, B, C, D (angle between AB and CD)                |
//! | `tension_ratio` | span end 1, span end 2, shoulder 1, shoulder 2 (plus `threshold`) |

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skeleton::{BodyLandmark, LANDMARK_COUNT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FeatureSpace {
    #[serde(rename = "2d")]
    TwoD,
    #[serde(rename = "3d")]
    ThreeD,
}

impl FeatureSpace {
    fn prefix(self) -> &'static str {
        match self {
            FeatureSpace::TwoD => "2d",
            FeatureSpace::ThreeD => "3d",
        }
    }
}

/// Which default feature set(s) to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum FeatureMode {
    #[serde(rename = "2d")]
    TwoD,
    #[serde(rename = "3d")]
    ThreeD,
    #[default]
    #[serde(rename = "2d3d")]
    Both,
}

impl std::str::FromStr for FeatureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "2d" => Ok(FeatureMode::TwoD),
            "3d" => Ok(FeatureMode::ThreeD),
            "2d3d" | "2d+3d" | "both" => Ok(FeatureMode::Both),
            other => Err(Error::Config(format!("unknown feature mode `{other}`"))),
        }
    }
}

impl std::fmt::Display for FeatureMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FeatureMode::TwoD => "2d",
            FeatureMode::ThreeD => "3d",
            FeatureMode::Both => "2d3d",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureKind {
    Barycentric,
    JointAngle,
    LimbCenter,
    Direction,
    Linkage,
    TensionRatio,
}

impl FeatureKind {
    fn arity(self) -> usize {
        match self {
            FeatureKind::Barycentric | FeatureKind::Direction => 2,
            FeatureKind::JointAngle => 3,
            FeatureKind::Linkage | FeatureKind::TensionRatio => 4,
            FeatureKind::LimbCenter => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionAxis {
    /// Directed angle between the line and the image-horizontal x axis.
    Horizontal,
    /// Undirected angle between the line and the depth (z) axis, in `[0, π/2]`.
    Depth,
    /// Boolean: is the line closer to horizontal than to vertical in the
    /// image plane (|dy| ≤ |dx|)? Remapped to 3π/2 (yes) or π/2 (no).
    Flag,
}

/// One geometric reference point: a landmark or the centroid of several.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRef {
    Landmark(usize),
    Centroid(Vec<usize>),
}

impl PointRef {
    pub fn indices(&self) -> &[usize] {
        match self {
            PointRef::Landmark(i) => std::slice::from_ref(i),
            PointRef::Centroid(v) => v,
        }
    }

    fn mirrored(&self) -> PointRef {
        let m = |i: usize| BodyLandmark::from_index(i).map_or(i, |l| l.mirror().index());
        match self {
            PointRef::Landmark(i) => PointRef::Landmark(m(*i)),
            PointRef::Centroid(v) => PointRef::Centroid(v.iter().map(|&i| m(i)).collect()),
        }
    }
}

impl From<BodyLandmark> for PointRef {
    fn from(l: BodyLandmark) -> Self {
        PointRef::Landmark(l.index())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSpec {
    pub name: String,
    pub space: FeatureSpace,
    pub kind: FeatureKind,
    pub landmark_indices: Vec<PointRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<DirectionAxis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

impl FeatureSpec {
    /// Every landmark index referenced by the geometry (without the barycenter
    /// coefficient table).
    pub fn consumed(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .landmark_indices
            .iter()
            .flat_map(|p| p.indices().iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// True for features whose value is one of {π/2, 3π/2} rather than an angle.
    pub fn is_flag(&self) -> bool {
        self.kind == FeatureKind::TensionRatio
            || (self.kind == FeatureKind::Direction && self.axis == Some(DirectionAxis::Flag))
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(format!("feature `{}`: {msg}", self.name)));
        if self.landmark_indices.len() != self.kind.arity() {
            return bad(format!(
                "{:?} expects {} points, got {}",
                self.kind,
                self.kind.arity(),
                self.landmark_indices.len()
            ));
        }
        for p in &self.landmark_indices {
            if p.indices().is_empty() {
                return bad("empty centroid".into());
            }
            if let Some(&i) = p.indices().iter().find(|&&i| i >= LANDMARK_COUNT) {
                return bad(format!("landmark index {i} outside [0, 32]"));
            }
        }
        match self.kind {
            FeatureKind::Direction if self.axis.is_none() => bad("direction needs an `axis`".into()),
            FeatureKind::TensionRatio => match self.threshold {
                Some(t) if t.is_finite() && t >= 0.0 => Ok(()),
                _ => bad("tension_ratio needs a finite, non-negative `threshold`".into()),
            },
            _ => Ok(()),
        }
    }

    fn mirrored(&self) -> FeatureSpec {
        FeatureSpec {
            name: swap_sides(&self.name),
            landmark_indices: self.landmark_indices.iter().map(PointRef::mirrored).collect(),
            ..self.clone()
        }
    }
}

fn swap_sides(name: &str) -> String {
    name.replace("left", "\u{0}").replace("right", "left").replace('\u{0}', "right")
}

/// Ordered, name-unique list of feature specs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureRegistry {
    specs: Vec<FeatureSpec>,
}

impl FeatureRegistry {
    pub fn new(specs: Vec<FeatureSpec>) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::Config("registry has no features".into()));
        }
        let mut seen = HashSet::new();
        for spec in &specs {
            spec.validate()?;
            if !seen.insert(spec.name.as_str()) {
                return Err(Error::Config(format!("duplicate feature name `{}`", spec.name)));
            }
        }
        Ok(Self { specs })
    }

    pub fn default_for(mode: FeatureMode) -> Self {
        let specs = match mode {
            FeatureMode::TwoD => two_d_specs(),
            FeatureMode::ThreeD => common_specs(FeatureSpace::ThreeD),
            FeatureMode::Both => {
                let mut s = two_d_specs();
                s.extend(common_specs(FeatureSpace::ThreeD));
                s
            }
        };
        Self::new(specs).expect("default registry is valid")
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let specs: Vec<FeatureSpec> =
            serde_json::from_slice(bytes).map_err(|e| Error::Config(format!("registry: {e}")))?;
        Self::new(specs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&bytes).map_err(|e| e.in_file(path))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.specs).expect("specs serialize")
    }

    pub fn specs(&self) -> &[FeatureSpec] {
        &self.specs
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.specs.iter().map(|s| s.name.as_str())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.specs.iter().position(|s| s.name == name)
    }

    /// Index of the left/right counterpart of feature `i` (itself when unpaired).
    pub fn mirror_partner(&self, i: usize) -> usize {
        let partner = swap_sides(&self.specs[i].name);
        self.index_of(&partner).unwrap_or(i)
    }
}

/// Per-landmark mass fractions used for the barycenter.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    entries: Vec<(usize, f64)>,
}

impl CoefficientTable {
    pub fn new(entries: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let map: BTreeMap<usize, f64> = entries.into_iter().collect();
        if map.is_empty() {
            return Err(Error::Config("coefficient table is empty".into()));
        }
        for (&i, &c) in &map {
            if i >= LANDMARK_COUNT {
                return Err(Error::Config(format!("coefficient landmark {i} outside [0, 32]")));
            }
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::Config(format!("coefficient for landmark {i} must be finite and ≥ 0")));
            }
        }
        let sum: f64 = map.values().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("coefficients sum to {sum}, expected 1")));
        }
        Ok(Self {
            entries: map.into_iter().collect(),
        })
    }

    /// Parses a JSON object mapping landmark index (as a string key) to mass fraction.
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let raw: BTreeMap<String, f64> = serde_json::from_slice(bytes)
            .map_err(|e| Error::Config(format!("coefficient table: {e}")))?;
        let entries = raw
            .into_iter()
            .map(|(k, v)| {
                k.trim()
                    .parse::<usize>()
                    .map(|i| (i, v))
                    .map_err(|_| Error::Config(format!("coefficient key `{k}` is not a landmark index")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&bytes).map_err(|e| e.in_file(path))
    }

    pub fn to_json(&self) -> String {
        let map: BTreeMap<String, f64> = self.entries.iter().map(|&(i, c)| (i.to_string(), c)).collect();
        serde_json::to_string_pretty(&map).expect("map serializes")
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn landmarks(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(i, _)| i)
    }
}

impl Default for CoefficientTable {
    fn default() -> Self {
        use BodyLandmark::*;
        Self::new([
            (Nose.index(), 0.08),
            (LeftShoulder.index(), 0.13),
            (RightShoulder.index(), 0.13),
            (LeftHip.index(), 0.12),
            (RightHip.index(), 0.12),
            (LeftElbow.index(), 0.03),
            (RightElbow.index(), 0.03),
            (LeftWrist.index(), 0.02),
            (RightWrist.index(), 0.02),
            (LeftKnee.index(), 0.10),
            (RightKnee.index(), 0.10),
            (LeftAnkle.index(), 0.06),
            (RightAnkle.index(), 0.06),
        ])
        .expect("default coefficients sum to 1")
    }
}

fn mid_hip() -> PointRef {
    PointRef::Centroid(vec![BodyLandmark::LeftHip.index(), BodyLandmark::RightHip.index()])
}

fn mid_shoulder() -> PointRef {
    PointRef::Centroid(vec![
        BodyLandmark::LeftShoulder.index(),
        BodyLandmark::RightShoulder.index(),
    ])
}

fn spec(space: FeatureSpace, name: &str, kind: FeatureKind, points: Vec<PointRef>) -> FeatureSpec {
    FeatureSpec {
        name: format!("{}.{name}", space.prefix()),
        space,
        kind,
        landmark_indices: points,
        axis: None,
        threshold: None,
    }
}

/// Left-side spec plus its mirrored right-side twin.
fn paired(left: FeatureSpec) -> [FeatureSpec; 2] {
    let right = left.mirrored();
    [left, right]
}

/// The 22 features computed in both spaces: barycentric (1), limb mass
/// centers (4), joint angles (13), forearm/calf and forearm/thigh linkage (4).
fn common_specs(space: FeatureSpace) -> Vec<FeatureSpec> {
    use BodyLandmark::*;
    use FeatureKind::*;
    let p = PointRef::from;
    let mut out = vec![spec(space, "barycentric", Barycentric, vec![mid_hip(), mid_shoulder()])];

    let limb = |name: &str, verts: [BodyLandmark; 4]| {
        let mut pts: Vec<PointRef> = verts.into_iter().map(PointRef::from).collect();
        pts.push(mid_hip());
        pts.push(mid_shoulder());
        spec(space, name, LimbCenter, pts)
    };
    out.extend(paired(limb("limb_center.left_arm", [LeftShoulder, LeftElbow, LeftWrist, LeftIndex])));
    out.extend(paired(limb("limb_center.left_leg", [LeftHip, LeftKnee, LeftAnkle, LeftFootIndex])));

    let joint = |name: &str, a: BodyLandmark, b: BodyLandmark, c: BodyLandmark| {
        spec(space, name, JointAngle, vec![p(a), p(b), p(c)])
    };
    out.extend(paired(joint("joint.left_elbow", LeftShoulder, LeftElbow, LeftWrist)));
    out.extend(paired(joint("joint.left_shoulder", LeftElbow, LeftShoulder, LeftHip)));
    out.extend(paired(joint("joint.left_hip", LeftShoulder, LeftHip, LeftKnee)));
    out.extend(paired(joint("joint.left_knee", LeftHip, LeftKnee, LeftAnkle)));
    out.extend(paired(joint("joint.left_ankle", LeftKnee, LeftAnkle, LeftFootIndex)));
    out.extend(paired(joint("joint.left_wrist", LeftElbow, LeftWrist, LeftIndex)));
    out.push(spec(space, "joint.neck", JointAngle, vec![p(Nose), mid_shoulder(), mid_hip()]));

    let link = |name: &str, seg1: [BodyLandmark; 2], seg2: [BodyLandmark; 2]| {
        spec(space, name, Linkage, vec![p(seg1[0]), p(seg1[1]), p(seg2[0]), p(seg2[1])])
    };
    out.extend(paired(link("linkage.left_forearm_calf", [LeftElbow, LeftWrist], [LeftKnee, LeftAnkle])));
    out.extend(paired(link("linkage.left_forearm_thigh", [LeftElbow, LeftWrist], [LeftHip, LeftKnee])));
    out
}

/// The 30-feature set: the 22 common features in 2D plus body-direction flags,
/// pelvis/shoulder horizontal and rotation angles, and the two tension ratios.
/// Rotation angles need depth and tension ratios are defined on 3D distances,
/// so those specs read the 3D landmarks even though they belong to this set.
fn two_d_specs() -> Vec<FeatureSpec> {
    use BodyLandmark::*;
    use FeatureKind::*;
    let p = PointRef::from;
    let mut out = common_specs(FeatureSpace::TwoD);

    let dir = |name: &str, space: FeatureSpace, line: [BodyLandmark; 2], axis: DirectionAxis| {
        let mut s = spec(space, name, Direction, vec![p(line[0]), p(line[1])]);
        s.name = format!("2d.{name}");
        s.axis = Some(axis);
        s
    };
    // Lines run right → left so a subject facing the camera has a positive x component.
    let shoulders = [RightShoulder, LeftShoulder];
    let hips = [RightHip, LeftHip];
    out.push(dir("direction.shoulder_flag", FeatureSpace::TwoD, shoulders, DirectionAxis::Flag));
    out.push(dir("direction.hip_flag", FeatureSpace::TwoD, hips, DirectionAxis::Flag));
    out.push(dir("pelvis.horizontal", FeatureSpace::ThreeD, hips, DirectionAxis::Horizontal));
    out.push(dir("pelvis.rotation", FeatureSpace::ThreeD, hips, DirectionAxis::Depth));
    out.push(dir("shoulder.horizontal", FeatureSpace::ThreeD, shoulders, DirectionAxis::Horizontal));
    out.push(dir("shoulder.rotation", FeatureSpace::ThreeD, shoulders, DirectionAxis::Depth));

    let tension = |name: &str, span: [BodyLandmark; 2], threshold: f64| {
        let mut s = spec(
            FeatureSpace::ThreeD,
            name,
            TensionRatio,
            vec![p(span[0]), p(span[1]), p(LeftShoulder), p(RightShoulder)],
        );
        s.name = format!("2d.{name}");
        s.threshold = Some(threshold);
        s
    };
    out.push(tension("tension.feet", [LeftAnkle, RightAnkle], 0.5));
    out.push(tension("tension.wrists", [LeftWrist, RightWrist], 1.5));
    out
}
