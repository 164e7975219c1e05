//! Per-frame geometric features: joint angles, limb mass-center deviations,
//! barycentric angle, body direction, upper/lower limb linkage and limb
//! tension ratios.
//!
//! All values are angles in radians. Angle features lie in `[0, π]`; boolean
//! features (tension ratios and the 2D direction flags) are remapped to `π/2`
//! (false) or `3π/2` (true). A feature is masked out when any landmark it
//! consumes is insufficiently visible or its geometry is degenerate.

pub mod geometry;
pub mod registry;

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skeleton::{KeypointSequence, Landmark, SkeletonFrame, LANDMARK_COUNT};
pub use geometry::{angle_between, barycenter, limb_center, DegenerateVector, Vec3, DEGENERATE_EPS};
pub use registry::{
    CoefficientTable, DirectionAxis, FeatureKind, FeatureMode, FeatureRegistry, FeatureSpace, FeatureSpec,
    PointRef,
};

/// Remapped value of a true boolean feature.
pub const FLAG_TRUE: f64 = 3.0 * FRAC_PI_2;
/// Remapped value of a false boolean feature.
pub const FLAG_FALSE: f64 = FRAC_PI_2;

/// Default visibility below which a consumed landmark masks the feature.
pub const DEFAULT_MIN_VISIBILITY: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub valid: Vec<bool>,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// A fully valid vector.
    pub fn from_values(values: Vec<f64>) -> Self {
        let valid = vec![true; values.len()];
        Self { values, valid }
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        self.valid[i].then_some(self.values[i])
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|&&v| v).count()
    }
}

fn point(landmarks: &[Landmark; LANDMARK_COUNT], p: &PointRef) -> Vec3 {
    match p {
        PointRef::Landmark(i) => Vec3::from(&landmarks[*i]),
        PointRef::Centroid(ids) => {
            let sum = ids
                .iter()
                .fold(Vec3::default(), |acc, &i| acc + Vec3::from(&landmarks[i]));
            sum / ids.len() as f64
        }
    }
}

fn flag(b: bool) -> f64 {
    if b {
        FLAG_TRUE
    } else {
        FLAG_FALSE
    }
}

/// Evaluates one spec on a frame, ignoring visibility. `None` means the
/// geometry is degenerate.
pub fn evaluate_spec(frame: &SkeletonFrame, spec: &FeatureSpec, coefficients: &CoefficientTable) -> Option<f64> {
    let lms = frame.landmarks(spec.space);
    let pts: Vec<Vec3> = spec.landmark_indices.iter().map(|p| point(lms, p)).collect();
    match spec.kind {
        FeatureKind::JointAngle => angle_between(pts[0] - pts[1], pts[2] - pts[1]).ok(),
        FeatureKind::LimbCenter => {
            let center = limb_center(pts[0], pts[1], pts[2], pts[3]);
            angle_between(pts[5] - pts[4], center - pts[4]).ok()
        }
        FeatureKind::Barycentric => {
            let b = barycenter(lms, coefficients.entries());
            angle_between(pts[1] - pts[0], b - pts[0]).ok()
        }
        FeatureKind::Linkage => angle_between(pts[1] - pts[0], pts[3] - pts[2]).ok(),
        FeatureKind::Direction => {
            let v = pts[1] - pts[0];
            match spec.axis.expect("validated direction spec has an axis") {
                DirectionAxis::Horizontal => angle_between(v, Vec3::X).ok(),
                DirectionAxis::Depth => {
                    (v.norm() > DEGENERATE_EPS).then(|| v.x.hypot(v.y).atan2(v.z.abs()))
                }
                DirectionAxis::Flag => {
                    (v.x.hypot(v.y) > DEGENERATE_EPS).then(|| flag(v.y.abs() <= v.x.abs()))
                }
            }
        }
        FeatureKind::TensionRatio => {
            let span = pts[0].distance(pts[1]);
            let shoulders = pts[2].distance(pts[3]);
            let threshold = spec.threshold.expect("validated tension spec has a threshold");
            (shoulders > DEGENERATE_EPS).then(|| flag(span > threshold * shoulders))
        }
    }
}

/// Turns skeleton frames into feature vectors for a fixed registry.
#[derive(Debug, Clone)]
pub struct FeatureExtractor {
    registry: FeatureRegistry,
    coefficients: CoefficientTable,
    min_visibility: f64,
    gates: Vec<Vec<usize>>,
}

impl FeatureExtractor {
    pub fn new(registry: FeatureRegistry, coefficients: CoefficientTable, min_visibility: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&min_visibility) {
            return Err(Error::Config(format!("min visibility {min_visibility} outside [0, 1]")));
        }
        let gates = registry
            .specs()
            .iter()
            .map(|spec| {
                let mut ids = spec.consumed();
                if spec.kind == FeatureKind::Barycentric {
                    ids.extend(coefficients.landmarks());
                    ids.sort_unstable();
                    ids.dedup();
                }
                ids
            })
            .collect();
        Ok(Self {
            registry,
            coefficients,
            min_visibility,
            gates,
        })
    }

    pub fn for_mode(mode: FeatureMode) -> Self {
        Self::new(
            FeatureRegistry::default_for(mode),
            CoefficientTable::default(),
            DEFAULT_MIN_VISIBILITY,
        )
        .expect("defaults are valid")
    }

    pub fn registry(&self) -> &FeatureRegistry {
        &self.registry
    }

    pub fn coefficients(&self) -> &CoefficientTable {
        &self.coefficients
    }

    /// Landmarks whose 2D visibility gates feature `i`.
    pub fn gate(&self, i: usize) -> &[usize] {
        &self.gates[i]
    }

    pub fn extract(&self, frame: &SkeletonFrame) -> FeatureVector {
        let mut values = Vec::with_capacity(self.registry.len());
        let mut valid = Vec::with_capacity(self.registry.len());
        for (spec, gate) in self.registry.specs().iter().zip(&self.gates) {
            let visible = gate
                .iter()
                .all(|&i| frame.landmarks2d[i].visibility >= self.min_visibility);
            let value = if visible {
                evaluate_spec(frame, spec, &self.coefficients)
            } else {
                None
            };
            values.push(value.unwrap_or(0.0));
            valid.push(value.is_some());
        }
        FeatureVector { values, valid }
    }

    pub fn extract_sequence(&self, seq: &KeypointSequence) -> Vec<FeatureVector> {
        seq.frames().iter().map(|f| self.extract(f)).collect()
    }
}

/// Extracts the default feature set for `mode` from one frame.
pub fn extract_feature_vector(frame: &SkeletonFrame, mode: FeatureMode) -> FeatureVector {
    FeatureExtractor::for_mode(mode).extract(frame)
}

fn group(frame: &SkeletonFrame, space: FeatureSpace, pick: impl Fn(&FeatureSpec) -> bool) -> Vec<Option<f64>> {
    let coefficients = CoefficientTable::default();
    let mode = match space {
        FeatureSpace::TwoD => FeatureMode::TwoD,
        FeatureSpace::ThreeD => FeatureMode::ThreeD,
    };
    FeatureRegistry::default_for(mode)
        .specs()
        .iter()
        .filter(|s| pick(s))
        .map(|s| evaluate_spec(frame, s, &coefficients))
        .collect()
}

/// The 13 default joint angles (elbows, shoulders, hips, knees, ankles, wrists, neck).
pub fn joint_angle_features(frame: &SkeletonFrame, space: FeatureSpace) -> Vec<Option<f64>> {
    group(frame, space, |s| s.kind == FeatureKind::JointAngle)
}

/// Spine-relative angles of the four limb polygon centers (left/right arm, left/right leg).
pub fn limb_mass_center_features(frame: &SkeletonFrame, space: FeatureSpace) -> Vec<Option<f64>> {
    group(frame, space, |s| s.kind == FeatureKind::LimbCenter)
}

/// Angle between the spine and the mid-hip → barycenter vector.
pub fn barycentric_feature(frame: &SkeletonFrame, space: FeatureSpace) -> Option<f64> {
    group(frame, space, |s| s.kind == FeatureKind::Barycentric)[0]
}

/// Shoulder flag, hip flag, pelvis horizontal, pelvis rotation, shoulder
/// horizontal, shoulder rotation.
pub fn direction_features(frame: &SkeletonFrame) -> Vec<Option<f64>> {
    group(frame, FeatureSpace::TwoD, |s| s.kind == FeatureKind::Direction)
}

/// Forearm/calf (left, right) then forearm/thigh (left, right).
pub fn linkage_features(frame: &SkeletonFrame, space: FeatureSpace) -> Vec<Option<f64>> {
    group(frame, space, |s| s.kind == FeatureKind::Linkage)
}

/// Feet and wrist tension flags from 3D distances.
pub fn tension_features(frame: &SkeletonFrame) -> (Option<f64>, Option<f64>) {
    let v = group(frame, FeatureSpace::TwoD, |s| s.kind == FeatureKind::TensionRatio);
    (v[0], v[1])
}

/// True when `value` is in the range its spec promises.
pub fn value_in_range(spec: &FeatureSpec, value: f64) -> bool {
    if spec.is_flag() {
        value == FLAG_TRUE || value == FLAG_FALSE
    } else {
        (0.0..=PI).contains(&value)
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_6;

    use super::*;
    use crate::skeleton::BodyLandmark::{self, *};

    fn frame_from(points: &[(BodyLandmark, [f64; 3])]) -> SkeletonFrame {
        let mut lm3 = [Landmark::new(0.0, 0.0, 0.0, 1.0); LANDMARK_COUNT];
        for &(l, [x, y, z]) in points {
            lm3[l.index()] = Landmark::new(x, y, z, 1.0);
        }
        let lm2 = lm3.map(|l| Landmark::new(l.x, l.y, 0.0, 1.0));
        SkeletonFrame {
            landmarks2d: lm2,
            landmarks3d: lm3,
            timestamp: 0.0,
        }
    }

    /// Symmetric T-pose: arms horizontal, legs straight down, facing -z, y up.
    pub(crate) fn t_pose() -> SkeletonFrame {
        let mut pts = vec![
            (Nose, [0.0, 0.7, -0.05]),
            (LeftShoulder, [0.2, 0.5, 0.0]),
            (LeftElbow, [0.5, 0.5, 0.0]),
            (LeftWrist, [0.75, 0.5, 0.0]),
            (LeftIndex, [0.85, 0.5, 0.0]),
            (LeftPinky, [0.83, 0.49, 0.0]),
            (LeftThumb, [0.8, 0.52, 0.0]),
            (LeftHip, [0.1, 0.0, 0.0]),
            (LeftKnee, [0.1, -0.45, 0.0]),
            (LeftAnkle, [0.1, -0.9, 0.0]),
            (LeftHeel, [0.1, -0.95, 0.05]),
            (LeftFootIndex, [0.1, -0.95, -0.15]),
            (LeftEye, [0.03, 0.73, -0.04]),
            (LeftEyeInner, [0.02, 0.73, -0.045]),
            (LeftEyeOuter, [0.045, 0.73, -0.04]),
            (LeftEar, [0.08, 0.71, 0.0]),
            (MouthLeft, [0.02, 0.66, -0.045]),
        ];
        let mirrored: Vec<_> = pts
            .iter()
            .filter(|(l, _)| l.mirror() != *l)
            .map(|&(l, [x, y, z])| (l.mirror(), [-x, y, z]))
            .collect();
        pts.extend(mirrored);
        frame_from(&pts)
    }

    #[test]
    fn joint_angles_on_t_pose_are_symmetric() {
        let f = t_pose();
        for space in [FeatureSpace::TwoD, FeatureSpace::ThreeD] {
            let v = joint_angle_features(&f, space);
            assert_eq!(v.len(), 13);
            let v: Vec<f64> = v.into_iter().map(Option::unwrap).collect();
            assert!(v.iter().all(|a| (0.0..=PI).contains(a)));
            for pair in v[..12].chunks(2) {
                assert!((pair[0] - pair[1]).abs() < 1e-9);
            }
            // straight arms
            assert!((v[0] - PI).abs() < 1e-12);
            // arms abducted 90° relative to the torso
            assert!((v[2] - FRAC_PI_2).abs() < 0.25);
        }
    }

    #[test]
    fn right_angle_elbow() {
        let f = frame_from(&[
            (LeftShoulder, [0.0, 1.0, 0.0]),
            (LeftElbow, [0.0, 0.0, 0.0]),
            (LeftWrist, [1.0, 0.0, 0.0]),
        ]);
        let v = joint_angle_features(&f, FeatureSpace::ThreeD);
        assert_eq!(v[0], Some(FRAC_PI_2));
    }

    #[test]
    fn limb_centers_symmetric_and_axis_cases() {
        let f = t_pose();
        let v: Vec<f64> = limb_mass_center_features(&f, FeatureSpace::ThreeD)
            .into_iter()
            .map(Option::unwrap)
            .collect();
        assert!((v[0] - v[1]).abs() < 1e-9);
        assert!((v[2] - v[3]).abs() < 1e-9);

        // Left arm polygon centered straight above mid-hip, along the spine.
        let along = frame_from(&[
            (LeftShoulder, [0.2, 1.0, 0.0]),
            (RightShoulder, [-0.2, 1.0, 0.0]),
            (LeftHip, [0.1, 0.0, 0.0]),
            (RightHip, [-0.1, 0.0, 0.0]),
            (LeftElbow, [-0.2, 1.0, 0.0]),
            (LeftWrist, [0.1, 2.0, 0.0]),
            (LeftIndex, [-0.1, 2.0, 0.0]),
        ]);
        let v = limb_mass_center_features(&along, FeatureSpace::ThreeD);
        assert!(v[0].unwrap().abs() < 1e-12);

        // Center at (1, 0, 0) from mid-hip: perpendicular to the spine.
        let perp = frame_from(&[
            (LeftShoulder, [0.5, 1.0, 0.0]),
            (RightShoulder, [-0.5, 1.0, 0.0]),
            (LeftHip, [0.5, 0.0, 0.0]),
            (RightHip, [-0.5, 0.0, 0.0]),
            (LeftElbow, [1.5, -1.0, 0.0]),
            (LeftWrist, [1.5, 0.0, 0.0]),
            (LeftIndex, [1.5, 0.0, 0.0]),
        ]);
        // centre = ((0.5+1.5+1.5+1.5)/4, (1-1+0+0)/4, 0) = (1.25, 0, 0)
        let v = limb_mass_center_features(&perp, FeatureSpace::ThreeD);
        assert!((v[0].unwrap() - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn barycenter_of_t_pose_is_on_midline() {
        let f = t_pose();
        let b = barycenter(&f.landmarks3d, CoefficientTable::default().entries());
        assert!(b.x.abs() < 1e-9);
        // Upright, symmetric: barycenter lies on the spine axis.
        let a = barycentric_feature(&f, FeatureSpace::ThreeD).unwrap();
        assert!(a < 0.2, "{a}");
    }

    #[test]
    fn barycentric_axis_cases() {
        // All mass on the nose placed on the spine axis / perpendicular to it.
        let coeffs = CoefficientTable::new([(Nose.index(), 1.0)]).unwrap();
        let registry = FeatureRegistry::default_for(FeatureMode::ThreeD);
        let spec = &registry.specs()[0];
        let base = [
            (LeftShoulder, [0.2, 1.0, 0.0]),
            (RightShoulder, [-0.2, 1.0, 0.0]),
            (LeftHip, [0.1, 0.0, 0.0]),
            (RightHip, [-0.1, 0.0, 0.0]),
        ];
        let mut on_axis = base.to_vec();
        on_axis.push((Nose, [0.0, 1.5, 0.0]));
        assert_eq!(evaluate_spec(&frame_from(&on_axis), spec, &coeffs), Some(0.0));
        let mut perp = base.to_vec();
        perp.push((Nose, [0.0, 0.0, -1.0]));
        assert_eq!(evaluate_spec(&frame_from(&perp), spec, &coeffs), Some(FRAC_PI_2));
    }

    #[test]
    fn forward_lean_increases_barycentric_angle() {
        let upright = t_pose();
        let mut lean = upright.clone();
        // Rotate every landmark above the hips forward (toward -z) by 30° about the hip axis.
        let (s, c) = (0.5f64, 3f64.sqrt() / 2.0);
        for l in lean.landmarks3d.iter_mut() {
            if l.y > 0.0 {
                let (y, z) = (l.y, l.z);
                l.y = c * y + s * z;
                l.z = -s * y + c * z;
            }
        }
        // Mass below the hips stays put, so the barycenter trails the spine.
        let a0 = barycentric_feature(&upright, FeatureSpace::ThreeD).unwrap();
        let a1 = barycentric_feature(&lean, FeatureSpace::ThreeD).unwrap();
        assert!(a1 > a0, "{a1} <= {a0}");
    }

    #[test]
    fn direction_axis_fixtures() {
        let level = frame_from(&[
            (LeftHip, [0.1, 0.0, 0.0]),
            (RightHip, [-0.1, 0.0, 0.0]),
            (LeftShoulder, [0.2, 0.5, 0.0]),
            (RightShoulder, [-0.2, 0.5, 0.0]),
        ]);
        let d = direction_features(&level);
        assert_eq!(d.len(), 6);
        assert_eq!(d[0], Some(FLAG_TRUE));
        assert_eq!(d[1], Some(FLAG_TRUE));
        assert_eq!(d[2], Some(0.0));
        assert_eq!(d[3], Some(FRAC_PI_2));

        let depth = frame_from(&[(LeftHip, [0.0, 0.0, 0.1]), (RightHip, [0.0, 0.0, -0.1])]);
        assert_eq!(direction_features(&depth)[3], Some(0.0));

        let (s, c) = FRAC_PI_6.sin_cos();
        let tilted = frame_from(&[(LeftHip, [0.1 * c, 0.1 * s, 0.0]), (RightHip, [-0.1 * c, -0.1 * s, 0.0])]);
        let d = direction_features(&tilted);
        assert!((d[2].unwrap() - FRAC_PI_6).abs() < 1e-9);
        assert_eq!(d[1], Some(FLAG_TRUE));

        let vertical = frame_from(&[(LeftHip, [0.0, 0.1, 0.0]), (RightHip, [0.01, -0.1, 0.0])]);
        assert_eq!(direction_features(&vertical)[1], Some(FLAG_FALSE));

        let coincident = frame_from(&[]);
        assert_eq!(direction_features(&coincident)[2], None);
    }

    #[test]
    fn linkage_cases() {
        let f = t_pose();
        let v: Vec<f64> = linkage_features(&f, FeatureSpace::ThreeD)
            .into_iter()
            .map(Option::unwrap)
            .collect();
        assert!((v[0] - v[1]).abs() < 1e-9);
        assert!((v[2] - v[3]).abs() < 1e-9);
        // horizontal forearm vs vertical calf
        assert!((v[0] - FRAC_PI_2).abs() < 1e-12);

        let parallel = frame_from(&[
            (LeftElbow, [0.0, 1.0, 0.0]),
            (LeftWrist, [0.0, 0.5, 0.0]),
            (LeftKnee, [0.3, -0.5, 0.0]),
            (LeftAnkle, [0.3, -1.0, 0.0]),
        ]);
        assert_eq!(linkage_features(&parallel, FeatureSpace::ThreeD)[0], Some(0.0));
    }

    fn tension_frame(ankle_gap: f64, wrist_gap: f64) -> SkeletonFrame {
        frame_from(&[
            (LeftShoulder, [1.0, 0.0, 0.0]),
            (RightShoulder, [0.0, 0.0, 0.0]),
            (LeftAnkle, [ankle_gap, -1.0, 0.0]),
            (RightAnkle, [0.0, -1.0, 0.0]),
            (LeftWrist, [wrist_gap, 0.5, 0.0]),
            (RightWrist, [0.0, 0.5, 0.0]),
        ])
    }

    #[test]
    fn tension_thresholds() {
        assert_eq!(tension_features(&tension_frame(0.6, 1.0)), (Some(FLAG_TRUE), Some(FLAG_FALSE)));
        assert_eq!(tension_features(&tension_frame(0.5, 1.5)), (Some(FLAG_FALSE), Some(FLAG_FALSE)));
        assert_eq!(tension_features(&tension_frame(0.4, 1.6)), (Some(FLAG_FALSE), Some(FLAG_TRUE)));
        let zero_shoulders = frame_from(&[(LeftAnkle, [1.0, 0.0, 0.0])]);
        assert_eq!(tension_features(&zero_shoulders), (None, None));
    }

    #[test]
    fn vector_lengths_per_mode() {
        let f = t_pose();
        assert_eq!(extract_feature_vector(&f, FeatureMode::Both).len(), 52);
        assert_eq!(extract_feature_vector(&f, FeatureMode::TwoD).len(), 30);
        assert_eq!(extract_feature_vector(&f, FeatureMode::ThreeD).len(), 22);
    }

    #[test]
    fn invisible_left_arm_masks_only_dependent_features() {
        let mut f = t_pose();
        let left_arm = [LeftElbow, LeftWrist, LeftPinky, LeftIndex, LeftThumb];
        for l in left_arm {
            f.landmarks2d[l.index()].visibility = 0.0;
        }
        let ex = FeatureExtractor::for_mode(FeatureMode::Both);
        let v = ex.extract(&f);
        for i in 0..v.len() {
            let depends = ex.gate(i).iter().any(|g| left_arm.iter().any(|l| l.index() == *g));
            assert_eq!(v.valid[i], !depends, "{}", ex.registry().specs()[i].name);
        }
        assert!(!v.valid[ex.registry().index_of("2d.joint.left_elbow").unwrap()]);
        assert!(v.valid[ex.registry().index_of("2d.joint.right_elbow").unwrap()]);
    }

    #[test]
    fn values_respect_ranges_on_t_pose() {
        let f = t_pose();
        let ex = FeatureExtractor::for_mode(FeatureMode::Both);
        let v = ex.extract(&f);
        assert_eq!(v.valid_count(), 52);
        for (spec, value) in ex.registry().specs().iter().zip(&v.values) {
            assert!(value_in_range(spec, *value), "{} = {value}", spec.name);
        }
    }
}
