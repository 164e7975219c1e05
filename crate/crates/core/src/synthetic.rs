//! Deterministic synthetic exercise recordings.
//!
//! Each category is a sinusoid-driven motion of a simple articulated body
//! (trunk, two arms, two legs) posed by joint angles and expanded into all 33
//! landmarks. Templates are clean single repetitions; tests are the same motion
//! with jittered amplitude, tempo, length, body proportions, pose noise,
//! global scale and offset.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::evaluation::{DatasetManifest, ManifestTemplate, ManifestTest};
use crate::features::Vec3;
use crate::skeleton::{BodyLandmark, KeypointSequence, Landmark, SkeletonFrame, LANDMARK_COUNT};

/// Exercise categories the generator knows, in generation order.
pub const CATEGORIES: [&str; 3] = ["lateral_raise", "squat", "high_knees"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticConfig {
    pub seed: u64,
    pub categories: usize,
    pub tests_per_category: usize,
    pub fps: f64,
    pub template_frames: usize,
    /// Inclusive range of test lengths in frames.
    pub test_frames: (usize, usize),
    /// Relative amplitude jitter of test motions.
    pub amplitude_jitter: f64,
    /// Standard deviation of per-landmark 3D noise (body-height units ≈ 1.7).
    pub pose_noise: f64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            categories: CATEGORIES.len(),
            tests_per_category: 4,
            fps: 30.0,
            template_frames: 75,
            test_frames: (60, 95),
            amplitude_jitter: 0.08,
            pose_noise: 0.004,
        }
    }
}

impl SyntheticConfig {
    pub fn validate(&self) -> Result<()> {
        if self.categories == 0 || self.categories > CATEGORIES.len() {
            return Err(Error::Config(format!(
                "categories must be in 1..={}",
                CATEGORIES.len()
            )));
        }
        if self.template_frames < 2 || self.test_frames.0 < 2 || self.test_frames.0 > self.test_frames.1 {
            return Err(Error::Config("sequence lengths must be ≥ 2 and ordered".into()));
        }
        if self.fps.is_nan() || self.fps <= 0.0 {
            return Err(Error::InvalidFps(self.fps));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct LimbPose {
    /// Away from the body midline, radians.
    abduction: f64,
    /// Forward, radians.
    flexion: f64,
    /// Elbow or knee bend, radians (0 = straight).
    bend: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Pose {
    trunk_lean: f64,
    arms: [LimbPose; 2],
    legs: [LimbPose; 2],
}

#[derive(Debug, Clone, Copy)]
struct Proportions {
    hip_half: f64,
    shoulder_half: f64,
    torso: f64,
    upper_arm: f64,
    forearm: f64,
    thigh: f64,
    shin: f64,
}

impl Default for Proportions {
    fn default() -> Self {
        Self {
            hip_half: 0.1,
            shoulder_half: 0.18,
            torso: 0.5,
            upper_arm: 0.28,
            forearm: 0.25,
            thigh: 0.42,
            shin: 0.4,
        }
    }
}

fn deg(d: f64) -> f64 {
    d.to_radians()
}

/// Rise-and-return profile over one repetition: 0 → 1 → 0.
fn rep(u: f64) -> f64 {
    0.5 * (1.0 - (TAU * u).cos())
}

fn pose_for(category: usize, u: f64, amp: f64) -> Pose {
    match category {
        // arms sweep up sideways from the hips, legs still
        0 => {
            let arm = LimbPose {
                abduction: deg(12.0) + amp * deg(135.0) * rep(u),
                flexion: 0.0,
                bend: deg(10.0),
            };
            let leg = LimbPose {
                abduction: deg(3.0),
                ..LimbPose::default()
            };
            Pose {
                trunk_lean: 0.0,
                arms: [arm; 2],
                legs: [leg; 2],
            }
        }
        // wide stance squat with arms held forward
        1 => {
            let r = amp * rep(u);
            let arm = LimbPose {
                abduction: deg(5.0),
                flexion: deg(90.0),
                bend: deg(5.0),
            };
            let leg = LimbPose {
                abduction: deg(14.0),
                flexion: deg(95.0) * r,
                bend: deg(110.0) * r,
            };
            Pose {
                trunk_lean: deg(40.0) * r,
                arms: [arm; 2],
                legs: [leg; 2],
            }
        }
        // alternating knee lifts with a bent-arm guard
        _ => {
            let s = (TAU * u).sin();
            let lift = |x: f64| amp * x.max(0.0).powi(2);
            let (l, r) = (lift(s), lift(-s));
            let arm = LimbPose {
                abduction: deg(20.0),
                flexion: deg(35.0),
                bend: deg(95.0),
            };
            let leg = |x: f64| LimbPose {
                abduction: deg(3.0),
                flexion: deg(90.0) * x,
                bend: deg(95.0) * x,
            };
            Pose {
                trunk_lean: deg(5.0),
                arms: [arm; 2],
                legs: [leg(l), leg(r)],
            }
        }
    }
}

fn normalize(v: Vec3) -> Vec3 {
    v / v.norm()
}

/// Unit limb direction; `side` is +1 for the subject's left (+x), -1 for right.
/// Forward is -z, up is +y.
fn limb_direction(side: f64, pose: &LimbPose) -> Vec3 {
    let (sa, ca) = pose.abduction.sin_cos();
    let (sf, cf) = pose.flexion.sin_cos();
    Vec3::new(side * sa * cf, -ca * cf, -sf)
}

fn bend(dir: Vec3, angle: f64, reference: Vec3) -> Vec3 {
    let w = reference - dir * reference.dot(dir);
    let w = if w.norm() < 1e-9 { Vec3::new(0.0, 0.0, -1.0) } else { normalize(w) };
    normalize(dir * angle.cos() + w * angle.sin())
}

/// Rotates `v` forward (toward -z) about the x axis.
fn lean(v: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    Vec3::new(v.x, c * v.y + s * v.z, -s * v.y + c * v.z)
}

fn build_skeleton(pose: &Pose, body: &Proportions) -> [Vec3; LANDMARK_COUNT] {
    use BodyLandmark::*;
    let mut pts = [Vec3::default(); LANDMARK_COUNT];
    let set = |pts: &mut [Vec3; LANDMARK_COUNT], l: BodyLandmark, v: Vec3| pts[l.index()] = v;

    // trunk frame, origin at mid-hip; everything above the hips leans
    let up = |v: Vec3| lean(v, pose.trunk_lean);
    let head = Vec3::new(0.0, body.torso + 0.18, -0.06);
    set(&mut pts, Nose, up(head));
    for (side, [inner, eye, outer, ear, mouth]) in [
        (1.0, [LeftEyeInner, LeftEye, LeftEyeOuter, LeftEar, MouthLeft]),
        (-1.0, [RightEyeInner, RightEye, RightEyeOuter, RightEar, MouthRight]),
    ] {
        set(&mut pts, inner, up(head + Vec3::new(side * 0.015, 0.03, 0.005)));
        set(&mut pts, eye, up(head + Vec3::new(side * 0.03, 0.03, 0.008)));
        set(&mut pts, outer, up(head + Vec3::new(side * 0.045, 0.03, 0.012)));
        set(&mut pts, ear, up(head + Vec3::new(side * 0.075, 0.01, 0.07)));
        set(&mut pts, mouth, up(head + Vec3::new(side * 0.025, -0.035, 0.005)));
    }

    let arm_bend_ref = Vec3::new(0.0, 0.3, -1.0);
    for (k, side) in [(0usize, 1.0), (1, -1.0)] {
        let names = if k == 0 {
            [LeftShoulder, LeftElbow, LeftWrist, LeftIndex, LeftPinky, LeftThumb]
        } else {
            [RightShoulder, RightElbow, RightWrist, RightIndex, RightPinky, RightThumb]
        };
        let shoulder = Vec3::new(side * body.shoulder_half, body.torso, 0.0);
        let upper = limb_direction(side, &pose.arms[k]);
        let fore = bend(upper, pose.arms[k].bend, arm_bend_ref);
        let elbow = shoulder + upper * body.upper_arm;
        let wrist = elbow + fore * body.forearm;
        let lateral = Vec3::new(side * 0.02, 0.0, 0.0);
        set(&mut pts, names[0], up(shoulder));
        set(&mut pts, names[1], up(elbow));
        set(&mut pts, names[2], up(wrist));
        set(&mut pts, names[3], up(wrist + fore * 0.09));
        set(&mut pts, names[4], up(wrist + fore * 0.08 + lateral));
        set(&mut pts, names[5], up(wrist + fore * 0.05 - lateral + Vec3::new(0.0, 0.0, -0.02)));
    }

    let leg_bend_ref = Vec3::new(0.0, -1.0, 1.0);
    for (k, side) in [(0usize, 1.0), (1, -1.0)] {
        let names = if k == 0 {
            [LeftHip, LeftKnee, LeftAnkle, LeftHeel, LeftFootIndex]
        } else {
            [RightHip, RightKnee, RightAnkle, RightHeel, RightFootIndex]
        };
        let hip = Vec3::new(side * body.hip_half, 0.0, 0.0);
        let thigh = limb_direction(side, &pose.legs[k]);
        let shin = bend(thigh, pose.legs[k].bend, leg_bend_ref);
        let knee = hip + thigh * body.thigh;
        let ankle = knee + shin * body.shin;
        set(&mut pts, names[0], hip);
        set(&mut pts, names[1], knee);
        set(&mut pts, names[2], ankle);
        set(&mut pts, names[3], ankle + Vec3::new(0.0, -0.05, 0.05));
        set(&mut pts, names[4], ankle + Vec3::new(0.0, -0.06, -0.15));
    }
    pts
}

#[derive(Debug, Clone, Copy)]
struct Variation {
    amplitude: f64,
    /// Exponent of the time warp u ↦ u^γ.
    tempo: f64,
    body: Proportions,
    scale: f64,
    offset: Vec3,
    noise: f64,
}

impl Variation {
    fn clean() -> Self {
        Self {
            amplitude: 1.0,
            tempo: 1.0,
            body: Proportions::default(),
            scale: 1.0,
            offset: Vec3::default(),
            noise: 0.0,
        }
    }

    fn jittered(rng: &mut ChaCha8Rng, config: &SyntheticConfig) -> Self {
        let j = config.amplitude_jitter;
        let mut body = Proportions::default();
        for len in [
            &mut body.upper_arm,
            &mut body.forearm,
            &mut body.thigh,
            &mut body.shin,
            &mut body.torso,
            &mut body.shoulder_half,
            &mut body.hip_half,
        ] {
            *len *= rng.gen_range(0.95..1.05);
        }
        Self {
            amplitude: rng.gen_range(1.0 - j..=1.0 + j),
            tempo: rng.gen_range(0.8..1.25),
            body,
            scale: rng.gen_range(0.85..1.15),
            offset: Vec3::new(rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2)),
            noise: config.pose_noise,
        }
    }
}

fn render(
    category: usize,
    frames: usize,
    fps: f64,
    var: &Variation,
    rng: &mut ChaCha8Rng,
    source_id: String,
) -> KeypointSequence {
    let noise = Normal::new(0.0, var.noise.max(f64::MIN_POSITIVE)).expect("valid std");
    let mut out = Vec::with_capacity(frames);
    for k in 0..frames {
        let u = (k as f64 / (frames - 1) as f64).powf(var.tempo);
        let pose = pose_for(category, u, var.amplitude);
        let pts = build_skeleton(&pose, &var.body);
        let mut lm3 = [Landmark::default(); LANDMARK_COUNT];
        let mut lm2 = [Landmark::default(); LANDMARK_COUNT];
        for (i, p) in pts.iter().enumerate() {
            let jitter = if var.noise > 0.0 {
                Vec3::new(noise.sample(rng), noise.sample(rng), noise.sample(rng))
            } else {
                Vec3::default()
            };
            let world = (*p + jitter) * var.scale + var.offset;
            let visibility = if var.noise > 0.0 { rng.gen_range(0.85..=1.0) } else { 1.0 };
            lm3[i] = Landmark::new(world.x, world.y, world.z, visibility);
            // orthographic image: x right, y down, normalized to roughly [0, 1]
            lm2[i] = Landmark::new(0.5 + 0.35 * world.x, 0.5 - 0.35 * world.y, 0.0, visibility);
        }
        out.push(SkeletonFrame {
            landmarks2d: lm2,
            landmarks3d: lm3,
            timestamp: k as f64 / fps,
        });
    }
    KeypointSequence::new(fps, out, Some(CATEGORIES[category].to_string()), source_id)
        .expect("generated sequence is valid")
}

#[derive(Debug, Clone)]
pub struct SyntheticDataset {
    /// One clean template per category.
    pub templates: Vec<KeypointSequence>,
    /// `tests_per_category` jittered recordings per category, grouped by category.
    pub tests: Vec<KeypointSequence>,
}

pub fn generate_dataset(config: &SyntheticConfig) -> Result<SyntheticDataset> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut templates = Vec::with_capacity(config.categories);
    let mut tests = Vec::with_capacity(config.categories * config.tests_per_category);
    for (c, name) in CATEGORIES.iter().enumerate().take(config.categories) {
        templates.push(render(
            c,
            config.template_frames,
            config.fps,
            &Variation::clean(),
            &mut rng,
            format!("{name}_template"),
        ));
        for k in 0..config.tests_per_category {
            let var = Variation::jittered(&mut rng, config);
            let frames = rng.gen_range(config.test_frames.0..=config.test_frames.1);
            tests.push(render(c, frames, config.fps, &var, &mut rng, format!("{name}_{k}")));
        }
    }
    Ok(SyntheticDataset { templates, tests })
}

impl SyntheticDataset {
    /// Writes `templates/<id>.json`, `tests/<id>.json` and `manifest.json`
    /// under `dir`; returns the manifest path.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<PathBuf> {
        let dir = dir.as_ref();
        for sub in ["templates", "tests"] {
            let p = dir.join(sub);
            std::fs::create_dir_all(&p).map_err(|e| Error::io(&p, e))?;
        }
        let mut manifest = DatasetManifest {
            templates: Vec::new(),
            tests: Vec::new(),
            params: Default::default(),
            mode: Default::default(),
            method: Default::default(),
        };
        for seq in &self.templates {
            let rel = PathBuf::from("templates").join(format!("{}.json", seq.source_id()));
            seq.save(dir.join(&rel))?;
            manifest.templates.push(ManifestTemplate {
                path: rel,
                category: seq.label().unwrap_or_default().to_string(),
            });
        }
        for seq in &self.tests {
            let rel = PathBuf::from("tests").join(format!("{}.json", seq.source_id()));
            seq.save(dir.join(&rel))?;
            manifest.tests.push(ManifestTest {
                path: rel,
                category: seq.label().unwrap_or_default().to_string(),
                expert_score: None,
            });
        }
        let path = dir.join("manifest.json");
        std::fs::write(&path, manifest.to_json()).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }
}

/// Generates the dataset for `config` and writes it to `dir`.
pub fn write_synthetic(dir: impl AsRef<Path>, config: &SyntheticConfig) -> Result<PathBuf> {
    generate_dataset(config)?.write(dir)
}
