#![allow(dead_code)]

use posescore::features::FeatureVector;
use posescore::skeleton::{BodyLandmark, KeypointSequence, Landmark, SkeletonFrame, LANDMARK_COUNT};
use rand::Rng;

/// Landmarks scattered in a unit box; visibility drawn from `vis`.
pub fn random_frame(rng: &mut impl Rng, timestamp: f64, vis: (f64, f64)) -> SkeletonFrame {
    let mut lm2 = [Landmark::default(); LANDMARK_COUNT];
    let mut lm3 = [Landmark::default(); LANDMARK_COUNT];
    for i in 0..LANDMARK_COUNT {
        let v = rng.gen_range(vis.0..=vis.1);
        lm2[i] = Landmark::new(rng.gen(), rng.gen(), 0.0, v);
        lm3[i] = Landmark::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            v,
        );
    }
    SkeletonFrame {
        landmarks2d: lm2,
        landmarks3d: lm3,
        timestamp,
    }
}

pub fn random_sequence(rng: &mut impl Rng, len: usize) -> KeypointSequence {
    let frames = (0..len).map(|k| random_frame(rng, k as f64 / 30.0, (0.5, 1.0))).collect();
    KeypointSequence::new(30.0, frames, None, "random").unwrap()
}

/// Feature vectors with values in (0, 2π); roughly one in ten entries masked.
pub fn random_features(rng: &mut impl Rng, len: usize, dims: usize) -> Vec<FeatureVector> {
    (0..len)
        .map(|_| {
            let valid: Vec<bool> = (0..dims).map(|_| rng.gen_bool(0.9)).collect();
            let values = valid
                .iter()
                .map(|&ok| if ok { rng.gen_range(0.01..std::f64::consts::TAU) } else { 0.0 })
                .collect();
            FeatureVector { values, valid }
        })
        .collect()
}

/// Applies `p ↦ s·p + offset` to every 2D and 3D landmark.
pub fn transform_frame(frame: &SkeletonFrame, s: f64, offset: [f64; 3]) -> SkeletonFrame {
    let mut out = frame.clone();
    for l in out.landmarks2d.iter_mut() {
        l.x = s * l.x + offset[0];
        l.y = s * l.y + offset[1];
    }
    for l in out.landmarks3d.iter_mut() {
        l.x = s * l.x + offset[0];
        l.y = s * l.y + offset[1];
        l.z = s * l.z + offset[2];
    }
    out
}

/// Reflects x and relabels every landmark with its left/right counterpart.
pub fn mirror_frame(frame: &SkeletonFrame) -> SkeletonFrame {
    let mut out = frame.clone();
    for b in BodyLandmark::ALL {
        let (src, dst) = (b.index(), b.mirror().index());
        out.landmarks2d[dst] = frame.landmarks2d[src];
        out.landmarks2d[dst].x = -frame.landmarks2d[src].x;
        out.landmarks3d[dst] = frame.landmarks3d[src];
        out.landmarks3d[dst].x = -frame.landmarks3d[src].x;
    }
    out
}
