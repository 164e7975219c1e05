//! Skeleton keypoint model: the 33-landmark body layout, per-frame 2D and 3D
//! landmarks, and the JSON / CSV file contract for keypoint sequences.
//!
//! Landmark indices follow the 33-point layout used by common monocular pose
//! estimators (0 = nose ... 32 = right foot index). 2D coordinates are
//! normalized image units, 3D coordinates are an arbitrary but consistent model
//! space. Only finiteness is enforced on coordinates; every downstream feature
//! is an angle or a ratio.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const LANDMARK_COUNT: usize = 33;

/// Named landmark indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(usize)]
pub enum BodyLandmark {
    Nose = 0,
    LeftEyeInner = 1,
    LeftEye = 2,
    LeftEyeOuter = 3,
    RightEyeInner = 4,
    RightEye = 5,
    RightEyeOuter = 6,
    LeftEar = 7,
    RightEar = 8,
    MouthLeft = 9,
    MouthRight = 10,
    LeftShoulder = 11,
    RightShoulder = 12,
    LeftElbow = 13,
    RightElbow = 14,
    LeftWrist = 15,
    RightWrist = 16,
    LeftPinky = 17,
    RightPinky = 18,
    LeftIndex = 19,
    RightIndex = 20,
    LeftThumb = 21,
    RightThumb = 22,
    LeftHip = 23,
    RightHip = 24,
    LeftKnee = 25,
    RightKnee = 26,
    LeftAnkle = 27,
    RightAnkle = 28,
    LeftHeel = 29,
    RightHeel = 30,
    LeftFootIndex = 31,
    RightFootIndex = 32,
}

impl BodyLandmark {
    pub const ALL: [BodyLandmark; LANDMARK_COUNT] = {
        use BodyLandmark::*;
        [
            Nose,
            LeftEyeInner,
            LeftEye,
            LeftEyeOuter,
            RightEyeInner,
            RightEye,
            RightEyeOuter,
            LeftEar,
            RightEar,
            MouthLeft,
            MouthRight,
            LeftShoulder,
            RightShoulder,
            LeftElbow,
            RightElbow,
            LeftWrist,
            RightWrist,
            LeftPinky,
            RightPinky,
            LeftIndex,
            RightIndex,
            LeftThumb,
            RightThumb,
            LeftHip,
            RightHip,
            LeftKnee,
            RightKnee,
            LeftAnkle,
            RightAnkle,
            LeftHeel,
            RightHeel,
            LeftFootIndex,
            RightFootIndex,
        ]
    };

    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    pub fn name(self) -> &'static str {
        use BodyLandmark::*;
        match self {
            Nose => "nose",
            LeftEyeInner => "left_eye_inner",
            LeftEye => "left_eye",
            LeftEyeOuter => "left_eye_outer",
            RightEyeInner => "right_eye_inner",
            RightEye => "right_eye",
            RightEyeOuter => "right_eye_outer",
            LeftEar => "left_ear",
            RightEar => "right_ear",
            MouthLeft => "mouth_left",
            MouthRight => "mouth_right",
            LeftShoulder => "left_shoulder",
            RightShoulder => "right_shoulder",
            LeftElbow => "left_elbow",
            RightElbow => "right_elbow",
            LeftWrist => "left_wrist",
            RightWrist => "right_wrist",
            LeftPinky => "left_pinky",
            RightPinky => "right_pinky",
            LeftIndex => "left_index",
            RightIndex => "right_index",
            LeftThumb => "left_thumb",
            RightThumb => "right_thumb",
            LeftHip => "left_hip",
            RightHip => "right_hip",
            LeftKnee => "left_knee",
            RightKnee => "right_knee",
            LeftAnkle => "left_ankle",
            RightAnkle => "right_ankle",
            LeftHeel => "left_heel",
            RightHeel => "right_heel",
            LeftFootIndex => "left_foot_index",
            RightFootIndex => "right_foot_index",
        }
    }

    /// The contralateral landmark (the nose maps to itself).
    pub fn mirror(self) -> Self {
        let i = self.index();
        let j = match i {
            0 => 0,
            1..=3 => i + 3,
            4..=6 => i - 3,
            // 7..=32 come in (left, right) pairs starting at an odd index
            _ if i % 2 == 1 => i + 1,
            _ => i - 1,
        };
        Self::ALL[j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Landmark {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub visibility: f64,
}

impl Landmark {
    pub const fn new(x: f64, y: f64, z: f64, visibility: f64) -> Self {
        Self {
            x,
            y,
            z,
            visibility,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.visibility.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonFrame {
    pub landmarks2d: [Landmark; LANDMARK_COUNT],
    pub landmarks3d: [Landmark; LANDMARK_COUNT],
    /// Seconds from sequence start.
    pub timestamp: f64,
}

impl SkeletonFrame {
    pub fn landmarks(&self, space: crate::features::FeatureSpace) -> &[Landmark; LANDMARK_COUNT] {
        match space {
            crate::features::FeatureSpace::TwoD => &self.landmarks2d,
            crate::features::FeatureSpace::ThreeD => &self.landmarks3d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceFormat {
    Json,
    Csv,
}

impl SequenceFormat {
    /// `.csv` files are CSV; everything else is treated as JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => SequenceFormat::Csv,
            _ => SequenceFormat::Json,
        }
    }
}

/// A validated, immutable keypoint sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct KeypointSequence {
    fps: f64,
    frames: Vec<SkeletonFrame>,
    label: Option<String>,
    source_id: String,
    two_d_only: bool,
}

impl KeypointSequence {
    pub fn new(
        fps: f64,
        frames: Vec<SkeletonFrame>,
        label: Option<String>,
        source_id: impl Into<String>,
    ) -> Result<Self> {
        Self::build(fps, frames, label, source_id.into(), false)
    }

    fn build(
        fps: f64,
        frames: Vec<SkeletonFrame>,
        label: Option<String>,
        source_id: String,
        two_d_only: bool,
    ) -> Result<Self> {
        if !(fps.is_finite() && fps > 0.0) {
            return Err(Error::InvalidFps(fps));
        }
        if frames.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (k, frame) in frames.iter().enumerate() {
            check_frame(k, frame)?;
            if k > 0 && frame.timestamp <= frames[k - 1].timestamp {
                return Err(Error::NonIncreasingTimestamp { frame: k });
            }
        }
        Ok(Self {
            fps,
            frames,
            label,
            source_id,
            two_d_only,
        })
    }

    pub fn fps(&self) -> f64 {
        self.fps
    }

    pub fn frames(&self) -> &[SkeletonFrame] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    /// True when the file carried no 3D landmarks; `landmarks3d` then holds
    /// z = 0 copies of the 2D landmarks.
    pub fn is_two_d_only(&self) -> bool {
        self.two_d_only
    }

    pub fn with_source_id(mut self, source_id: impl Into<String>) -> Self {
        self.source_id = source_id.into();
        self
    }

    pub fn with_label(mut self, label: Option<String>) -> Self {
        self.label = label;
        self
    }

    pub fn into_frames(self) -> Vec<SkeletonFrame> {
        self.frames
    }

    /// Read a sequence file, choosing the format from the extension. An empty
    /// `source_id` is replaced by the file stem.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let seq = parse_sequence(&bytes, SequenceFormat::from_path(path)).map_err(|e| e.in_file(path))?;
        if seq.source_id.is_empty() {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok(seq.with_source_id(stem))
        } else {
            Ok(seq)
        }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let bytes = serialize_sequence(self, SequenceFormat::from_path(path))?;
        std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
    }
}

fn check_frame(k: usize, frame: &SkeletonFrame) -> Result<()> {
    if !frame.timestamp.is_finite() {
        return Err(Error::NonFinite {
            frame: k,
            field: "t",
        });
    }
    for (idx, lm) in frame.landmarks2d.iter().enumerate() {
        if !lm.is_finite() {
            return Err(Error::NonFinite {
                frame: k,
                field: "lm2d",
            });
        }
        if !(0.0..=1.0).contains(&lm.visibility) {
            return Err(Error::Visibility {
                frame: k,
                landmark: idx,
                value: lm.visibility,
            });
        }
    }
    if frame.landmarks3d.iter().any(|lm| !lm.is_finite()) {
        return Err(Error::NonFinite {
            frame: k,
            field: "lm3d",
        });
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct WireSequence {
    fps: f64,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    source_id: String,
    frames: Vec<WireFrame>,
}

#[derive(Debug, Serialize, Deserialize)]
struct WireFrame {
    t: f64,
    lm2d: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lm3d: Option<Vec<[f64; 3]>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    frame: usize,
    t: f64,
    idx: usize,
    x2: f64,
    y2: f64,
    vis: f64,
    x3: Option<f64>,
    y3: Option<f64>,
    z3: Option<f64>,
}

pub fn parse_sequence(bytes: &[u8], format: SequenceFormat) -> Result<KeypointSequence> {
    match format {
        SequenceFormat::Json => parse_json(bytes),
        SequenceFormat::Csv => parse_csv(bytes),
    }
}

fn to_array(frame: usize, rows: Vec<Landmark>) -> Result<[Landmark; LANDMARK_COUNT]> {
    let count = rows.len();
    rows.try_into()
        .map_err(|_| Error::LandmarkCount { frame, count })
}

fn parse_json(bytes: &[u8]) -> Result<KeypointSequence> {
    let wire: WireSequence =
        serde_json::from_slice(bytes).map_err(|e| Error::Syntax(e.to_string()))?;
    let two_d_only = wire.frames.first().is_some_and(|f| f.lm3d.is_none());
    let mut frames = Vec::with_capacity(wire.frames.len());
    for (k, wf) in wire.frames.into_iter().enumerate() {
        let lm2d: Vec<Landmark> = wf
            .lm2d
            .iter()
            .map(|&[x, y, vis]| Landmark::new(x, y, 0.0, vis))
            .collect();
        let landmarks2d = to_array(k, lm2d)?;
        let landmarks3d = match (wf.lm3d, two_d_only) {
            (Some(lm3d), false) => {
                let lm3d: Vec<Landmark> = lm3d
                    .iter()
                    .zip(landmarks2d.iter().chain(std::iter::repeat(&Landmark::default())))
                    .map(|(&[x, y, z], l2)| Landmark::new(x, y, z, l2.visibility))
                    .collect();
                to_array(k, lm3d)?
            }
            (None, true) => landmarks2d,
            (Some(_), true) => {
                return Err(Error::Syntax(format!(
                    "lm3d present at frame {k} but absent at frame 0"
                )))
            }
            (None, false) => return Err(Error::Syntax(format!("lm3d missing at frame {k}"))),
        };
        frames.push(SkeletonFrame {
            landmarks2d,
            landmarks3d,
            timestamp: wf.t,
        });
    }
    KeypointSequence::build(wire.fps, frames, wire.label, wire.source_id, two_d_only)
}

fn parse_csv(bytes: &[u8]) -> Result<KeypointSequence> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
    let headers = reader
        .headers()
        .map_err(|e| Error::Syntax(e.to_string()))?
        .clone();
    let expected = ["frame", "t", "idx", "x2", "y2", "vis", "x3", "y3", "z3"];
    if headers.iter().ne(expected.iter().copied()) {
        return Err(Error::Syntax(format!(
            "csv header must be `{}`",
            expected.join(",")
        )));
    }

    let mut groups: Vec<Vec<CsvRow>> = Vec::new();
    for row in reader.deserialize::<CsvRow>() {
        let row = row.map_err(|e| Error::Syntax(e.to_string()))?;
        if row.frame == groups.len() {
            groups.push(Vec::with_capacity(LANDMARK_COUNT));
        } else if row.frame + 1 != groups.len() {
            return Err(Error::CsvLayout {
                frame: row.frame,
                message: format!("frame indices must be contiguous from 0 (previous {})", groups.len() as isize - 1),
            });
        }
        groups.last_mut().expect("group pushed above").push(row);
    }
    if groups.is_empty() {
        return Err(Error::EmptySequence);
    }

    let two_d_only = groups[0][0].x3.is_none();
    let mut frames = Vec::with_capacity(groups.len());
    for (k, rows) in groups.into_iter().enumerate() {
        if rows.len() != LANDMARK_COUNT {
            return Err(Error::LandmarkCount {
                frame: k,
                count: rows.len(),
            });
        }
        let t = rows[0].t;
        let mut lm2d = Vec::with_capacity(LANDMARK_COUNT);
        let mut lm3d = Vec::with_capacity(LANDMARK_COUNT);
        for (expected_idx, row) in rows.iter().enumerate() {
            if row.idx != expected_idx {
                return Err(Error::CsvLayout {
                    frame: k,
                    message: format!("expected landmark {expected_idx}, found {}", row.idx),
                });
            }
            if row.t.to_bits() != t.to_bits() {
                return Err(Error::CsvLayout {
                    frame: k,
                    message: "timestamp differs between rows of one frame".into(),
                });
            }
            let l2 = Landmark::new(row.x2, row.y2, 0.0, row.vis);
            lm2d.push(l2);
            match (row.x3, row.y3, row.z3, two_d_only) {
                (Some(x), Some(y), Some(z), false) => lm3d.push(Landmark::new(x, y, z, row.vis)),
                (None, None, None, true) => lm3d.push(l2),
                _ => {
                    return Err(Error::CsvLayout {
                        frame: k,
                        message: format!("3D columns must be all present or all empty (landmark {expected_idx})"),
                    })
                }
            }
        }
        frames.push(SkeletonFrame {
            landmarks2d: to_array(k, lm2d)?,
            landmarks3d: to_array(k, lm3d)?,
            timestamp: t,
        });
    }

    // CSV carries no fps column; recover it from the mean frame interval.
    let fps = match frames.len() {
        1 => DEFAULT_FPS,
        n => {
            let span = frames[n - 1].timestamp - frames[0].timestamp;
            if span > 0.0 {
                (n - 1) as f64 / span
            } else {
                DEFAULT_FPS
            }
        }
    };
    KeypointSequence::build(fps, frames, None, String::new(), two_d_only)
}

/// Frame rate assumed for single-frame CSV input.
pub const DEFAULT_FPS: f64 = 30.0;

pub fn serialize_sequence(seq: &KeypointSequence, format: SequenceFormat) -> Result<Vec<u8>> {
    match format {
        SequenceFormat::Json => {
            let wire = WireSequence {
                fps: seq.fps,
                label: seq.label.clone(),
                source_id: seq.source_id.clone(),
                frames: seq
                    .frames
                    .iter()
                    .map(|f| WireFrame {
                        t: f.timestamp,
                        lm2d: f.landmarks2d.iter().map(|l| [l.x, l.y, l.visibility]).collect(),
                        lm3d: (!seq.two_d_only)
                            .then(|| f.landmarks3d.iter().map(|l| [l.x, l.y, l.z]).collect()),
                    })
                    .collect(),
            };
            serde_json::to_vec(&wire).map_err(|e| Error::Syntax(e.to_string()))
        }
        SequenceFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for (k, f) in seq.frames.iter().enumerate() {
                for (idx, (l2, l3)) in f.landmarks2d.iter().zip(&f.landmarks3d).enumerate() {
                    let three = !seq.two_d_only;
                    writer
                        .serialize(CsvRow {
                            frame: k,
                            t: f.timestamp,
                            idx,
                            x2: l2.x,
                            y2: l2.y,
                            vis: l2.visibility,
                            x3: three.then_some(l3.x),
                            y3: three.then_some(l3.y),
                            z3: three.then_some(l3.z),
                        })
                        .map_err(|e| Error::Syntax(e.to_string()))?;
                }
            }
            writer
                .into_inner()
                .map_err(|e| Error::Syntax(e.to_string()))
        }
    }
}

/// Landmarks whose visibility falls below a threshold in one frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowVisibility {
    pub frame: usize,
    pub landmarks: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub frames: Vec<LowVisibility>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn flagged_count(&self) -> usize {
        self.frames.iter().map(|f| f.landmarks.len()).sum()
    }
}

/// Lists, per frame, the 2D landmarks with visibility below `min_visibility`.
pub fn validate_sequence(seq: &KeypointSequence, min_visibility: f64) -> ValidationReport {
    let frames = seq
        .frames()
        .iter()
        .enumerate()
        .filter_map(|(k, f)| {
            let landmarks: Vec<usize> = f
                .landmarks2d
                .iter()
                .enumerate()
                .filter(|(_, l)| l.visibility < min_visibility)
                .map(|(i, _)| i)
                .collect();
            (!landmarks.is_empty()).then_some(LowVisibility { frame: k, landmarks })
        })
        .collect();
    ValidationReport { frames }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_frame_json(n: usize, t: f64) -> String {
        let lm2d = vec!["[0.0,0.0,1.0]"; n].join(",");
        let lm3d = vec!["[0.0,0.0,0.0]"; n].join(",");
        format!(r#"{{"t":{t},"lm2d":[{lm2d}],"lm3d":[{lm3d}]}}"#)
    }

    fn seq_json(frames: &[String]) -> String {
        format!(
            r#"{{"fps":30.0,"label":null,"source_id":"s","frames":[{}]}}"#,
            frames.join(",")
        )
    }

    #[test]
    fn single_zeroed_frame_parses() {
        let json = seq_json(&[zero_frame_json(33, 0.0)]);
        let seq = parse_sequence(json.as_bytes(), SequenceFormat::Json).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq.fps(), 30.0);
        assert!(!seq.is_two_d_only());
    }

    #[test]
    fn short_frame_is_rejected_with_index() {
        let json = seq_json(&[zero_frame_json(32, 0.0)]);
        let err = parse_sequence(json.as_bytes(), SequenceFormat::Json).unwrap_err();
        assert_eq!(err.to_string(), "landmark count 32 ≠ 33 at frame 0");
    }

    #[test]
    fn decreasing_timestamps_are_rejected() {
        let json = seq_json(&[zero_frame_json(33, 0.10), zero_frame_json(33, 0.05)]);
        let err = parse_sequence(json.as_bytes(), SequenceFormat::Json).unwrap_err();
        assert_eq!(err.to_string(), "non-increasing timestamp at frame 1");
    }

    #[test]
    fn two_d_only_file_gets_flat_copies() {
        let lm2d = vec!["[0.25,0.5,0.9]"; 33].join(",");
        let json = format!(r#"{{"fps":25,"source_id":"x","frames":[{{"t":0,"lm2d":[{lm2d}]}}]}}"#);
        let seq = parse_sequence(json.as_bytes(), SequenceFormat::Json).unwrap();
        assert!(seq.is_two_d_only());
        let f = &seq.frames()[0];
        assert_eq!(f.landmarks3d[5], Landmark::new(0.25, 0.5, 0.0, 0.9));
        assert_eq!(seq.label(), None);
    }

    #[test]
    fn empty_frames_and_bad_fps() {
        let json = r#"{"fps":30,"source_id":"x","frames":[]}"#;
        assert!(matches!(
            parse_sequence(json.as_bytes(), SequenceFormat::Json),
            Err(Error::EmptySequence)
        ));
        let json = seq_json(&[zero_frame_json(33, 0.0)]).replace("30.0", "0");
        assert!(matches!(
            parse_sequence(json.as_bytes(), SequenceFormat::Json),
            Err(Error::InvalidFps(_))
        ));
    }

    #[test]
    fn out_of_range_visibility_is_rejected() {
        let json = seq_json(&[zero_frame_json(33, 0.0)]).replacen("[0.0,0.0,1.0]", "[0.0,0.0,1.5]", 1);
        let err = parse_sequence(json.as_bytes(), SequenceFormat::Json).unwrap_err();
        assert!(matches!(err, Error::Visibility { frame: 0, landmark: 0, .. }));
    }

    #[test]
    fn csv_round_trip_and_fps_recovery() {
        let json = seq_json(&[zero_frame_json(33, 0.0), zero_frame_json(33, 0.5)]);
        let seq = parse_sequence(json.as_bytes(), SequenceFormat::Json).unwrap();
        let csv = serialize_sequence(&seq, SequenceFormat::Csv).unwrap();
        let text = String::from_utf8(csv.clone()).unwrap();
        assert!(text.starts_with("frame,t,idx,x2,y2,vis,x3,y3,z3\n"));
        assert_eq!(text.lines().count(), 1 + 2 * 33);
        let back = parse_sequence(&csv, SequenceFormat::Csv).unwrap();
        assert_eq!(back.frames(), seq.frames());
        assert_eq!(back.fps(), 2.0);
    }

    #[test]
    fn csv_rejects_missing_row_and_nan() {
        let json = seq_json(&[zero_frame_json(33, 0.0)]);
        let seq = parse_sequence(json.as_bytes(), SequenceFormat::Json).unwrap();
        let text = String::from_utf8(serialize_sequence(&seq, SequenceFormat::Csv).unwrap()).unwrap();
        let short: Vec<&str> = text.lines().take(33).collect();
        let err = parse_sequence(short.join("\n").as_bytes(), SequenceFormat::Csv).unwrap_err();
        assert_eq!(err.to_string(), "landmark count 32 ≠ 33 at frame 0");

        let nan = text.replacen("0,0.0,0,0.0,", "0,0.0,0,NaN,", 1);
        assert_ne!(nan, text);
        let err = parse_sequence(nan.as_bytes(), SequenceFormat::Csv).unwrap_err();
        assert!(matches!(err, Error::NonFinite { frame: 0, .. }), "{err}");
    }

    #[test]
    fn validation_report_flags_low_visibility() {
        let json = seq_json(&[zero_frame_json(33, 0.0)]);
        let seq = parse_sequence(json.as_bytes(), SequenceFormat::Json).unwrap();
        assert!(validate_sequence(&seq, 0.5).is_empty());

        let mut frames = seq.clone().into_frames();
        frames[0].landmarks2d[14].visibility = 0.2;
        let seq = KeypointSequence::new(30.0, frames, None, "s").unwrap();
        let report = validate_sequence(&seq, 0.5);
        assert_eq!(
            report.frames,
            vec![LowVisibility {
                frame: 0,
                landmarks: vec![14]
            }]
        );
        assert!(validate_sequence(&seq, 0.0).is_empty());
    }

    #[test]
    fn mirror_pairs_are_involutive() {
        for lm in BodyLandmark::ALL {
            assert_eq!(lm.mirror().mirror(), lm);
            let swapped = lm
                .name()
                .replace("left", "#")
                .replace("right", "left")
                .replace('#', "right");
            assert_eq!(swapped, lm.mirror().name());
        }
    }
}
