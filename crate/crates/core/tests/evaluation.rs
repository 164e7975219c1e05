mod common;

use posescore::evaluation::{run_manifest, DatasetManifest, ManifestTemplate, ManifestTest};
use posescore::synthetic::{write_synthetic, SyntheticConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn self_match_manifest_is_perfect() {
    let dir = tempfile::tempdir().unwrap();
    let seq = common::random_sequence(&mut ChaCha8Rng::seed_from_u64(11), 12);
    seq.save(dir.path().join("a.json")).unwrap();
    let manifest = DatasetManifest {
        templates: vec![ManifestTemplate {
            path: "a.json".into(),
            category: "a".into(),
        }],
        tests: vec![ManifestTest {
            path: "a.json".into(),
            category: "a".into(),
            expert_score: None,
        }],
        params: Default::default(),
        mode: Default::default(),
        method: Default::default(),
    };
    let report = run_manifest(&manifest, dir.path()).unwrap();
    assert_eq!((report.accuracy, report.rate80), (100.0, 100.0));
    assert_eq!(report.report.tests[0].ranked[0].fs, 100.0);
    assert!(report.spearman.is_none());
}

#[test]
fn test_order_does_not_change_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_synthetic(dir.path(), &SyntheticConfig::default()).unwrap();
    let mut manifest = DatasetManifest::load(&path).unwrap();
    for (k, t) in manifest.tests.iter_mut().enumerate() {
        t.expert_score = Some(50.0 + k as f64);
    }
    let a = run_manifest(&manifest, dir.path()).unwrap();
    manifest.tests.reverse();
    let b = run_manifest(&manifest, dir.path()).unwrap();
    assert_eq!(a.accuracy, b.accuracy);
    assert_eq!(a.rate80, b.rate80);
    assert!((a.spearman.unwrap() - b.spearman.unwrap()).abs() < 1e-12);
}

#[test]
fn missing_test_file_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_synthetic(dir.path(), &SyntheticConfig::default()).unwrap();
    let mut manifest = DatasetManifest::load(&path).unwrap();
    manifest.tests[3].path = "tests/nope.json".into();
    let err = run_manifest(&manifest, dir.path()).unwrap_err().to_string();
    assert!(err.contains("nope.json"), "{err}");
}
