use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail};
use clap::{Args, Parser, Subcommand};
use posescore::evaluation::{evaluate_with, match_action, DatasetManifest, Template};
use posescore::features::{CoefficientTable, FeatureMode, FeatureRegistry};
use posescore::skeleton::KeypointSequence;
use posescore::synthetic::{write_synthetic, SyntheticConfig};
use posescore::{Method, Scorer, ScoringConfig};

#[derive(Parser)]
#[command(name = "posescore", version, about = "Score recorded exercise repetitions against templates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a test recording against one template.
    Score {
        template: PathBuf,
        test: PathBuf,
        #[command(flatten)]
        opts: ScoringOpts,
        /// Also print the warping path and per-frame scores as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Rank every template in a directory against a test recording.
    Match {
        test: PathBuf,
        template_dir: PathBuf,
        #[command(flatten)]
        opts: ScoringOpts,
        #[arg(long)]
        json: bool,
    },
    /// Run a dataset manifest and write report.json and report.txt.
    Evaluate {
        manifest: PathBuf,
        #[command(flatten)]
        opts: ScoringOpts,
        /// Report directory (defaults to the manifest's directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the cost, score, MED and participation matrices plus the path.
    ExportMatrices {
        template: PathBuf,
        test: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        opts: ScoringOpts,
    },
    /// Generate the deterministic synthetic dataset.
    GenSynthetic {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        tests_per_category: usize,
    },
}

#[derive(Args, Clone)]
struct ScoringOpts {
    /// dtw, greedy or acdtw [default: acdtw]
    #[arg(long)]
    method: Option<Method>,
    /// 2d, 3d or 2d3d [default: 2d3d]
    #[arg(long)]
    mode: Option<FeatureMode>,
    /// Relative deviation tolerated without losing points [default: 0.1]
    #[arg(long)]
    t: Option<f64>,
    /// Lower clamp on frame scores [default: 1]
    #[arg(long)]
    score_floor: Option<f64>,
    /// Fixed ACDTW length-ratio coefficient instead of the adaptive one.
    #[arg(long)]
    penalty_coef: Option<f64>,
    /// Feature registry JSON replacing the default for --mode.
    #[arg(long)]
    registry: Option<PathBuf>,
    /// Barycenter coefficient table JSON.
    #[arg(long)]
    coefficients: Option<PathBuf>,
}

impl ScoringOpts {
    fn apply(&self, mut config: ScoringConfig) -> ScoringConfig {
        if let Some(m) = self.method {
            config.method = m;
        }
        if let Some(m) = self.mode {
            config.mode = m;
        }
        if let Some(t) = self.t {
            config.params.t = t;
        }
        if let Some(f) = self.score_floor {
            config.params.score_floor = f;
        }
        if let Some(c) = self.penalty_coef {
            config.penalty.length_ratio_override = Some(c);
        }
        config
    }

    fn scorer(&self, base: ScoringConfig) -> anyhow::Result<Scorer> {
        let config = self.apply(base);
        config.validate()?;
        let registry = match &self.registry {
            Some(p) => FeatureRegistry::load(p)?,
            None => FeatureRegistry::default_for(config.mode),
        };
        let coefficients = match &self.coefficients {
            Some(p) => CoefficientTable::load(p)?,
            None => CoefficientTable::default(),
        };
        Ok(Scorer::with_registry(config, registry, coefficients)?)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Score {
            template,
            test,
            opts,
            json,
        } => {
            let scorer = opts.scorer(ScoringConfig::default())?;
            let result = scorer.score(&KeypointSequence::load(&template)?, &KeypointSequence::load(&test)?)?;
            println!("FS={:.2}", result.fs);
            if json {
                let detail = serde_json::json!({
                    "fs": result.fs,
                    "method": result.method,
                    "cost": result.total_cost(),
                    "penalty_coefficient": result.penalty_coefficient,
                    "path": result.path,
                    "frame_scores": result.path_scores(),
                });
                println!("{}", serde_json::to_string_pretty(&detail)?);
            }
        }
        Command::Match {
            test,
            template_dir,
            opts,
            json,
        } => {
            let scorer = opts.scorer(ScoringConfig::default())?;
            let test_seq = KeypointSequence::load(&test)?;
            let templates = load_templates(&template_dir)?;
            let result = match_action(&test_seq, &templates, &scorer)?;
            for (k, why) in &result.failures {
                eprintln!("warning: {}: {why}", templates[*k].sequence.source_id());
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&result)?);
            } else {
                println!("{:<4} {:<20} {:<24} {:>7}", "Rank", "Category", "Template", "FS");
                for (rank, s) in result.ranked.iter().enumerate() {
                    println!(
                        "{:<4} {:<20} {:<24} {:>7.2}",
                        rank + 1,
                        s.category,
                        templates[s.template].sequence.source_id(),
                        s.fs
                    );
                }
            }
        }
        Command::Evaluate { manifest, opts, out } => {
            opts.apply(ScoringConfig::default()).validate()?;
            let parsed = DatasetManifest::load(&manifest)?;
            let scorer = opts.scorer(parsed.scoring_config())?;
            let base = manifest
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            let report = evaluate_with(&parsed, base, &scorer)?;
            let out = out.unwrap_or_else(|| base.to_path_buf());
            fs::create_dir_all(&out).map_err(|e| anyhow!("{}: {e}", out.display()))?;
            let json_path = out.join("report.json");
            fs::write(&json_path, report.to_json()).map_err(|e| anyhow!("{}: {e}", json_path.display()))?;
            let txt_path = out.join("report.txt");
            fs::write(&txt_path, report.to_table()).map_err(|e| anyhow!("{}: {e}", txt_path.display()))?;
            println!("Acc={:.2}", report.accuracy);
            println!("Rate80={:.2}", report.rate80);
            if let Some(rho) = report.spearman {
                println!("Spearman={rho:.4}");
            }
        }
        Command::ExportMatrices {
            template,
            test,
            out,
            opts,
        } => {
            let scorer = opts.scorer(ScoringConfig::default())?;
            let result = scorer.score(&KeypointSequence::load(&template)?, &KeypointSequence::load(&test)?)?;
            for p in result.write_exports(&out)? {
                println!("{}", p.display());
            }
        }
        Command::GenSynthetic {
            out,
            seed,
            tests_per_category,
        } => {
            let config = SyntheticConfig {
                seed,
                tests_per_category,
                ..SyntheticConfig::default()
            };
            let manifest = write_synthetic(&out, &config)?;
            println!("{}", manifest.display());
        }
    }
    Ok(())
}

/// Every `.json` / `.csv` sequence in `dir`, sorted by file name. The category
/// is the recording's label, else the file stem. Unparsable files are skipped
/// with a warning.
fn load_templates(dir: &Path) -> anyhow::Result<Vec<Template>> {
    let entries = fs::read_dir(dir).map_err(|e| anyhow!("{}: {e}", dir.display()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && has_sequence_extension(p))
        .collect();
    paths.sort();
    let mut templates = Vec::new();
    for p in paths {
        match KeypointSequence::load(&p) {
            Ok(seq) => {
                let category = match seq.label() {
                    Some(l) if !l.is_empty() => l.to_string(),
                    _ => p.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned()),
                };
                templates.push(Template::new(category, seq));
            }
            Err(e) => eprintln!("warning: skipping {e}"),
        }
    }
    if templates.is_empty() {
        bail!("{}: no parsable template sequences", dir.display());
    }
    Ok(templates)
}

fn has_sequence_extension(p: &Path) -> bool {
    p.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json") || e.eq_ignore_ascii_case("csv"))
}
