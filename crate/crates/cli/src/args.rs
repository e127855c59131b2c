//! Command-line syntax. Flags are collected as raw `key = value` settings and
//! resolved, together with any `--config` file, in [`crate::config`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Settings;
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "pflicm", version, about = "Soft texture segmentation with possibilistic fuzzy local-information c-means")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Segment a grayscale image into per-cluster maps.
    Segment(PipelineArgs),
    /// Cluster a feature table (CSV) as given.
    Cluster(PipelineArgs),
    /// Segment an image with pflicm, flicm and pfcm on shared superpixels.
    Compare(PipelineArgs),
    /// Generate a synthetic texture image with ground truth.
    Synth(SynthArgs),
}

/// Options shared by every subcommand.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// `key = value` file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Any setting as KEY=VALUE (repeatable); overrides the config file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[arg(long)]
    pub out_dir: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// Map and label image format: png or pgm.
    #[arg(long)]
    pub image_format: Option<String>,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Input image (segment, compare) or feature CSV (cluster).
    #[arg(long)]
    pub input: Option<String>,
    /// pflicm, flicm, pfcm or fcm.
    #[arg(long)]
    pub algo: Option<String>,
    #[arg(long)]
    pub clusters: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub max_iters: Option<String>,
    /// Neighborhood radius in pixels; `inf` connects all superpixels.
    #[arg(long)]
    pub radius: Option<String>,
    #[arg(long)]
    pub k_target: Option<String>,
    #[arg(long)]
    pub compactness: Option<String>,
    /// z-score features before clustering (true/false).
    #[arg(long)]
    pub normalize: Option<String>,
    /// Exit with status 3 when a run stops at its iteration cap.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// ripple, flat, rock-noise or composite.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub rows: Option<String>,
    #[arg(long)]
    pub cols: Option<String>,
    /// Comma-separated textures of a composite.
    #[arg(long)]
    pub textures: Option<String>,
    /// vertical or diagonal.
    #[arg(long)]
    pub layout: Option<String>,
    #[arg(long)]
    pub wavelength: Option<String>,
    /// Ripple direction in degrees.
    #[arg(long)]
    pub angle: Option<String>,
    /// Radius of an injected outlier disk, or `none`.
    #[arg(long)]
    pub outlier_radius: Option<String>,
    #[arg(long)]
    pub band: Option<String>,
}

fn push_all(settings: &mut Settings, pairs: &[(&str, &Option<String>)]) {
    for (key, value) in pairs {
        if let Some(v) = value {
            settings.push(key, v);
        }
    }
}

impl CommonArgs {
    /// Config file entries, then `--set` entries, then dedicated flags.
    fn settings(&self) -> CliResult<Settings> {
        let mut settings = match &self.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        for entry in &self.set {
            let (k, v) = entry
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("--set expects KEY=VALUE, got '{entry}'")))?;
            settings.push(k.trim(), v.trim());
        }
        push_all(
            &mut settings,
            &[("out_dir", &self.out_dir), ("seed", &self.seed), ("image_format", &self.image_format)],
        );
        Ok(settings)
    }
}

impl PipelineArgs {
    pub fn settings(&self) -> CliResult<Settings> {
        let mut settings = self.common.settings()?;
        push_all(
            &mut settings,
            &[
                ("input", &self.input),
                ("algo", &self.algo),
                ("clusters", &self.clusters),
                ("a", &self.a),
                ("b", &self.b),
                ("m", &self.m),
                ("q", &self.q),
                ("epsilon", &self.epsilon),
                ("max_iters", &self.max_iters),
                ("radius", &self.radius),
                ("k_target", &self.k_target),
                ("compactness", &self.compactness),
                ("normalize", &self.normalize),
            ],
        );
        if self.strict {
            settings.push("strict", "true");
        }
        Ok(settings)
    }
}

impl SynthArgs {
    pub fn settings(&self) -> CliResult<Settings> {
        let mut settings = self.common.settings()?;
        push_all(
            &mut settings,
            &[
                ("kind", &self.kind),
                ("rows", &self.rows),
                ("cols", &self.cols),
                ("textures", &self.textures),
                ("layout", &self.layout),
                ("wavelength", &self.wavelength),
                ("angle", &self.angle),
                ("outlier_radius", &self.outlier_radius),
                ("band", &self.band),
            ],
        );
        Ok(settings)
    }
}
