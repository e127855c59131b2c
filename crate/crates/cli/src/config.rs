//! Resolved run configuration.
//!
//! Settings come from built-in defaults, then an optional `key = value` file,
//! then command-line flags; later sources win. Every run echoes the fully
//! resolved configuration so that feeding the echo back reproduces the run.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use pflicm::clustering::ClusterConfig;
use pflicm::features::{HogParams, SobelParams, TextureParams};
use pflicm::io::{format_key_values, parse_key_values};
use pflicm::synth::{Layout, SynthParams, Texture};
use pflicm::GammaMode;

use crate::error::{CliError, CliResult};

/// Which clustering variant a run uses. All four share one engine; the
/// reductions fix `b` and/or the neighborhood radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Pflicm,
    Flicm,
    Pfcm,
    Fcm,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Pflicm => "pflicm",
            Algo::Flicm => "flicm",
            Algo::Pfcm => "pfcm",
            Algo::Fcm => "fcm",
        }
    }

    /// True when the typicality term is active, so hard labels come from the
    /// product maps rather than the memberships.
    pub fn is_possibilistic(self) -> bool {
        matches!(self, Algo::Pflicm | Algo::Pfcm)
    }

    fn forces_zero_b(self) -> bool {
        matches!(self, Algo::Flicm | Algo::Fcm)
    }

    fn forces_zero_radius(self) -> bool {
        matches!(self, Algo::Pfcm | Algo::Fcm)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "pflicm" => Ok(Algo::Pflicm),
            "flicm" => Ok(Algo::Flicm),
            "pfcm" => Ok(Algo::Pfcm),
            "fcm" => Ok(Algo::Fcm),
            _ => Err(CliError::usage(format!("unknown algorithm '{s}' (expected pflicm, flicm, pfcm or fcm)"))),
        }
    }
}

/// Output image encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Png,
    Pgm,
}

impl ImageFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ImageFormat::Png => "png",
            ImageFormat::Pgm => "pgm",
        }
    }
}

impl FromStr for ImageFormat {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "png" => Ok(ImageFormat::Png),
            "pgm" => Ok(ImageFormat::Pgm),
            _ => Err(CliError::usage(format!("unknown image format '{s}' (expected png or pgm)"))),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
    value.parse().map_err(|_| CliError::usage(format!("{key}: cannot parse '{value}'")))
}

fn parse_f64(key: &str, value: &str) -> CliResult<f64> {
    let v: f64 = parse(key, value)?;
    if v.is_nan() {
        return Err(CliError::usage(format!("{key}: value is not a number")));
    }
    Ok(v)
}

fn parse_gamma_mode(value: &str) -> CliResult<GammaMode> {
    match value {
        "adaptive" => Ok(GammaMode::Adaptive),
        "frozen" => Ok(GammaMode::Frozen),
        _ => Err(CliError::usage(format!("gamma_mode: expected adaptive or frozen, got '{value}'"))),
    }
}

fn gamma_mode_name(mode: GammaMode) -> &'static str {
    match mode {
        GammaMode::Adaptive => "adaptive",
        GammaMode::Frozen => "frozen",
    }
}

/// Collects `(key, value)` settings from a config file and from flags.
#[derive(Debug, Default, Clone)]
pub struct Settings {
    pairs: Vec<(String, String)>,
}

impl Settings {
    /// Reads a `key = value` file.
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| pflicm::Error::Io { path: path.into(), source: e })?;
        let pairs = parse_key_values(&text)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        Ok(Self { pairs })
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.pairs.push((key.to_string(), value.to_string()));
    }

    /// Appends `other`, whose entries then take precedence.
    pub fn extend(&mut self, other: Settings) {
        self.pairs.extend(other.pairs);
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }
}

/// Everything a segment, cluster or compare run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub input: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub algo: Algo,
    pub cluster: ClusterConfig,
    pub texture: TextureParams,
    pub k_target: usize,
    pub compactness: f64,
    pub slic_iters: usize,
    /// z-score features before clustering.
    pub normalize: bool,
    pub image_format: ImageFormat,
    /// Treat a run that hits its iteration cap as a failure.
    pub strict: bool,
}

/// Which subcommand a pipeline configuration is for; selects defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineKind {
    /// Image input: superpixel features are z-scored by default.
    Image,
    /// Feature-table input: clustered as given by default.
    Table,
}

impl PipelineConfig {
    pub fn defaults(kind: PipelineKind) -> Self {
        Self {
            input: None,
            out_dir: PathBuf::from("."),
            algo: Algo::Pflicm,
            cluster: ClusterConfig::default(),
            texture: TextureParams::default(),
            k_target: 400,
            compactness: 10.0,
            slic_iters: 10,
            normalize: kind == PipelineKind::Image,
            image_format: ImageFormat::Png,
            strict: false,
        }
    }

    /// Applies `settings` over the defaults, then the algorithm's reduction:
    /// fcm and flicm need `b = 0`, fcm and pfcm need `radius = 0`. A reduced
    /// parameter left unset is filled in; one set to anything else is an error.
    pub fn resolve(kind: PipelineKind, settings: &Settings) -> CliResult<Self> {
        let mut cfg = Self::defaults(kind);
        let mut given = BTreeSet::new();
        for (key, value) in settings.pairs() {
            cfg.set(key, value)?;
            given.insert(key.as_str());
        }
        if cfg.algo.forces_zero_b() {
            if given.contains("b") && cfg.cluster.b != 0.0 {
                return Err(CliError::usage(format!(
                    "algorithm {} requires b = 0, but b = {} was given",
                    cfg.algo, cfg.cluster.b
                )));
            }
            cfg.cluster.b = 0.0;
        }
        if cfg.algo.forces_zero_radius() {
            if given.contains("radius") && cfg.cluster.radius != 0.0 {
                return Err(CliError::usage(format!(
                    "algorithm {} requires radius = 0, but radius = {} was given",
                    cfg.algo, cfg.cluster.radius
                )));
            }
            cfg.cluster.radius = 0.0;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        let c = &mut self.cluster;
        let t = &mut self.texture;
        match key {
            "input" => self.input = Some(PathBuf::from(value)),
            "out_dir" => self.out_dir = PathBuf::from(value),
            "algo" => self.algo = value.parse()?,
            "clusters" => c.n_clusters = parse(key, value)?,
            "a" => c.a = parse_f64(key, value)?,
            "b" => c.b = parse_f64(key, value)?,
            "m" => c.m = parse_f64(key, value)?,
            "q" => c.q = parse_f64(key, value)?,
            "epsilon" => c.epsilon = parse_f64(key, value)?,
            "max_iters" => c.max_iters = parse(key, value)?,
            "radius" => c.radius = parse_f64(key, value)?,
            "seed" => c.seed = parse(key, value)?,
            "gamma_mode" => c.gamma_mode = parse_gamma_mode(value)?,
            "k_target" => self.k_target = parse(key, value)?,
            "compactness" => self.compactness = parse_f64(key, value)?,
            "slic_iters" => self.slic_iters = parse(key, value)?,
            "sobel_window" => t.sobel.window = parse(key, value)?,
            "sobel_threshold" => t.sobel.threshold = parse_f64(key, value)?,
            "hog_cell" => t.hog.cell = parse(key, value)?,
            "hog_block" => t.hog.block = parse(key, value)?,
            "hog_block_overlap" => t.hog.block_overlap = parse(key, value)?,
            "hog_bins" => t.hog.bins = parse(key, value)?,
            "hog_window" => t.hog.window = parse(key, value)?,
            "lbp_cell" => t.lbp_cell = parse(key, value)?,
            "normalize" => self.normalize = parse(key, value)?,
            "image_format" => self.image_format = value.parse()?,
            "strict" => self.strict = parse(key, value)?,
            _ => return Err(CliError::usage(format!("unknown setting '{key}'"))),
        }
        Ok(())
    }

    fn validate(&self) -> CliResult<()> {
        self.cluster.validate().map_err(|e| CliError::usage(e.to_string()))?;
        if self.k_target == 0 {
            return Err(CliError::usage("k_target must be at least 1"));
        }
        if !(self.compactness > 0.0 && self.compactness.is_finite()) {
            return Err(CliError::usage(format!("compactness must be positive, got {}", self.compactness)));
        }
        if self.slic_iters == 0 {
            return Err(CliError::usage("slic_iters must be at least 1"));
        }
        Ok(())
    }

    /// Every setting, defaults included, as `key = value` text.
    pub fn echo(&self) -> String {
        let c = &self.cluster;
        let SobelParams { window: sobel_window, threshold } = self.texture.sobel;
        let HogParams { cell, block, block_overlap, bins, window } = self.texture.hog;
        let mut pairs: Vec<(&str, String)> = Vec::new();
        if let Some(input) = &self.input {
            pairs.push(("input", input.display().to_string()));
        }
        pairs.extend([
            ("out_dir", self.out_dir.display().to_string()),
            ("algo", self.algo.to_string()),
            ("clusters", c.n_clusters.to_string()),
            ("a", c.a.to_string()),
            ("b", c.b.to_string()),
            ("m", c.m.to_string()),
            ("q", c.q.to_string()),
            ("epsilon", c.epsilon.to_string()),
            ("max_iters", c.max_iters.to_string()),
            ("radius", c.radius.to_string()),
            ("seed", c.seed.to_string()),
            ("gamma_mode", gamma_mode_name(c.gamma_mode).to_string()),
            ("k_target", self.k_target.to_string()),
            ("compactness", self.compactness.to_string()),
            ("slic_iters", self.slic_iters.to_string()),
            ("sobel_window", sobel_window.to_string()),
            ("sobel_threshold", threshold.to_string()),
            ("hog_cell", cell.to_string()),
            ("hog_block", block.to_string()),
            ("hog_block_overlap", block_overlap.to_string()),
            ("hog_bins", bins.to_string()),
            ("hog_window", window.to_string()),
            ("lbp_cell", self.texture.lbp_cell.to_string()),
            ("normalize", self.normalize.to_string()),
            ("image_format", self.image_format.extension().to_string()),
            ("strict", self.strict.to_string()),
        ]);
        format_key_values(pairs)
    }

    /// The same configuration with another algorithm's reduction applied.
    pub fn with_algo(&self, algo: Algo) -> Self {
        let mut cfg = self.clone();
        cfg.algo = algo;
        if algo.forces_zero_b() {
            cfg.cluster.b = 0.0;
        }
        if algo.forces_zero_radius() {
            cfg.cluster.radius = 0.0;
        }
        cfg
    }
}

/// Settings of the synthetic image generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub out_dir: PathBuf,
    /// `composite`, or a single texture name.
    pub kind: String,
    pub params: SynthParams,
    pub image_format: ImageFormat,
}

impl SynthConfig {
    pub fn defaults() -> Self {
        let mut params = SynthParams::composite(vec![Texture::Ripple, Texture::Flat], 256, 256, 0);
        params.outlier_radius = None;
        Self { out_dir: PathBuf::from("."), kind: "composite".into(), params, image_format: ImageFormat::Png }
    }

    pub fn resolve(settings: &Settings) -> CliResult<Self> {
        let mut cfg = Self::defaults();
        for (key, value) in settings.pairs() {
            cfg.set(key, value)?;
        }
        if cfg.kind != "composite" {
            let texture: Texture = cfg.kind.parse().map_err(|e: pflicm::Error| CliError::usage(e.to_string()))?;
            cfg.params.textures = vec![texture];
        } else if !(2..=3).contains(&cfg.params.textures.len()) {
            return Err(CliError::usage(format!(
                "a composite needs 2 or 3 textures, got {}",
                cfg.params.textures.len()
            )));
        }
        if cfg.params.rows < 64 || cfg.params.cols < 64 {
            return Err(CliError::usage(format!(
                "synthetic images must be at least 64x64, got {}x{}",
                cfg.params.rows, cfg.params.cols
            )));
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        let p = &mut self.params;
        match key {
            "out_dir" => self.out_dir = PathBuf::from(value),
            "kind" => self.kind = value.to_string(),
            "rows" => p.rows = parse(key, value)?,
            "cols" => p.cols = parse(key, value)?,
            "seed" => p.seed = parse(key, value)?,
            "wavelength" => p.wavelength = parse_f64(key, value)?,
            "angle" => p.angle_deg = parse_f64(key, value)?,
            "textures" => {
                p.textures = value
                    .split(',')
                    .map(|s| s.trim().parse::<Texture>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| CliError::usage(e.to_string()))?
            }
            "layout" => p.layout = value.parse::<Layout>().map_err(|e| CliError::usage(e.to_string()))?,
            "outlier_radius" => {
                p.outlier_radius = if value == "none" { None } else { Some(parse(key, value)?) }
            }
            "band" => p.band = parse(key, value)?,
            "image_format" => self.image_format = value.parse()?,
            _ => return Err(CliError::usage(format!("unknown setting '{key}'"))),
        }
        Ok(())
    }

    pub fn echo(&self) -> String {
        let p = &self.params;
        let textures: Vec<&str> = p.textures.iter().map(|t| t.name()).collect();
        format_key_values([
            ("out_dir", self.out_dir.display().to_string()),
            ("kind", self.kind.clone()),
            ("rows", p.rows.to_string()),
            ("cols", p.cols.to_string()),
            ("seed", p.seed.to_string()),
            ("wavelength", p.wavelength.to_string()),
            ("angle", p.angle_deg.to_string()),
            ("textures", textures.join(",")),
            ("layout", p.layout.name().to_string()),
            ("outlier_radius", p.outlier_radius.map_or("none".into(), |r| r.to_string())),
            ("band", p.band.to_string()),
            ("image_format", self.image_format.extension().to_string()),
        ])
    }
}
