//! Synthetic seafloor-like textures with ground truth, for tests and demos.

use std::f64::consts::PI;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// A single texture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Texture {
    /// Oriented sinusoid plus mild Gaussian noise.
    Ripple,
    /// Low-variance Gaussian noise around mid-gray.
    Flat,
    /// High-variance speckle with bright blobs.
    RockNoise,
}

impl Texture {
    pub fn name(self) -> &'static str {
        match self {
            Texture::Ripple => "ripple",
            Texture::Flat => "flat",
            Texture::RockNoise => "rock-noise",
        }
    }
}

impl FromStr for Texture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ripple" => Ok(Texture::Ripple),
            "flat" => Ok(Texture::Flat),
            "rock-noise" | "rock" => Ok(Texture::RockNoise),
            _ => Err(Error::config(format!("unknown texture '{s}'"))),
        }
    }
}

/// How a composite splits the image between its textures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// Side-by-side vertical bands.
    Vertical,
    /// Bands separated by lines of constant `row + col`.
    Diagonal,
}

impl Layout {
    pub fn name(self) -> &'static str {
        match self {
            Layout::Vertical => "vertical",
            Layout::Diagonal => "diagonal",
        }
    }
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertical" => Ok(Layout::Vertical),
            "diagonal" => Ok(Layout::Diagonal),
            _ => Err(Error::config(format!("unknown layout '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthParams {
    pub rows: usize,
    pub cols: usize,
    pub seed: u64,
    /// Ripple period in pixels.
    pub wavelength: f64,
    /// Ripple crest direction, degrees from the column axis.
    pub angle_deg: f64,
    /// Textures of a composite, left to right (2 or 3). A single entry
    /// produces a plain texture.
    pub textures: Vec<Texture>,
    pub layout: Layout,
    /// Radius in pixels of an injected bright outlier disk, if any.
    pub outlier_radius: Option<usize>,
    /// Half-width of the band around texture boundaries.
    pub band: usize,
}

impl SynthParams {
    pub fn texture(texture: Texture, rows: usize, cols: usize, seed: u64) -> Self {
        Self {
            rows,
            cols,
            seed,
            wavelength: 12.0,
            angle_deg: 30.0,
            textures: vec![texture],
            layout: Layout::Vertical,
            outlier_radius: None,
            band: 8,
        }
    }

    pub fn composite(textures: Vec<Texture>, rows: usize, cols: usize, seed: u64) -> Self {
        Self { textures, ..Self::texture(Texture::Ripple, rows, cols, seed) }
    }
}

/// A generated image with its ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthImage {
    pub image: GrayImage<f64>,
    /// Index into `SynthParams::textures` for every pixel.
    pub labels: Vec<u8>,
    /// Pixels of the injected outlier.
    pub outlier: Vec<bool>,
    /// Pixels within `band` of a texture boundary.
    pub boundary: Vec<bool>,
}

fn texture_value(
    texture: Texture,
    r: usize,
    c: usize,
    params: &SynthParams,
    rng: &mut ChaCha8Rng,
    rock_blobs: &[(f64, f64, f64)],
) -> f64 {
    let unit = Normal::new(0.0, 1.0).expect("valid normal");
    let v = match texture {
        Texture::Ripple => {
            let theta = params.angle_deg.to_radians();
            let phase = 2.0 * PI * (c as f64 * theta.cos() + r as f64 * theta.sin()) / params.wavelength;
            0.5 + 0.35 * phase.sin() + 0.03 * unit.sample(rng)
        }
        Texture::Flat => 0.5 + 0.02 * unit.sample(rng),
        Texture::RockNoise => {
            let blob = rock_blobs
                .iter()
                .any(|&(br, bc, rad)| (r as f64 - br).hypot(c as f64 - bc) <= rad);
            if blob {
                0.9 + 0.05 * unit.sample(rng)
            } else {
                0.35 + 0.2 * unit.sample(rng)
            }
        }
    };
    v.clamp(0.0, 1.0)
}

fn region_of(params: &SynthParams, r: usize, c: usize) -> usize {
    let k = params.textures.len();
    let pos = match params.layout {
        Layout::Vertical => c as f64 / params.cols as f64,
        Layout::Diagonal => (r + c) as f64 / (params.rows + params.cols - 1) as f64,
    };
    ((pos * k as f64) as usize).min(k - 1)
}

/// Marks pixels whose `(2 * band + 1)`-square neighborhood contains more than
/// one label.
pub fn boundary_band(rows: usize, cols: usize, labels: &[u8], band: usize) -> Vec<bool> {
    let half = band as isize;
    let clamp = |v: isize, hi: usize| v.clamp(0, hi as isize - 1) as usize;
    let mut lo = vec![0u8; labels.len()];
    let mut hi = vec![0u8; labels.len()];
    for r in 0..rows {
        for c in 0..cols {
            let window = (-half..=half).map(|d| labels[r * cols + clamp(c as isize + d, cols)]);
            lo[r * cols + c] = window.clone().min().unwrap_or(0);
            hi[r * cols + c] = window.max().unwrap_or(0);
        }
    }
    let mut out = vec![false; labels.len()];
    for r in 0..rows {
        for c in 0..cols {
            let rows_in = (-half..=half).map(|d| clamp(r as isize + d, rows) * cols + c);
            let min = rows_in.clone().map(|p| lo[p]).min().unwrap_or(0);
            let max = rows_in.map(|p| hi[p]).max().unwrap_or(0);
            out[r * cols + c] = min != max;
        }
    }
    out
}

/// Generates an image. Sizes below 64 pixels per side are rejected.
pub fn generate(params: &SynthParams) -> Result<SynthImage> {
    let (rows, cols) = (params.rows, params.cols);
    if rows < 64 || cols < 64 {
        return Err(Error::input(format!("synthetic images must be at least 64x64, got {rows}x{cols}")));
    }
    if params.textures.is_empty() || params.textures.len() > 3 {
        return Err(Error::input("a synthetic image needs one to three textures"));
    }
    if params.wavelength.is_nan() || params.wavelength <= 0.0 {
        return Err(Error::input("ripple wavelength must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let rock_blobs: Vec<(f64, f64, f64)> = (0..(rows * cols / 600).max(1))
        .map(|_| {
            (
                rng.random_range(0.0..rows as f64),
                rng.random_range(0.0..cols as f64),
                rng.random_range(1.5..3.5),
            )
        })
        .collect();

    let mut labels = Vec::with_capacity(rows * cols);
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let region = region_of(params, r, c);
            labels.push(region as u8);
            data.push(texture_value(params.textures[region], r, c, params, &mut rng, &rock_blobs));
        }
    }
    let boundary = boundary_band(rows, cols, &labels, params.band);

    let mut outlier = vec![false; rows * cols];
    if let Some(radius) = params.outlier_radius {
        let margin = (radius + params.band) as isize;
        // candidates whose disk plus margin stays off the band and the border
        let clear = |r: usize, c: usize| {
            (-margin..=margin).all(|dr| {
                (-margin..=margin).all(|dc| {
                    let (nr, nc) = (r as isize + dr, c as isize + dc);
                    nr >= 0 && nc >= 0 && (nr as usize) < rows && (nc as usize) < cols && !boundary[nr as usize * cols + nc as usize]
                })
            })
        };
        let center = (0..1000)
            .map(|_| (rng.random_range(0..rows), rng.random_range(0..cols)))
            .find(|&(r, c)| clear(r, c))
            .ok_or_else(|| Error::input("no room for the outlier away from texture boundaries"))?;
        let rad = radius as f64;
        for r in 0..rows {
            for c in 0..cols {
                if (r as f64 - center.0 as f64).hypot(c as f64 - center.1 as f64) <= rad {
                    outlier[r * cols + c] = true;
                    data[r * cols + c] = 1.0;
                }
            }
        }
    }

    Ok(SynthImage { image: GrayImage::new(rows, cols, data)?, labels, outlier, boundary })
}
