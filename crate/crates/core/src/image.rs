//! Grayscale images with intensities in `[0, 1]`, plus PGM/PNG input and output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageEncoder, ImageFormat};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major grayscale image. 8-bit sources are scaled by `1/255`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> GrayImage<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::input(format!("image must be at least 1x1, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::input(format!(
                "{} intensities supplied for a {rows}x{cols} image",
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite() || *v < T::zero() || *v > T::one()) {
            return Err(Error::input(format!(
                "intensity at ({}, {}) is outside [0, 1]",
                i / cols,
                i % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn constant(rows: usize, cols: usize, value: T) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn from_u8(rows: usize, cols: usize, bytes: &[u8]) -> Result<Self> {
        let scale = T::lit(255.0);
        Self::new(rows, cols, bytes.iter().map(|&b| T::from_u8(b).unwrap() / scale).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }

    /// Pixel lookup with edge replication for out-of-range indices.
    pub fn clamped(&self, r: isize, c: isize) -> T {
        let r = r.clamp(0, self.rows as isize - 1) as usize;
        let c = c.clamp(0, self.cols as isize - 1) as usize;
        self.get(r, c)
    }

    /// Rotates 90 degrees counter-clockwise: pixel `(r, c)` moves to `(cols - 1 - c, r)`.
    pub fn rotate_ccw(&self) -> Self {
        let (rows, cols) = (self.cols, self.rows);
        let data = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| self.get(c, self.cols - 1 - r))
            .collect();
        Self { rows, cols, data }
    }

    /// Quantizes to 8 bits with round-half-up.
    pub fn to_u8(&self) -> Vec<u8> {
        self.data.iter().map(|&v| quantize(v.to_f64_lossy())).collect()
    }

    /// Reads an 8-bit grayscale PGM (ASCII or binary) or PNG. Color inputs are
    /// converted to luma.
    pub fn load(path: &Path) -> Result<Self> {
        let img = image::open(path).map_err(|source| Error::Image { path: path.into(), source })?;
        let gray = img.to_luma8();
        Self::from_u8(gray.height() as usize, gray.width() as usize, gray.as_raw())
    }

    /// Writes an 8-bit grayscale image; the format follows the extension
    /// (`.pgm` writes binary PGM, anything else PNG).
    pub fn save(&self, path: &Path) -> Result<()> {
        save_u8(path, self.rows, self.cols, self.to_u8())
    }
}

/// `round(v * 255)` with halves rounded up, clamped to `[0, 255]`.
pub fn quantize(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0 + 0.5).floor() as u8
}

fn is_pgm(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref(),
        Some("pgm") | Some("pnm")
    )
}

/// Encodes to binary PGM (`P5`) for `.pgm`/`.pnm` paths and PNG otherwise.
fn save_gray(path: &Path, rows: usize, cols: usize, bytes: &[u8], color: ExtendedColorType) -> Result<()> {
    let image_err = |source| Error::Image { path: path.into(), source };
    if is_pgm(path) {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        PnmEncoder::new(&mut out)
            .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary))
            .write_image(bytes, cols as u32, rows as u32, color)
            .map_err(image_err)?;
        out.flush().map_err(|e| Error::io(path, e))
    } else {
        image::save_buffer_with_format(path, bytes, cols as u32, rows as u32, color, ImageFormat::Png)
            .map_err(image_err)
    }
}

pub(crate) fn save_u8(path: &Path, rows: usize, cols: usize, bytes: Vec<u8>) -> Result<()> {
    if bytes.len() != rows * cols {
        return Err(Error::input("pixel buffer does not match image size"));
    }
    save_gray(path, rows, cols, &bytes, ExtendedColorType::L8)
}

pub(crate) fn save_u16(path: &Path, rows: usize, cols: usize, values: Vec<u16>) -> Result<()> {
    if values.len() != rows * cols {
        return Err(Error::input("label buffer does not match image size"));
    }
    if is_pgm(path) {
        // The PNM encoder only writes 8-bit graymaps; a 16-bit P5 file is a
        // short header followed by big-endian samples.
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        write!(out, "P5\n{cols} {rows}\n65535\n").map_err(|e| Error::io(path, e))?;
        for v in &values {
            out.write_all(&v.to_be_bytes()).map_err(|e| Error::io(path, e))?;
        }
        return out.flush().map_err(|e| Error::io(path, e));
    }
    // The PNG encoder takes native-endian 16-bit samples as bytes.
    let bytes: Vec<u8> = values.iter().flat_map(|v| v.to_ne_bytes()).collect();
    save_gray(path, rows, cols, &bytes, ExtendedColorType::L16)
}

/// Reads a grayscale image at its native bit depth (8 or 16 bits) as raw values.
pub fn load_raw_u16(path: &Path) -> Result<(usize, usize, Vec<u16>)> {
    let img = image::open(path).map_err(|source| Error::Image { path: path.into(), source })?;
    let gray = img.to_luma16();
    let depth8 = matches!(img.color(), image::ColorType::L8 | image::ColorType::Rgb8 | image::ColorType::Rgba8 | image::ColorType::La8);
    let values = gray
        .as_raw()
        .iter()
        .map(|&v| if depth8 { v / 257 } else { v })
        .collect();
    Ok((gray.height() as usize, gray.width() as usize, values))
}
