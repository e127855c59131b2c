//! Per-pixel texture descriptors: a Sobel edge-direction histogram, HOG and LBP.

mod hog;
mod lbp;
mod sobel;

pub use hog::{hog_features, orientation_histograms, HogParams};
pub use lbp::{lbp_code, lbp_codes, lbp_features, LBP_BINS};
pub use sobel::{edge_labels, sobel_edge_histogram, EdgeLabel, SobelParams, EDGE_BINS};

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::scalar::Scalar;

/// One vector of length `dim` per pixel, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorMap<T> {
    rows: usize,
    cols: usize,
    dim: usize,
    values: Vec<T>,
}

impl<T: Scalar> DescriptorMap<T> {
    pub fn new(rows: usize, cols: usize, dim: usize, values: Vec<T>) -> Result<Self> {
        if values.len() != rows * cols * dim {
            return Err(Error::input(format!(
                "{} values cannot fill a {rows}x{cols} map of {dim}-vectors",
                values.len()
            )));
        }
        Ok(Self { rows, cols, dim, values })
    }

    pub(crate) fn zeros(rows: usize, cols: usize, dim: usize) -> Self {
        Self { rows, cols, dim, values: vec![T::zero(); rows * cols * dim] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, r: usize, c: usize) -> &[T] {
        let start = (r * self.cols + c) * self.dim;
        &self.values[start..start + self.dim]
    }

    pub(crate) fn at_mut(&mut self, r: usize, c: usize) -> &mut [T] {
        let start = (r * self.cols + c) * self.dim;
        &mut self.values[start..start + self.dim]
    }

    /// Vector of the pixel with row-major index `p`.
    pub fn pixel(&self, p: usize) -> &[T] {
        &self.values[p * self.dim..(p + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }
}

/// Concatenated per-pixel features with the layout of each block.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelFeatureMap<T> {
    map: DescriptorMap<T>,
    block_dims: (usize, usize, usize),
}

impl<T: Scalar> PixelFeatureMap<T> {
    pub fn rows(&self) -> usize {
        self.map.rows
    }

    pub fn cols(&self) -> usize {
        self.map.cols
    }

    pub fn dim(&self) -> usize {
        self.map.dim
    }

    /// `(sobel_dim, hog_dim, lbp_dim)`.
    pub fn block_dims(&self) -> (usize, usize, usize) {
        self.block_dims
    }

    pub fn at(&self, r: usize, c: usize) -> &[T] {
        self.map.at(r, c)
    }

    pub fn pixel(&self, p: usize) -> &[T] {
        self.map.pixel(p)
    }

    pub fn as_map(&self) -> &DescriptorMap<T> {
        &self.map
    }
}

/// Concatenates the three descriptor maps per pixel, in the order sobel, hog, lbp.
pub fn assemble_features<T: Scalar>(
    sobel: &DescriptorMap<T>,
    hog: &DescriptorMap<T>,
    lbp: &DescriptorMap<T>,
) -> Result<PixelFeatureMap<T>> {
    let shape = (sobel.rows, sobel.cols);
    if (hog.rows, hog.cols) != shape || (lbp.rows, lbp.cols) != shape {
        return Err(Error::input(format!(
            "descriptor maps disagree on size: sobel {}x{}, hog {}x{}, lbp {}x{}",
            sobel.rows, sobel.cols, hog.rows, hog.cols, lbp.rows, lbp.cols
        )));
    }
    let dim = sobel.dim + hog.dim + lbp.dim;
    let mut values = Vec::with_capacity(shape.0 * shape.1 * dim);
    for p in 0..shape.0 * shape.1 {
        values.extend_from_slice(sobel.pixel(p));
        values.extend_from_slice(hog.pixel(p));
        values.extend_from_slice(lbp.pixel(p));
    }
    Ok(PixelFeatureMap {
        map: DescriptorMap { rows: shape.0, cols: shape.1, dim, values },
        block_dims: (sobel.dim, hog.dim, lbp.dim),
    })
}

/// Parameters of all three descriptors.
#[derive(Debug, Clone, PartialEq)]
pub struct TextureParams {
    pub sobel: SobelParams,
    pub hog: HogParams,
    /// Side of the square cell the LBP histogram is taken over (odd).
    pub lbp_cell: usize,
}

impl Default for TextureParams {
    fn default() -> Self {
        Self { sobel: SobelParams::default(), hog: HogParams::default(), lbp_cell: 3 }
    }
}

/// Runs all three descriptors and concatenates them.
pub fn extract_features<T: Scalar>(img: &GrayImage<T>, params: &TextureParams) -> Result<PixelFeatureMap<T>> {
    let sobel = sobel_edge_histogram(img, &params.sobel)?;
    let hog = hog_features(img, &params.hog)?;
    let lbp = lbp_features(img, params.lbp_cell)?;
    assemble_features(&sobel, &hog, &lbp)
}

/// Separable box count with edge replication: `out[r][c][l]` sums `input` over
/// the `window x window` neighborhood of `(r, c)` for every channel `l`.
pub(crate) fn replicated_box_sum<T: Scalar>(input: &DescriptorMap<T>, window: usize) -> DescriptorMap<T> {
    let (rows, cols, dim) = (input.rows, input.cols, input.dim);
    let half = (window / 2) as isize;
    let clamp = |v: isize, hi: usize| v.clamp(0, hi as isize - 1) as usize;

    let mut horizontal = DescriptorMap::zeros(rows, cols, dim);
    for r in 0..rows {
        for c in 0..cols {
            let out = horizontal.at_mut(r, c);
            for dc in -half..=half {
                let src = input.at(r, clamp(c as isize + dc, cols));
                for (o, &v) in out.iter_mut().zip(src) {
                    *o = *o + v;
                }
            }
        }
    }
    let mut total = DescriptorMap::zeros(rows, cols, dim);
    for r in 0..rows {
        for c in 0..cols {
            let out = total.at_mut(r, c);
            for dr in -half..=half {
                let src = horizontal.at(clamp(r as isize + dr, rows), c);
                for (o, &v) in out.iter_mut().zip(src) {
                    *o = *o + v;
                }
            }
        }
    }
    total
}
