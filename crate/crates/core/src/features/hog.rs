use super::DescriptorMap;
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::scalar::Scalar;

/// HOG geometry. Cell and block sizes are in pixels and cells respectively;
/// the block overlap is counted in cells.
#[derive(Debug, Clone, PartialEq)]
pub struct HogParams {
    pub cell: usize,
    pub block: usize,
    pub block_overlap: usize,
    pub bins: usize,
    /// Side of the square window around each pixel (odd).
    pub window: usize,
}

impl Default for HogParams {
    fn default() -> Self {
        Self { cell: 2, block: 2, block_overlap: 1, bins: 9, window: 5 }
    }
}

impl HogParams {
    fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::input(m));
        if self.cell == 0 || self.block == 0 || self.bins == 0 {
            return fail("HOG cell, block and bin counts must be positive".into());
        }
        if self.window.is_multiple_of(2) {
            return fail(format!("HOG window must be odd, got {}", self.window));
        }
        if self.block_overlap >= self.block {
            return fail(format!(
                "HOG block overlap {} must be smaller than the block size {}",
                self.block_overlap, self.block
            ));
        }
        if self.cells_per_side() < self.block {
            return fail(format!(
                "HOG window {} holds fewer than {} cells of {} pixels per side",
                self.window, self.block, self.cell
            ));
        }
        Ok(())
    }

    fn cells_per_side(&self) -> usize {
        self.window / self.cell
    }

    fn blocks_per_side(&self) -> usize {
        (self.cells_per_side() - self.block) / (self.block - self.block_overlap) + 1
    }

    /// Length of the per-pixel descriptor.
    pub fn descriptor_len(&self) -> usize {
        self.blocks_per_side().pow(2) * self.block.pow(2) * self.bins
    }
}

/// Unsigned gradient orientation in degrees `[0, 180)` and magnitude, from
/// central differences with edge replication. Orientation is measured
/// counter-clockwise from the +column axis with rows pointing down.
fn gradient<T: Scalar>(img: &GrayImage<T>, r: usize, c: usize) -> (T, T) {
    let (r, c) = (r as isize, c as isize);
    let gx = img.clamped(r, c + 1) - img.clamped(r, c - 1);
    let gy = img.clamped(r - 1, c) - img.clamped(r + 1, c);
    let mag = gx.hypot(gy);
    let mut angle = gy.atan2(gx).to_degrees();
    let half_turn = T::lit(180.0);
    if angle < T::zero() {
        angle = angle + half_turn;
    }
    if angle >= half_turn {
        angle = angle - half_turn;
    }
    (angle, mag)
}

/// Per-pixel, magnitude-weighted orientation histograms before any cell
/// pooling: each pixel's vote is split linearly between the two bins whose
/// centers (`k * 180 / bins` degrees) bracket its orientation.
pub fn orientation_histograms<T: Scalar>(img: &GrayImage<T>, bins: usize) -> DescriptorMap<T> {
    let width = T::lit(180.0) / T::from_usize_lossy(bins);
    let mut out = DescriptorMap::zeros(img.rows(), img.cols(), bins);
    for r in 0..img.rows() {
        for c in 0..img.cols() {
            let (angle, mag) = gradient(img, r, c);
            if mag == T::zero() {
                continue;
            }
            let pos = angle / width;
            let lo_f = pos.floor();
            let frac = pos - lo_f;
            let lo = lo_f.to_usize().unwrap_or(0) % bins;
            let hist = out.at_mut(r, c);
            hist[lo] = hist[lo] + mag * (T::one() - frac);
            let hi = (lo + 1) % bins;
            hist[hi] = hist[hi] + mag * frac;
        }
    }
    out
}

/// Per-pixel HOG over the window centered on the pixel.
///
/// The window is tiled by `cell x cell` pixel cells from its top-left corner
/// (a remainder row/column is ignored); blocks of `block x block` cells step
/// by `block - block_overlap` cells, each block is L2-normalized with
/// `v / sqrt(|v|^2 + 1e-12)`, and the blocks are concatenated.
pub fn hog_features<T: Scalar>(img: &GrayImage<T>, params: &HogParams) -> Result<DescriptorMap<T>> {
    params.validate()?;
    if params.window > img.rows() || params.window > img.cols() {
        return Err(Error::input(format!(
            "HOG window {} exceeds the {}x{} image",
            params.window,
            img.rows(),
            img.cols()
        )));
    }
    let bins = params.bins;
    let pixel_hist = orientation_histograms(img, bins);
    let (rows, cols) = (img.rows(), img.cols());
    let half = (params.window / 2) as isize;
    let n_cells = params.cells_per_side();
    let n_blocks = params.blocks_per_side();
    let stride = params.block - params.block_overlap;
    let eps_sq = T::lit(1e-12);
    let clamp = |v: isize, hi: usize| v.clamp(0, hi as isize - 1) as usize;

    let mut out = DescriptorMap::zeros(rows, cols, params.descriptor_len());
    let mut cells = vec![T::zero(); n_cells * n_cells * bins];
    for r in 0..rows {
        for c in 0..cols {
            cells.iter_mut().for_each(|v| *v = T::zero());
            for ci in 0..n_cells {
                for cj in 0..n_cells {
                    let cell = &mut cells[(ci * n_cells + cj) * bins..][..bins];
                    for pr in 0..params.cell {
                        for pc in 0..params.cell {
                            let sr = clamp(r as isize - half + (ci * params.cell + pr) as isize, rows);
                            let sc = clamp(c as isize - half + (cj * params.cell + pc) as isize, cols);
                            for (acc, &v) in cell.iter_mut().zip(pixel_hist.at(sr, sc)) {
                                *acc = *acc + v;
                            }
                        }
                    }
                }
            }
            let desc = out.at_mut(r, c);
            let mut offset = 0;
            for bi in 0..n_blocks {
                for bj in 0..n_blocks {
                    let start = offset;
                    for ci in bi * stride..bi * stride + params.block {
                        for cj in bj * stride..bj * stride + params.block {
                            let cell = &cells[(ci * n_cells + cj) * bins..][..bins];
                            desc[offset..offset + bins].copy_from_slice(cell);
                            offset += bins;
                        }
                    }
                    let block = &mut desc[start..offset];
                    let norm = (block.iter().map(|&v| v * v).sum::<T>() + eps_sq).sqrt();
                    block.iter_mut().for_each(|v| *v = *v / norm);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_geometry_is_36_long() {
        assert_eq!(HogParams::default().descriptor_len(), 36);
    }

    #[test]
    fn constant_image_gives_zero_descriptor() {
        let img = GrayImage::constant(8, 8, 0.7f64).unwrap();
        let h = hog_features(&img, &HogParams::default()).unwrap();
        assert!(h.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn horizontal_ramp_votes_only_zero_degree_bin() {
        let img = GrayImage::from_fn(10, 10, |_, c| c as f64 / 20.0).unwrap();
        let raw = orientation_histograms(&img, 9);
        for r in 0..10 {
            for c in 1..9 {
                let v = raw.at(r, c);
                assert!((v[0] - 0.1).abs() < 1e-12);
                assert!(v[1..].iter().all(|&x| x == 0.0));
            }
        }
    }

    #[test]
    fn blocks_are_unit_norm_on_textured_input() {
        let img = GrayImage::from_fn(12, 12, |r, c| ((r * 5 + c * 3) % 7) as f64 / 7.0).unwrap();
        let h = hog_features(&img, &HogParams::default()).unwrap();
        let v = h.at(6, 6);
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-6);
    }

    #[test]
    fn larger_geometry_has_several_blocks() {
        let p = HogParams { cell: 2, block: 2, block_overlap: 1, bins: 9, window: 7 };
        assert_eq!(p.descriptor_len(), 4 * 4 * 9);
    }

    #[test]
    fn rejects_small_image_and_bad_geometry() {
        let img = GrayImage::constant(4, 9, 0.0f64).unwrap();
        assert!(hog_features(&img, &HogParams::default()).is_err());
        let big = GrayImage::constant(9, 9, 0.0f64).unwrap();
        let bad = HogParams { block_overlap: 2, ..HogParams::default() };
        assert!(hog_features(&big, &bad).is_err());
    }
}
