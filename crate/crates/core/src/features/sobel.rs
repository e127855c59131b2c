use super::{replicated_box_sum, DescriptorMap};
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::scalar::Scalar;

/// Histogram bins: four edge directions plus "no edge".
pub const EDGE_BINS: usize = 5;

/// Dominant edge direction at a pixel. The discriminant is the histogram bin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLabel {
    Vertical = 0,
    Diagonal = 1,
    Horizontal = 2,
    AntiDiagonal = 3,
    None = 4,
}

const DIRECTIONS: [EdgeLabel; 4] =
    [EdgeLabel::Vertical, EdgeLabel::Diagonal, EdgeLabel::Horizontal, EdgeLabel::AntiDiagonal];

// Row-major 3x3 kernels, indexed like DIRECTIONS.
const KERNELS: [[[i8; 3]; 3]; 4] = [
    [[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]],
    [[0, 1, 2], [-1, 0, 1], [-2, -1, 0]],
    [[-1, -2, -1], [0, 0, 0], [1, 2, 1]],
    [[2, 1, 0], [1, 0, -1], [0, -1, -2]],
];

#[derive(Debug, Clone, PartialEq)]
pub struct SobelParams {
    /// Side of the square histogram window (odd, >= 3).
    pub window: usize,
    /// Minimum absolute response, on the `[0, 1]` intensity scale, for a
    /// pixel to count as an edge.
    pub threshold: f64,
}

impl Default for SobelParams {
    fn default() -> Self {
        Self { window: 17, threshold: 0.5 }
    }
}

/// Labels every pixel with the direction of its strongest absolute Sobel
/// response, or [`EdgeLabel::None`] when that response is below `threshold`.
/// Ties go to the earlier direction in vertical, diagonal, horizontal,
/// anti-diagonal order.
pub fn edge_labels<T: Scalar>(img: &GrayImage<T>, threshold: f64) -> Vec<EdgeLabel> {
    let threshold = T::lit(threshold);
    let mut labels = Vec::with_capacity(img.len());
    for r in 0..img.rows() as isize {
        for c in 0..img.cols() as isize {
            let mut best = (EdgeLabel::None, T::neg_infinity());
            for (dir, kernel) in DIRECTIONS.iter().zip(&KERNELS) {
                let mut response = T::zero();
                for (dr, krow) in kernel.iter().enumerate() {
                    for (dc, &k) in krow.iter().enumerate() {
                        if k != 0 {
                            let v = img.clamped(r + dr as isize - 1, c + dc as isize - 1);
                            response = response + T::lit(f64::from(k)) * v;
                        }
                    }
                }
                let response = response.abs();
                if response > best.1 {
                    best = (*dir, response);
                }
            }
            labels.push(if best.1 >= threshold { best.0 } else { EdgeLabel::None });
        }
    }
    labels
}

/// Per-pixel normalized histogram of edge labels over the surrounding window.
pub fn sobel_edge_histogram<T: Scalar>(img: &GrayImage<T>, params: &SobelParams) -> Result<DescriptorMap<T>> {
    let w = params.window;
    if w < 3 || w.is_multiple_of(2) {
        return Err(Error::input(format!("edge histogram window must be odd and >= 3, got {w}")));
    }
    if w > img.rows() || w > img.cols() {
        return Err(Error::input(format!(
            "edge histogram window {w} exceeds the {}x{} image",
            img.rows(),
            img.cols()
        )));
    }
    let labels = edge_labels(img, params.threshold);
    let mut onehot = DescriptorMap::zeros(img.rows(), img.cols(), EDGE_BINS);
    for (p, &label) in labels.iter().enumerate() {
        onehot.at_mut(p / img.cols(), p % img.cols())[label as usize] = T::one();
    }
    let mut hist = replicated_box_sum(&onehot, w);
    let area = T::from_usize_lossy(w * w);
    for r in 0..img.rows() {
        for c in 0..img.cols() {
            for v in hist.at_mut(r, c) {
                *v = *v / area;
            }
        }
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(rows: usize, cols: usize, at: usize) -> GrayImage<f64> {
        GrayImage::from_fn(rows, cols, |_, c| if c < at { 0.0 } else { 1.0 }).unwrap()
    }

    #[test]
    fn constant_image_has_no_edges() {
        let img = GrayImage::constant(20, 20, 0.4).unwrap();
        let h = sobel_edge_histogram(&img, &SobelParams::default()).unwrap();
        for r in 0..20 {
            for c in 0..20 {
                assert_eq!(h.at(r, c), &[0.0, 0.0, 0.0, 0.0, 1.0]);
            }
        }
    }

    #[test]
    fn unit_step_labels_straddling_pixels_vertical() {
        // vertical kernel gives 1 + 2 + 1 = 4 next to the step, diagonals give 3
        let img = step(8, 10, 5);
        let labels = edge_labels(&img, 0.5);
        for r in 0..8 {
            assert_eq!(labels[r * 10 + 4], EdgeLabel::Vertical);
            assert_eq!(labels[r * 10 + 5], EdgeLabel::Vertical);
            assert_eq!(labels[r * 10 + 2], EdgeLabel::None);
            assert_eq!(labels[r * 10 + 8], EdgeLabel::None);
        }
    }

    #[test]
    fn vertical_bin_dominates_near_step() {
        let img = step(30, 30, 15);
        let h = sobel_edge_histogram(&img, &SobelParams { window: 5, threshold: 0.5 }).unwrap();
        let v = h.at(10, 15);
        assert!((v[0] - 10.0 / 25.0).abs() < 1e-12);
        assert!(v[1..4].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn other_directions_are_detected() {
        let horizontal = GrayImage::from_fn(9, 9, |r, _| if r < 4 { 0.0 } else { 1.0 }).unwrap();
        assert_eq!(edge_labels(&horizontal, 0.5)[3 * 9 + 4], EdgeLabel::Horizontal);
        let diag = GrayImage::from_fn(9, 9, |r, c| if r + c < 8 { 0.0 } else { 1.0 }).unwrap();
        let anti = GrayImage::from_fn(9, 9, |r, c| if c < r { 0.0 } else { 1.0 }).unwrap();
        let d = edge_labels(&diag, 0.5)[4 * 9 + 4];
        let a = edge_labels(&anti, 0.5)[4 * 9 + 4];
        assert!(matches!(d, EdgeLabel::Diagonal | EdgeLabel::AntiDiagonal));
        assert!(matches!(a, EdgeLabel::Diagonal | EdgeLabel::AntiDiagonal));
        assert_ne!(d, a);
    }

    #[test]
    fn window_checks() {
        let img = GrayImage::constant(10, 20, 0.0f64).unwrap();
        assert!(sobel_edge_histogram(&img, &SobelParams::default()).is_err());
        assert!(sobel_edge_histogram(&img, &SobelParams { window: 4, threshold: 0.5 }).is_err());
    }
}
