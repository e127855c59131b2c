use super::{replicated_box_sum, DescriptorMap};
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::scalar::Scalar;

pub const LBP_BINS: usize = 256;

// Clockwise from the top-left neighbor; the first neighbor is the most
// significant bit.
const NEIGHBORS: [(isize, isize); 8] = [(-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1)];

/// 8-neighbor binary pattern at `(r, c)`; a bit is set when the neighbor is
/// greater than or equal to the center. Borders use edge replication.
pub fn lbp_code<T: Scalar>(img: &GrayImage<T>, r: usize, c: usize) -> u8 {
    let center = img.get(r, c);
    NEIGHBORS.iter().fold(0u8, |code, &(dr, dc)| {
        let bit = img.clamped(r as isize + dr, c as isize + dc) >= center;
        (code << 1) | u8::from(bit)
    })
}

pub fn lbp_codes<T: Scalar>(img: &GrayImage<T>) -> Vec<u8> {
    (0..img.rows())
        .flat_map(|r| (0..img.cols()).map(move |c| (r, c)))
        .map(|(r, c)| lbp_code(img, r, c))
        .collect()
}

/// Per-pixel normalized 256-bin histogram of LBP codes over a `cell x cell`
/// neighborhood.
pub fn lbp_features<T: Scalar>(img: &GrayImage<T>, cell: usize) -> Result<DescriptorMap<T>> {
    if img.rows() < 3 || img.cols() < 3 {
        return Err(Error::input(format!(
            "LBP needs at least a 3x3 image, got {}x{}",
            img.rows(),
            img.cols()
        )));
    }
    if cell == 0 || cell.is_multiple_of(2) {
        return Err(Error::input(format!("LBP cell size must be odd, got {cell}")));
    }
    let codes = lbp_codes(img);
    let mut onehot = DescriptorMap::zeros(img.rows(), img.cols(), LBP_BINS);
    for (p, &code) in codes.iter().enumerate() {
        onehot.at_mut(p / img.cols(), p % img.cols())[code as usize] = T::one();
    }
    let mut hist = replicated_box_sum(&onehot, cell);
    let area = T::from_usize_lossy(cell * cell);
    for r in 0..img.rows() {
        for c in 0..img.cols() {
            for v in hist.at_mut(r, c) {
                *v = *v / area;
            }
        }
    }
    Ok(hist)
}
