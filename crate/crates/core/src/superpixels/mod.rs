//! SLIC oversegmentation and the superpixel <-> pixel transfers around it.

mod connectivity;
mod slic;

pub use connectivity::{enforce_connectivity, is_four_connected};
pub use slic::{slic, SlicParams};

use ndarray::Array2;

use crate::data::{Coord, FeatureMatrix};
use crate::error::{Error, Result};
use crate::features::PixelFeatureMap;
use crate::scalar::Scalar;

/// Dense label image with per-region centroid and size.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpixelMap {
    rows: usize,
    cols: usize,
    labels: Vec<u32>,
    centroids: Vec<Coord>,
    sizes: Vec<usize>,
}

impl SuperpixelMap {
    /// Builds the map from a label image whose labels already cover `0..K`
    /// without gaps.
    pub fn from_labels(rows: usize, cols: usize, labels: Vec<u32>) -> Result<Self> {
        if labels.len() != rows * cols || labels.is_empty() {
            return Err(Error::input(format!(
                "{} labels for a {rows}x{cols} image",
                labels.len()
            )));
        }
        let k = labels.iter().copied().max().unwrap_or(0) as usize + 1;
        let mut sums = vec![(0.0, 0.0); k];
        let mut sizes = vec![0usize; k];
        for (p, &l) in labels.iter().enumerate() {
            let l = l as usize;
            sums[l].0 += (p / cols) as f64;
            sums[l].1 += (p % cols) as f64;
            sizes[l] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::input(format!("superpixel label {empty} has no pixels")));
        }
        let centroids = sums
            .iter()
            .zip(&sizes)
            .map(|(&(r, c), &s)| (r / s as f64, c / s as f64))
            .collect();
        Ok(Self { rows, cols, labels, centroids, sizes })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n_superpixels(&self) -> usize {
        self.sizes.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, r: usize, c: usize) -> usize {
        self.labels[r * self.cols + c] as usize
    }

    pub fn centroids(&self) -> &[Coord] {
        &self.centroids
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Saves the labels as a 16-bit grayscale image.
    pub fn save_labels(&self, path: &std::path::Path) -> Result<()> {
        if self.n_superpixels() > usize::from(u16::MAX) + 1 {
            return Err(Error::input("too many superpixels for a 16-bit label image"));
        }
        let values = self.labels.iter().map(|&l| l as u16).collect();
        crate::image::save_u16(path, self.rows, self.cols, values)
    }
}

/// Mean feature vector of every superpixel, located at the region centroid.
///
/// Means are accumulated incrementally, so a region of identical vectors
/// yields that vector exactly.
pub fn aggregate<T: Scalar>(features: &PixelFeatureMap<T>, sp: &SuperpixelMap) -> Result<FeatureMatrix<T>> {
    if (features.rows(), features.cols()) != (sp.rows, sp.cols) {
        return Err(Error::input(format!(
            "feature map is {}x{} but superpixel map is {}x{}",
            features.rows(),
            features.cols(),
            sp.rows,
            sp.cols
        )));
    }
    let mut means = Array2::<T>::zeros((sp.n_superpixels(), features.dim()));
    let mut seen = vec![0usize; sp.n_superpixels()];
    for (p, &l) in sp.labels.iter().enumerate() {
        let l = l as usize;
        seen[l] += 1;
        let k = T::from_usize_lossy(seen[l]);
        for (mean, &v) in means.row_mut(l).iter_mut().zip(features.pixel(p)) {
            *mean = *mean + (v - *mean) / k;
        }
    }
    FeatureMatrix::new(means, sp.centroids.clone())
}

/// Mean of a per-pixel scalar map over every superpixel, accumulated like
/// [`aggregate`].
pub fn superpixel_means<T: Scalar>(values: &[T], sp: &SuperpixelMap) -> Result<Vec<T>> {
    if values.len() != sp.labels.len() {
        return Err(Error::input(format!(
            "{} pixel values supplied for a {}x{} superpixel map",
            values.len(),
            sp.rows,
            sp.cols
        )));
    }
    let mut means = vec![T::zero(); sp.n_superpixels()];
    let mut seen = vec![0usize; sp.n_superpixels()];
    for (&l, &v) in sp.labels.iter().zip(values) {
        let l = l as usize;
        seen[l] += 1;
        means[l] = means[l] + (v - means[l]) / T::from_usize_lossy(seen[l]);
    }
    Ok(means)
}

/// Paints each pixel with the value of its superpixel.
pub fn project_to_pixels<T: Scalar>(values: &[T], sp: &SuperpixelMap) -> Result<Vec<T>> {
    if values.len() != sp.n_superpixels() {
        return Err(Error::input(format!(
            "{} values supplied for {} superpixels",
            values.len(),
            sp.n_superpixels()
        )));
    }
    Ok(sp.labels.iter().map(|&l| values[l as usize]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{assemble_features, DescriptorMap};

    fn feature_map(rows: usize, cols: usize, f: impl Fn(usize) -> f64) -> PixelFeatureMap<f64> {
        let n = rows * cols;
        let s = DescriptorMap::new(rows, cols, 1, (0..n).map(&f).collect()).unwrap();
        let h = DescriptorMap::new(rows, cols, 1, (0..n).map(|p| f(p) * 2.0).collect()).unwrap();
        let l = DescriptorMap::new(rows, cols, 0, vec![]).unwrap();
        assemble_features(&s, &h, &l).unwrap()
    }

    #[test]
    fn centroids_and_sizes() {
        let sp = SuperpixelMap::from_labels(2, 3, vec![0, 0, 1, 0, 1, 1]).unwrap();
        assert_eq!(sp.sizes(), &[3, 3]);
        assert_eq!(sp.centroids()[0], (1.0 / 3.0, 1.0 / 3.0));
        assert_eq!(sp.centroids()[1], (2.0 / 3.0, 5.0 / 3.0));
    }

    #[test]
    fn gaps_in_labels_are_rejected() {
        assert!(SuperpixelMap::from_labels(1, 3, vec![0, 2, 2]).is_err());
    }

    #[test]
    fn mean_of_identical_features_is_exact() {
        let f = feature_map(2, 2, |_| 0.3);
        let sp = SuperpixelMap::from_labels(2, 2, vec![0, 0, 0, 0]).unwrap();
        let m = aggregate(&f, &sp).unwrap();
        assert_eq!(m.point(0).to_vec(), vec![0.3, 0.6]);
    }

    #[test]
    fn two_pixel_mean() {
        let f = feature_map(1, 2, |p| if p == 0 { 0.0 } else { 2.0 });
        let sp = SuperpixelMap::from_labels(1, 2, vec![0, 0]).unwrap();
        assert_eq!(aggregate(&f, &sp).unwrap().point(0)[0], 1.0);
    }

    #[test]
    fn projection_paints_regions() {
        let sp = SuperpixelMap::from_labels(2, 2, vec![0, 1, 1, 2]).unwrap();
        assert_eq!(project_to_pixels(&[0.0, 1.0, 0.0], &sp).unwrap(), vec![0.0, 1.0, 1.0, 0.0]);
        assert_eq!(project_to_pixels(&[0.4; 3], &sp).unwrap(), vec![0.4; 4]);
        assert!(project_to_pixels(&[0.4; 2], &sp).is_err());
    }

    #[test]
    fn label_image_round_trips_through_pgm() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("labels.pgm");
        let labels: Vec<u32> = (0..300).collect();
        let sp = SuperpixelMap::from_labels(10, 30, labels.clone()).unwrap();
        sp.save_labels(&path).unwrap();
        let (rows, cols, back) = crate::image::load_raw_u16(&path).unwrap();
        assert_eq!((rows, cols), (10, 30));
        assert_eq!(back.iter().map(|&v| u32::from(v)).collect::<Vec<_>>(), labels);
    }
}
