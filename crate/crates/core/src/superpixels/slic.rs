use super::{enforce_connectivity, SuperpixelMap};
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct SlicParams {
    /// Requested number of superpixels; the achieved count differs after
    /// connectivity enforcement.
    pub k_target: usize,
    /// Weight of spatial against intensity distance, intensities on a 0-255 scale.
    pub compactness: f64,
    pub iters: usize,
}

impl SlicParams {
    pub fn new(k_target: usize) -> Self {
        Self { k_target, compactness: 10.0, iters: 10 }
    }
}

#[derive(Debug, Clone, Copy)]
struct Center {
    intensity: f64,
    row: f64,
    col: f64,
}

fn local_gradient<T: Scalar>(img: &GrayImage<T>, r: isize, c: isize) -> f64 {
    let dx = (img.clamped(r, c + 1) - img.clamped(r, c - 1)).to_f64_lossy();
    let dy = (img.clamped(r + 1, c) - img.clamped(r - 1, c)).to_f64_lossy();
    dx * dx + dy * dy
}

/// Grid-seeded centers, each moved to the lowest-gradient pixel of its 3x3
/// neighborhood.
fn seed_centers<T: Scalar>(img: &GrayImage<T>, step: f64) -> Vec<Center> {
    let (rows, cols) = (img.rows(), img.cols());
    let grid_rows = ((rows as f64 / step).round() as usize).max(1);
    let grid_cols = ((cols as f64 / step).round() as usize).max(1);
    let mut centers = Vec::with_capacity(grid_rows * grid_cols);
    for i in 0..grid_rows {
        for j in 0..grid_cols {
            let r = ((i as f64 + 0.5) * rows as f64 / grid_rows as f64) as isize;
            let c = ((j as f64 + 0.5) * cols as f64 / grid_cols as f64) as isize;
            let mut best = (r, c, local_gradient(img, r, c));
            for dr in -1..=1 {
                for dc in -1..=1 {
                    let (nr, nc) = (r + dr, c + dc);
                    if nr < 0 || nc < 0 || nr >= rows as isize || nc >= cols as isize {
                        continue;
                    }
                    let g = local_gradient(img, nr, nc);
                    if g < best.2 {
                        best = (nr, nc, g);
                    }
                }
            }
            let (r, c) = (best.0 as usize, best.1 as usize);
            centers.push(Center {
                intensity: img.get(r, c).to_f64_lossy() * 255.0,
                row: r as f64,
                col: c as f64,
            });
        }
    }
    centers
}

/// SLIC superpixels on a grayscale image.
///
/// Clusters pixels in (intensity x 255, row, col) space with distance
/// `sqrt(d_I^2 + (compactness / S)^2 d_xy^2)`, searching a `2S x 2S` window
/// around each center, where `S = sqrt(rows * cols / k_target)`. The result
/// is made 4-connected and densely relabeled.
pub fn slic<T: Scalar>(img: &GrayImage<T>, params: &SlicParams) -> Result<SuperpixelMap> {
    let (rows, cols) = (img.rows(), img.cols());
    let n = rows * cols;
    if params.k_target == 0 || params.k_target > n {
        return Err(Error::input(format!(
            "requested {} superpixels for an image of {n} pixels",
            params.k_target
        )));
    }
    if !(params.compactness > 0.0 && params.compactness.is_finite()) {
        return Err(Error::input(format!("compactness must be positive, got {}", params.compactness)));
    }
    let step = (n as f64 / params.k_target as f64).sqrt();
    let spatial_weight = (params.compactness / step).powi(2);
    let intensity: Vec<f64> = img.as_slice().iter().map(|v| v.to_f64_lossy() * 255.0).collect();

    let mut centers = seed_centers(img, step);
    let mut labels = vec![u32::MAX; n];
    let mut best = vec![f64::INFINITY; n];
    let reach = step.ceil() as isize;
    for _ in 0..params.iters.max(1) {
        best.iter_mut().for_each(|d| *d = f64::INFINITY);
        for (k, center) in centers.iter().enumerate() {
            let (cr, cc) = (center.row.round() as isize, center.col.round() as isize);
            let r0 = (cr - reach).max(0) as usize;
            let r1 = ((cr + reach) as usize).min(rows - 1);
            let c0 = (cc - reach).max(0) as usize;
            let c1 = ((cc + reach) as usize).min(cols - 1);
            for r in r0..=r1 {
                for c in c0..=c1 {
                    let p = r * cols + c;
                    let di = intensity[p] - center.intensity;
                    let (dr, dc) = (r as f64 - center.row, c as f64 - center.col);
                    let d = di * di + spatial_weight * (dr * dr + dc * dc);
                    if d < best[p] {
                        best[p] = d;
                        labels[p] = k as u32;
                    }
                }
            }
        }
        // pixels outside every search window go to the nearest center
        for p in 0..n {
            if best[p].is_finite() {
                continue;
            }
            let (r, c) = ((p / cols) as f64, (p % cols) as f64);
            let (k, d) = centers
                .iter()
                .map(|ctr| {
                    let di = intensity[p] - ctr.intensity;
                    di * di + spatial_weight * ((r - ctr.row).powi(2) + (c - ctr.col).powi(2))
                })
                .enumerate()
                .fold((0, f64::INFINITY), |acc, (k, d)| if d < acc.1 { (k, d) } else { acc });
            best[p] = d;
            labels[p] = k as u32;
        }

        let mut sums = vec![(0.0, 0.0, 0.0, 0usize); centers.len()];
        for (p, &l) in labels.iter().enumerate() {
            let s = &mut sums[l as usize];
            s.0 += intensity[p];
            s.1 += (p / cols) as f64;
            s.2 += (p % cols) as f64;
            s.3 += 1;
        }
        for (center, s) in centers.iter_mut().zip(&sums) {
            if s.3 > 0 {
                let count = s.3 as f64;
                *center = Center { intensity: s.0 / count, row: s.1 / count, col: s.2 / count };
            }
        }
    }

    let labels = enforce_connectivity(rows, cols, &labels);
    SuperpixelMap::from_labels(rows, cols, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpixels::is_four_connected;

    #[test]
    fn single_pixel_image() {
        let img = GrayImage::constant(1, 1, 0.5f64).unwrap();
        let sp = slic(&img, &SlicParams::new(1)).unwrap();
        assert_eq!(sp.n_superpixels(), 1);
        assert_eq!(sp.centroids()[0], (0.0, 0.0));
    }

    #[test]
    fn constant_image_gives_grid() {
        let img = GrayImage::constant(100, 100, 0.4f64).unwrap();
        let sp = slic(&img, &SlicParams::new(25)).unwrap();
        assert!((20..=30).contains(&sp.n_superpixels()), "{}", sp.n_superpixels());
        for &(r, c) in sp.centroids() {
            let near = |v: f64| ((v - 10.0) / 20.0).round() * 20.0 + 10.0;
            assert!((r - near(r)).abs() <= 2.0 && (c - near(c)).abs() <= 2.0, "centroid ({r}, {c})");
        }
        let mean = 10_000.0 / sp.n_superpixels() as f64;
        assert!(sp.sizes().iter().all(|&s| (s as f64) <= 4.0 * mean));
    }

    #[test]
    fn output_is_connected_partition() {
        let img = GrayImage::from_fn(40, 50, |r, c| (((r * 7) ^ (c * 3)) % 17) as f64 / 16.0).unwrap();
        let sp = slic(&img, &SlicParams::new(30)).unwrap();
        assert!(is_four_connected(40, 50, sp.labels()));
        assert_eq!(sp.sizes().iter().sum::<usize>(), 2000);
    }

    #[test]
    fn k_target_range_is_checked() {
        let img = GrayImage::constant(4, 4, 0.0f64).unwrap();
        assert!(slic(&img, &SlicParams::new(0)).is_err());
        assert!(slic(&img, &SlicParams::new(17)).is_err());
        assert!(slic(&img, &SlicParams::new(16)).is_ok());
    }

    #[test]
    fn step_edge_is_respected() {
        let img = GrayImage::from_fn(40, 40, |_, c| if c < 20 { 0.1 } else { 0.9 }).unwrap();
        let sp = slic(&img, &SlicParams::new(16)).unwrap();
        // no region straddles the edge
        let mut side = vec![None; sp.n_superpixels()];
        for r in 0..40 {
            for c in 0..40 {
                let s = &mut side[sp.label(r, c)];
                let left = c < 20;
                assert!(s.is_none() || *s == Some(left));
                *s = Some(left);
            }
        }
    }
}
