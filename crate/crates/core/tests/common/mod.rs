#![allow(dead_code)]

pub mod oracle;
pub mod spot_checks;
pub mod superpixel_checks;

use ndarray::Array2;
use pflicm::FeatureMatrix;

pub fn rows_of(a: &Array2<f64>) -> Vec<Vec<f64>> {
    a.rows().into_iter().map(|r| r.to_vec()).collect()
}

pub fn points_of(data: &FeatureMatrix<f64>) -> Vec<Vec<f64>> {
    rows_of(data.points())
}

/// Largest absolute difference between a matrix and nested rows.
pub fn max_abs_diff(a: &Array2<f64>, b: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, row) in b.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            worst = worst.max((a[[i, j]] - v).abs());
        }
    }
    worst
}
