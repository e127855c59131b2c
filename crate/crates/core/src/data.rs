//! The clustering input: one feature vector and one spatial position per point.

use ndarray::{Array2, ArrayView1, Axis};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Spatial position of a point in pixel units, `(row, col)`.
pub type Coord = (f64, f64);

/// `N` feature vectors of length `d` plus the image position each one came from.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix<T> {
    points: Array2<T>,
    coords: Vec<Coord>,
}

impl<T: Scalar> FeatureMatrix<T> {
    /// Builds a matrix from an `N x d` array and `N` coordinates.
    pub fn new(points: Array2<T>, coords: Vec<Coord>) -> Result<Self> {
        let (n, d) = points.dim();
        if n == 0 {
            return Err(Error::input("feature matrix has no points"));
        }
        if d == 0 {
            return Err(Error::input("feature matrix has zero feature dimensions"));
        }
        if coords.len() != n {
            return Err(Error::input(format!(
                "{} coordinates supplied for {} points",
                coords.len(),
                n
            )));
        }
        if let Some(i) = coords.iter().position(|(r, c)| !r.is_finite() || !c.is_finite()) {
            return Err(Error::input(format!("coordinate of point {i} is not finite")));
        }
        if let Some(((i, j), _)) = points.indexed_iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::input(format!("feature {j} of point {i} is not finite")));
        }
        Ok(Self { points, coords })
    }

    /// Builds a matrix from row vectors. All rows must share one length.
    pub fn from_rows(rows: &[Vec<T>], coords: Vec<Coord>) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != d) {
            return Err(Error::input(format!(
                "point {i} has {} features, expected {d}",
                rows[i].len()
            )));
        }
        let flat: Vec<T> = rows.iter().flatten().copied().collect();
        let points = Array2::from_shape_vec((rows.len(), d), flat)
            .map_err(|e| Error::input(e.to_string()))?;
        Self::new(points, coords)
    }

    /// Points laid out along a single row, `coords[n] = (0, n)`.
    pub fn with_linear_coords(points: Array2<T>) -> Result<Self> {
        let coords = (0..points.nrows()).map(|n| (0.0, n as f64)).collect();
        Self::new(points, coords)
    }

    pub fn n_points(&self) -> usize {
        self.points.nrows()
    }

    pub fn dim(&self) -> usize {
        self.points.ncols()
    }

    pub fn points(&self) -> &Array2<T> {
        &self.points
    }

    pub fn point(&self, n: usize) -> ArrayView1<'_, T> {
        self.points.row(n)
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    /// Subset of the points, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let points = self.points.select(Axis(0), indices);
        let coords = indices.iter().map(|&i| self.coords[i]).collect();
        Self::new(points, coords)
    }

    /// Per-dimension minimum and maximum over all points.
    pub fn bounds(&self) -> Vec<(T, T)> {
        self.points
            .axis_iter(Axis(1))
            .map(|col| {
                col.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| {
                    (lo.min(v), hi.max(v))
                })
            })
            .collect()
    }

    /// Per-dimension z-score using the population standard deviation.
    ///
    /// Dimensions whose standard deviation is below `1e-12` become all zeros.
    pub fn normalized(&self) -> Self {
        let n = T::from_usize_lossy(self.n_points());
        let guard = T::lit(1e-12);
        let mut points = self.points.clone();
        for mut col in points.axis_iter_mut(Axis(1)) {
            let mean = col.iter().copied().sum::<T>() / n;
            let var = col.iter().map(|&v| (v - mean) * (v - mean)).sum::<T>() / n;
            let sd = var.sqrt();
            if sd < guard {
                col.fill(T::zero());
            } else {
                col.mapv_inplace(|v| (v - mean) / sd);
            }
        }
        Self { points, coords: self.coords.clone() }
    }
}

/// Free-function form of [`FeatureMatrix::normalized`].
pub fn normalize_features<T: Scalar>(matrix: &FeatureMatrix<T>) -> FeatureMatrix<T> {
    matrix.normalized()
}
