use ndarray::Array2;

use crate::data::Coord;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Spatial neighbor lists with weights `1 / (d_nk + 1)`, `d_nk` in pixels.
///
/// An infinite radius is stored as a dense weight matrix (zero diagonal), which
/// lets the fuzzy factor be evaluated as one matrix product per iteration.
#[derive(Debug, Clone)]
pub enum NeighborhoodGraph<T> {
    /// Compressed neighbor lists: the neighbors of `n` are
    /// `edges[offsets[n]..offsets[n + 1]]`.
    Sparse { offsets: Vec<usize>, edges: Vec<(usize, T)> },
    /// Every other point is a neighbor. `weights[[n, k]]`, zero on the diagonal.
    Complete { weights: Array2<T> },
}

impl<T: Scalar> NeighborhoodGraph<T> {
    pub fn n_points(&self) -> usize {
        match self {
            Self::Sparse { offsets, .. } => offsets.len() - 1,
            Self::Complete { weights } => weights.nrows(),
        }
    }

    /// `(k, w_nk)` for every neighbor `k` of `n`, in increasing `k`.
    pub fn neighbors(&self, n: usize) -> Vec<(usize, T)> {
        match self {
            Self::Sparse { offsets, edges } => edges[offsets[n]..offsets[n + 1]].to_vec(),
            Self::Complete { weights } => weights
                .row(n)
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != n)
                .map(|(k, &w)| (k, w))
                .collect(),
        }
    }

    /// True when no point has a neighbor; the fuzzy factor is then identically zero.
    pub fn is_empty(&self) -> bool {
        match self {
            Self::Sparse { edges, .. } => edges.is_empty(),
            Self::Complete { weights } => weights.nrows() < 2,
        }
    }

    pub fn n_edges(&self) -> usize {
        match self {
            Self::Sparse { edges, .. } => edges.len(),
            Self::Complete { weights } => weights.nrows() * weights.nrows().saturating_sub(1),
        }
    }
}

fn spatial_distance(a: Coord, b: Coord) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Connects every pair of distinct points within `radius` pixels of each other.
///
/// `radius = f64::INFINITY` produces the complete graph.
pub fn build_neighborhoods<T: Scalar>(coords: &[Coord], radius: f64) -> Result<NeighborhoodGraph<T>> {
    if coords.is_empty() {
        return Err(Error::input("no coordinates to build neighborhoods from"));
    }
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::input(format!("neighborhood radius must be >= 0, got {radius}")));
    }
    if let Some(i) = coords.iter().position(|(r, c)| !r.is_finite() || !c.is_finite()) {
        return Err(Error::input(format!("coordinate of point {i} is not finite")));
    }
    let n = coords.len();
    if radius.is_infinite() {
        let weights = Array2::from_shape_fn((n, n), |(i, k)| {
            if i == k {
                T::zero()
            } else {
                T::lit(1.0 / (spatial_distance(coords[i], coords[k]) + 1.0))
            }
        });
        return Ok(NeighborhoodGraph::Complete { weights });
    }

    let mut offsets = Vec::with_capacity(n + 1);
    let mut edges = Vec::new();
    offsets.push(0);
    for (i, &ci) in coords.iter().enumerate() {
        for (k, &ck) in coords.iter().enumerate() {
            if k == i {
                continue;
            }
            let d = spatial_distance(ci, ck);
            if d <= radius {
                edges.push((k, T::lit(1.0 / (d + 1.0))));
            }
        }
        offsets.push(edges.len());
    }
    Ok(NeighborhoodGraph::Sparse { offsets, edges })
}
