//! Per-cluster output maps and cross-run cluster alignment.

use std::fmt;
use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::image::{quantize, save_u8};
use crate::scalar::Scalar;
use crate::superpixels::{project_to_pixels, SuperpixelMap};
use crate::PartitionState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Membership,
    Typicality,
    Product,
}

impl MapKind {
    pub const ALL: [MapKind; 3] = [MapKind::Membership, MapKind::Typicality, MapKind::Product];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Membership => "membership",
            MapKind::Typicality => "typicality",
            MapKind::Product => "product",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Elementwise `u * t`.
pub fn product_values<T: Scalar>(u: &Array2<T>, t: &Array2<T>) -> Result<Array2<T>> {
    if u.dim() != t.dim() {
        return Err(Error::input(format!(
            "membership shape {:?} differs from typicality shape {:?}",
            u.dim(),
            t.dim()
        )));
    }
    Ok(u * t)
}

/// Pixel-resolution maps of one kind, one per cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterMaps {
    pub kind: MapKind,
    pub rows: usize,
    pub cols: usize,
    /// `maps[c]` is row-major with `rows * cols` values in `[0, 1]`.
    pub maps: Vec<Vec<f64>>,
}

impl ClusterMaps {
    /// Projects per-superpixel values (clusters x superpixels) to pixels.
    pub fn from_superpixel_values<T: Scalar>(
        kind: MapKind,
        values: &Array2<T>,
        sp: &SuperpixelMap,
    ) -> Result<Self> {
        let maps = values
            .rows()
            .into_iter()
            .map(|row| {
                let row: Vec<f64> = row.iter().map(|v| v.to_f64_lossy()).collect();
                project_to_pixels(&row, sp)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { kind, rows: sp.rows(), cols: sp.cols(), maps })
    }

    /// Membership, typicality or product maps of a partition.
    pub fn from_partition<T: Scalar>(
        kind: MapKind,
        state: &PartitionState<T>,
        sp: &SuperpixelMap,
    ) -> Result<Self> {
        match kind {
            MapKind::Membership => Self::from_superpixel_values(kind, &state.u, sp),
            MapKind::Typicality => Self::from_superpixel_values(kind, &state.t, sp),
            MapKind::Product => Self::from_superpixel_values(kind, &product_values(&state.u, &state.t)?, sp),
        }
    }

    pub fn n_clusters(&self) -> usize {
        self.maps.len()
    }
}

/// Writes a map as an 8-bit grayscale image with `v -> round(v * 255)`,
/// halves rounded up. Values are on the absolute `[0, 1]` scale.
pub fn render_map(values: &[f64], rows: usize, cols: usize, path: &Path) -> Result<()> {
    if values.len() != rows * cols {
        return Err(Error::input(format!("{} values for a {rows}x{cols} map", values.len())));
    }
    const SLACK: f64 = 1e-9;
    if let Some(v) = values.iter().find(|v| !(**v >= -SLACK && **v <= 1.0 + SLACK)) {
        return Err(Error::input(format!("map value {v} is outside [0, 1]")));
    }
    save_u8(path, rows, cols, values.iter().map(|&v| quantize(v)).collect())
}

/// Output file name `<stem>_<algo>_c<idx>_<kind>.<ext>`.
pub fn map_file_name(stem: &str, algo: &str, cluster: usize, kind: MapKind, ext: &str) -> String {
    format!("{stem}_{algo}_c{cluster}_{kind}.{ext}")
}

fn assignment_cost<T: Scalar>(reference: &Array2<T>, other: &Array2<T>) -> Vec<Vec<f64>> {
    reference
        .rows()
        .into_iter()
        .map(|r| {
            other
                .rows()
                .into_iter()
                .map(|o| r.iter().zip(o).map(|(&a, &b)| (a - b).to_f64_lossy().powi(2)).sum())
                .collect()
        })
        .collect()
}

/// Total squared center distance of matching reference cluster `i` with
/// cluster `perm[i]` of the other run.
pub fn alignment_cost<T: Scalar>(reference: &Array2<T>, other: &Array2<T>, perm: &[usize]) -> f64 {
    let cost = assignment_cost(reference, other);
    perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum()
}

/// Matches the clusters of another run to reference clusters.
///
/// Returns `perm` with `perm[i]` the cluster of `other` assigned to reference
/// cluster `i`, minimizing the total squared center distance. The search is
/// exhaustive up to 8 clusters (first minimum in lexicographic order) and
/// greedy on the closest remaining pair beyond that.
pub fn align_clusters<T: Scalar>(reference: &Array2<T>, other: &Array2<T>) -> Result<Vec<usize>> {
    if reference.dim() != other.dim() {
        return Err(Error::input(format!(
            "cannot align centers of shape {:?} with {:?}",
            reference.dim(),
            other.dim()
        )));
    }
    let c = reference.nrows();
    let cost = assignment_cost(reference, other);
    if c <= 8 {
        let mut perm: Vec<usize> = (0..c).collect();
        let mut best = perm.clone();
        let mut best_cost = f64::INFINITY;
        loop {
            let total: f64 = perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
            if total < best_cost {
                best_cost = total;
                best.clone_from(&perm);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        return Ok(best);
    }

    let mut pairs: Vec<(f64, usize, usize)> = (0..c)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .map(|(i, j)| (cost[i][j], i, j))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut perm = vec![usize::MAX; c];
    let mut taken = vec![false; c];
    for (_, i, j) in pairs {
        if perm[i] == usize::MAX && !taken[j] {
            perm[i] = j;
            taken[j] = true;
        }
    }
    Ok(perm)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Reorders the clusters of a state so that cluster `i` becomes `perm[i]` of
/// the input, as returned by [`align_clusters`].
pub fn permute_clusters<T: Scalar>(state: &PartitionState<T>, perm: &[usize]) -> PartitionState<T> {
    use ndarray::Axis;
    PartitionState {
        u: state.u.select(Axis(0), perm),
        t: state.t.select(Axis(0), perm),
        centers: state.centers.select(Axis(0), perm),
        gamma: perm.iter().map(|&j| state.gamma[j]).collect(),
    }
}
