//! The individual alternating-optimization steps.
//!
//! Each public function takes the data and centers and recomputes squared
//! distances; the engine uses the `*_from` variants to share one distance
//! matrix across the steps of an iteration.

use ndarray::{Array2, ArrayView2, Axis, Zip};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ClusterConfig, NeighborhoodGraph, PartitionState};
use crate::data::FeatureMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `dist[[c, n]] = ||x_n - c_c||^2`.
pub fn squared_distances<T: Scalar>(data: &FeatureMatrix<T>, centers: &Array2<T>) -> Array2<T> {
    check_center_dim(data, centers);
    let points = data.points();
    Array2::from_shape_fn((centers.nrows(), data.n_points()), |(c, n)| {
        points
            .row(n)
            .iter()
            .zip(centers.row(c))
            .map(|(&x, &y)| (x - y) * (x - y))
            .sum()
    })
}

fn check_center_dim<T: Scalar>(data: &FeatureMatrix<T>, centers: &Array2<T>) {
    assert_eq!(
        centers.ncols(),
        data.dim(),
        "centers have dimension {}, data has {}",
        centers.ncols(),
        data.dim()
    );
}

/// Samples `C` distinct data points as centers and builds the starting state:
/// uniform memberships, unit typicalities, and penalty scales from the
/// unweighted spread of all points around each center.
pub fn init_state<T: Scalar>(
    data: &FeatureMatrix<T>,
    config: &ClusterConfig,
) -> Result<PartitionState<T>> {
    config.validate()?;
    let (n, c) = (data.n_points(), config.n_clusters);
    if n < c {
        return Err(Error::input(format!("{n} points cannot seed {c} clusters")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let picks = rand::seq::index::sample(&mut rng, n, c).into_vec();
    let centers = data.points().select(Axis(0), &picks);
    init_state_with_centers(data, centers, config)
}

/// Starting state around caller-supplied centers.
pub fn init_state_with_centers<T: Scalar>(
    data: &FeatureMatrix<T>,
    centers: Array2<T>,
    config: &ClusterConfig,
) -> Result<PartitionState<T>> {
    config.validate()?;
    let c = config.n_clusters;
    if centers.nrows() != c || centers.ncols() != data.dim() {
        return Err(Error::input(format!(
            "expected {c} initial centers of dimension {}, got {}x{}",
            data.dim(),
            centers.nrows(),
            centers.ncols()
        )));
    }
    let n = data.n_points();
    let dist = squared_distances(data, &centers);
    let floor = T::lit(T::GAMMA_FLOOR);
    let gamma = dist
        .axis_iter(Axis(0))
        .map(|row| (row.sum() / T::from_usize_lossy(n)).max(floor))
        .collect();
    Ok(PartitionState {
        u: Array2::from_elem((c, n), T::one() / T::from_usize_lossy(c)),
        t: Array2::ones((c, n)),
        centers,
        gamma,
    })
}

/// Fuzzy factor `G[c, n] = sum_k w_nk (1 - u_ck)^m ||x_k - c_c||^2`.
pub fn compute_g<T: Scalar>(
    u: &Array2<T>,
    centers: &Array2<T>,
    data: &FeatureMatrix<T>,
    graph: &NeighborhoodGraph<T>,
    m: f64,
) -> Array2<T> {
    let dist = squared_distances(data, centers);
    g_from(u.view(), dist.view(), graph, m)
}

pub(crate) fn g_from<T: Scalar>(
    u: ArrayView2<'_, T>,
    dist: ArrayView2<'_, T>,
    graph: &NeighborhoodGraph<T>,
    m: f64,
) -> Array2<T> {
    assert_eq!(u.dim(), dist.dim(), "membership and distance shapes differ");
    assert_eq!(graph.n_points(), u.ncols(), "graph size differs from point count");
    let (c, n) = u.dim();
    if graph.is_empty() {
        return Array2::zeros((c, n));
    }
    let m = T::lit(m);
    let mut spread = Array2::zeros((c, n));
    Zip::from(&mut spread)
        .and(u)
        .and(dist)
        .for_each(|s, &uk, &dk| *s = (T::one() - uk).max(T::zero()).powf(m) * dk);
    match graph {
        // weights is symmetric with a zero diagonal
        NeighborhoodGraph::Complete { weights } => spread.dot(weights),
        NeighborhoodGraph::Sparse { offsets, edges } => {
            Array2::from_shape_fn((c, n), |(ci, ni)| {
                edges[offsets[ni]..offsets[ni + 1]]
                    .iter()
                    .map(|&(k, w)| w * spread[[ci, k]])
                    .sum()
            })
        }
    }
}

/// Center update: each center is the mean of the data weighted by
/// `a * u^m + b * t^q`.
///
/// Fails with [`Error::DegenerateCluster`] when a cluster's weights sum to zero.
pub fn update_centers<T: Scalar>(
    u: &Array2<T>,
    t: &Array2<T>,
    data: &FeatureMatrix<T>,
    config: &ClusterConfig,
) -> Result<Array2<T>> {
    let (centers, degenerate) = centers_from(u.view(), t.view(), data, config);
    if degenerate.is_empty() {
        Ok(centers)
    } else {
        Err(Error::DegenerateCluster { clusters: degenerate })
    }
}

/// Weighted means plus the clusters whose total weight was zero. Rows of
/// degenerate clusters are left at zero.
pub(crate) fn centers_from<T: Scalar>(
    u: ArrayView2<'_, T>,
    t: ArrayView2<'_, T>,
    data: &FeatureMatrix<T>,
    config: &ClusterConfig,
) -> (Array2<T>, Vec<usize>) {
    assert_eq!(u.dim(), t.dim(), "membership and typicality shapes differ");
    let (a, b, m, q) = (T::lit(config.a), T::lit(config.b), T::lit(config.m), T::lit(config.q));
    let mut weights = Array2::zeros(u.dim());
    Zip::from(&mut weights)
        .and(u)
        .and(t)
        .for_each(|w, &uc, &tc| *w = a * uc.powf(m) + b * tc.powf(q));

    let mut centers = weights.dot(data.points());
    let mut degenerate = Vec::new();
    for (c, (mut row, wrow)) in centers.axis_iter_mut(Axis(0)).zip(weights.axis_iter(Axis(0))).enumerate() {
        let total = wrow.sum();
        if total > T::zero() && total.is_finite() {
            row.mapv_inplace(|v| v / total);
        } else {
            row.fill(T::zero());
            degenerate.push(c);
        }
    }
    (centers, degenerate)
}

/// Membership update from the data, centers and fuzzy factor.
///
/// Where `||x_n - c_c||^2 + G[c, n]` vanishes for a set `S` of clusters, the
/// point's membership is split evenly over `S`.
pub fn update_memberships<T: Scalar>(
    data: &FeatureMatrix<T>,
    centers: &Array2<T>,
    g: &Array2<T>,
    m: f64,
) -> Array2<T> {
    let dist = squared_distances(data, centers);
    memberships_from(dist.view(), g.view(), m)
}

pub(crate) fn memberships_from<T: Scalar>(
    dist: ArrayView2<'_, T>,
    g: ArrayView2<'_, T>,
    m: f64,
) -> Array2<T> {
    assert_eq!(dist.dim(), g.dim(), "distance and fuzzy-factor shapes differ");
    let power = T::lit(1.0 / (m - 1.0));
    let (c, n) = dist.dim();
    let mut u = Array2::zeros((c, n));
    let mut cost = vec![T::zero(); c];
    for col in 0..n {
        for (ci, slot) in cost.iter_mut().enumerate() {
            *slot = dist[[ci, col]] + g[[ci, col]];
        }
        let zeros = cost.iter().filter(|&&v| v <= T::zero()).count();
        if zeros > 0 {
            let share = T::one() / T::from_usize_lossy(zeros);
            for (ci, &v) in cost.iter().enumerate() {
                u[[ci, col]] = if v <= T::zero() { share } else { T::zero() };
            }
            continue;
        }
        // ratios against the smallest cost keep the powers in [0, 1]
        let best = cost.iter().copied().fold(T::infinity(), T::min);
        let mut total = T::zero();
        for (ci, &v) in cost.iter().enumerate() {
            let r = (best / v).powf(power);
            u[[ci, col]] = r;
            total = total + r;
        }
        for ci in 0..c {
            u[[ci, col]] = u[[ci, col]] / total;
        }
    }
    u
}

/// Index of the largest membership in each column; ties go to the lowest cluster.
pub fn hard_assignments<T: Scalar>(u: &Array2<T>) -> Vec<usize> {
    u.axis_iter(Axis(1))
        .map(|col| {
            col.iter()
                .enumerate()
                .fold((0, T::neg_infinity()), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) })
                .0
        })
        .collect()
}

/// Penalty scales: mean squared distance of the points hard-assigned to each
/// cluster. Empty clusters, or clusters whose mean is below `1e-12`, fall back
/// to the `u^m`-weighted mean over all points, floored at `1e-12`.
pub fn update_gammas<T: Scalar>(
    u: &Array2<T>,
    centers: &Array2<T>,
    data: &FeatureMatrix<T>,
    m: f64,
) -> Vec<T> {
    let dist = squared_distances(data, centers);
    gammas_from(u.view(), dist.view(), m)
}

pub(crate) fn gammas_from<T: Scalar>(u: ArrayView2<'_, T>, dist: ArrayView2<'_, T>, m: f64) -> Vec<T> {
    let c = u.nrows();
    let floor = T::lit(T::GAMMA_FLOOR);
    let labels = hard_assignments(&u.to_owned());
    let mut sums = vec![T::zero(); c];
    let mut counts = vec![0usize; c];
    for (n, &l) in labels.iter().enumerate() {
        sums[l] = sums[l] + dist[[l, n]];
        counts[l] += 1;
    }
    let m = T::lit(m);
    (0..c)
        .map(|ci| {
            if counts[ci] > 0 {
                let mean = sums[ci] / T::from_usize_lossy(counts[ci]);
                if mean >= floor {
                    return mean;
                }
            }
            let (num, den) = u
                .row(ci)
                .iter()
                .zip(dist.row(ci))
                .fold((T::zero(), T::zero()), |(num, den), (&uc, &d)| {
                    let w = uc.powf(m);
                    (num + w * d, den + w)
                });
            let soft = if den > T::zero() { num / den } else { T::zero() };
            soft.max(floor)
        })
        .collect()
}

/// Typicality update `t = 1 / (1 + (b d^2 / gamma)^(1 / (q - 1)))`.
pub fn update_typicalities<T: Scalar>(
    data: &FeatureMatrix<T>,
    centers: &Array2<T>,
    gamma: &[T],
    b: f64,
    q: f64,
) -> Array2<T> {
    let dist = squared_distances(data, centers);
    typicalities_from(dist.view(), gamma, b, q)
}

pub(crate) fn typicalities_from<T: Scalar>(dist: ArrayView2<'_, T>, gamma: &[T], b: f64, q: f64) -> Array2<T> {
    assert_eq!(gamma.len(), dist.nrows(), "one penalty scale per cluster required");
    let b = T::lit(b);
    let power = T::lit(1.0 / (q - 1.0));
    Array2::from_shape_fn(dist.dim(), |(c, n)| {
        let ratio = b * dist[[c, n]] / gamma[c];
        T::one() / (T::one() + ratio.powf(power))
    })
}
