use ndarray::Zip;

use super::updates::{g_from, squared_distances};
use super::{ClusterConfig, NeighborhoodGraph, PartitionState};
use crate::data::FeatureMatrix;
use crate::scalar::Scalar;

/// Objective value of a state: the membership term with the fuzzy factor, the
/// typicality term, and the penalty that keeps typicalities away from zero.
pub fn objective<T: Scalar>(
    state: &PartitionState<T>,
    data: &FeatureMatrix<T>,
    graph: &NeighborhoodGraph<T>,
    config: &ClusterConfig,
) -> T {
    let dist = squared_distances(data, &state.centers);
    let g = g_from(state.u.view(), dist.view(), graph, config.m);
    let (a, b, m, q) = (T::lit(config.a), T::lit(config.b), T::lit(config.m), T::lit(config.q));

    let mut total = T::zero();
    Zip::from(&state.u).and(&state.t).and(&dist).and(&g).for_each(|&u, &t, &d, &gv| {
        total = total + a * u.powf(m) * (d + gv) + b * t.powf(q) * d;
    });
    for (row, &gamma) in state.t.rows().into_iter().zip(&state.gamma) {
        let penalty: T = row.iter().map(|&t| (T::one() - t).powf(q)).sum();
        total = total + gamma * penalty;
    }
    total
}
