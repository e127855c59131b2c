use ndarray::{Axis, Zip};

use super::updates::{centers_from, g_from, gammas_from, memberships_from, squared_distances, typicalities_from};
use super::{
    build_neighborhoods, init_state, objective, ClusterConfig, GammaMode, NeighborhoodGraph,
    PartitionState, RunDiagnostics,
};
use crate::data::FeatureMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Clusters `data` from seeded random centers until the memberships settle.
pub fn run<T: Scalar>(
    data: &FeatureMatrix<T>,
    config: &ClusterConfig,
) -> Result<(PartitionState<T>, RunDiagnostics)> {
    let state = init_state(data, config)?;
    let graph = build_neighborhoods(data.coords(), config.radius)?;
    run_from_state(data, &graph, config, state)
}

/// Iterates from an explicit starting state.
///
/// Each iteration updates centers, the fuzzy factor (from the previous
/// memberships), memberships, penalty scales and typicalities, in that order.
/// The first iteration keeps the starting centers: re-estimating them from
/// uniform memberships and unit typicalities would place every center at the
/// data mean.
pub fn run_from_state<T: Scalar>(
    data: &FeatureMatrix<T>,
    graph: &NeighborhoodGraph<T>,
    config: &ClusterConfig,
    state: PartitionState<T>,
) -> Result<(PartitionState<T>, RunDiagnostics)> {
    run_observed(data, graph, config, state, |_, _| {})
}

/// Like [`run_from_state`], calling `observe(iteration, state)` after every
/// completed iteration.
pub fn run_observed<T: Scalar>(
    data: &FeatureMatrix<T>,
    graph: &NeighborhoodGraph<T>,
    config: &ClusterConfig,
    mut state: PartitionState<T>,
    mut observe: impl FnMut(usize, &PartitionState<T>),
) -> Result<(PartitionState<T>, RunDiagnostics)> {
    config.validate()?;
    let (c, n) = (config.n_clusters, data.n_points());
    if state.u.dim() != (c, n) || state.t.dim() != (c, n) || state.gamma.len() != c {
        return Err(Error::input(format!(
            "starting state does not match {c} clusters over {n} points"
        )));
    }
    if graph.n_points() != n {
        return Err(Error::input("neighborhood graph does not match the data"));
    }

    let epsilon = T::lit(config.epsilon);
    let mut diag = RunDiagnostics::default();
    for iter in 1..=config.max_iters {
        if iter > 1 {
            let (centers, degenerate) = centers_from(state.u.view(), state.t.view(), data, config);
            state.centers = centers;
            if !degenerate.is_empty() {
                reseed(&mut state, data, &degenerate);
                diag.reseeds.extend(degenerate.iter().map(|&cl| (iter, cl)));
            }
        }
        let dist = squared_distances(data, &state.centers);
        let g = g_from(state.u.view(), dist.view(), graph, config.m);
        let u = memberships_from(dist.view(), g.view(), config.m);

        let mut delta = T::zero();
        Zip::from(&u).and(&state.u).for_each(|&new, &old| delta = delta.max((new - old).abs()));
        state.u = u;

        if config.gamma_mode == GammaMode::Adaptive {
            state.gamma = gammas_from(state.u.view(), dist.view(), config.m);
        }
        state.t = typicalities_from(dist.view(), &state.gamma, config.b, config.q);

        diag.iterations = iter;
        diag.max_delta_trace.push(delta.to_f64_lossy());
        diag.objective_trace.push(objective(&state, data, graph, config).to_f64_lossy());
        observe(iter, &state);
        if delta < epsilon {
            diag.converged = true;
            break;
        }
    }
    Ok((state, diag))
}

/// Moves each degenerate center onto the point with the lowest maximum
/// membership, using a different point for each cluster.
fn reseed<T: Scalar>(state: &mut PartitionState<T>, data: &FeatureMatrix<T>, clusters: &[usize]) {
    let mut order: Vec<(usize, T)> = state
        .u
        .axis_iter(Axis(1))
        .map(|col| col.iter().copied().fold(T::neg_infinity(), T::max))
        .enumerate()
        .collect();
    order.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal).then(x.0.cmp(&y.0)));
    for (&cluster, &(point, _)) in clusters.iter().zip(order.iter().cycle()) {
        state.centers.row_mut(cluster).assign(&data.point(point));
    }
}
