//! The engine's degenerate configurations against direct implementations.

mod common;

use common::oracle::{self, OracleParams};
use common::{max_abs_diff, points_of, rows_of};
use pflicm::clustering::{build_neighborhoods, init_state, run_from_state};
use pflicm::fixtures::random_fixture;
use pflicm::ClusterConfig;

const TOL: f64 = 1e-6;

fn params(config: &ClusterConfig) -> OracleParams {
    OracleParams {
        a: config.a,
        b: config.b,
        m: config.m,
        q: config.q,
        epsilon: config.epsilon,
        max_iters: config.max_iters,
    }
}

#[test]
fn fcm_reduction_matches_direct_loop() {
    for seed in 0..10 {
        let fx = random_fixture(100 + seed);
        let config = ClusterConfig { b: 0.0, radius: 0.0, ..fx.config };
        let init = init_state(&fx.data, &config).unwrap();
        let graph = build_neighborhoods(fx.data.coords(), config.radius).unwrap();
        let (state, diag) = run_from_state(&fx.data, &graph, &config, init.clone()).unwrap();
        let direct = oracle::fcm(&points_of(&fx.data), rows_of(&init.centers), &params(&config));
        assert_eq!(diag.iterations, direct.iterations, "seed {seed}");
        assert!(max_abs_diff(&state.u, &direct.u) < TOL, "seed {seed}");
        assert!(max_abs_diff(&state.centers, &direct.centers) < TOL, "seed {seed}");
    }
}

#[test]
fn pfcm_reduction_matches_direct_loop() {
    for seed in 0..10 {
        let fx = random_fixture(200 + seed);
        let config = ClusterConfig { radius: 0.0, ..fx.config };
        let init = init_state(&fx.data, &config).unwrap();
        let graph = build_neighborhoods(fx.data.coords(), config.radius).unwrap();
        let (state, _) = run_from_state(&fx.data, &graph, &config, init.clone()).unwrap();
        let direct = oracle::pfcm(
            &points_of(&fx.data),
            rows_of(&init.centers),
            init.gamma.clone(),
            &params(&config),
        );
        assert!(max_abs_diff(&state.u, &direct.u) < TOL, "seed {seed}");
        assert!(max_abs_diff(&state.t, &direct.t) < TOL, "seed {seed}");
        assert!(max_abs_diff(&state.centers, &direct.centers) < TOL, "seed {seed}");
    }
}

#[test]
fn flicm_reduction_matches_direct_loop() {
    for seed in 0..10 {
        let mut fx = random_fixture(300 + seed);
        fx.data = fx.data.select(&(0..fx.data.n_points().min(120)).collect::<Vec<_>>()).unwrap();
        let radius = if fx.config.radius == 0.0 { 4.0 } else { fx.config.radius };
        let config = ClusterConfig { b: 0.0, radius, ..fx.config };
        let init = init_state(&fx.data, &config).unwrap();
        let graph = build_neighborhoods(fx.data.coords(), config.radius).unwrap();
        let (state, _) = run_from_state(&fx.data, &graph, &config, init.clone()).unwrap();
        assert!(state.t.iter().all(|&t| t == 1.0));
        let direct = oracle::flicm(
            &points_of(&fx.data),
            fx.data.coords(),
            radius,
            rows_of(&init.centers),
            &params(&config),
        );
        assert!(max_abs_diff(&state.u, &direct.u) < TOL, "seed {seed}");
        assert!(max_abs_diff(&state.centers, &direct.centers) < TOL, "seed {seed}");
    }
}
