//! Closed-form values of the individual update steps.

#![allow(dead_code)]

use ndarray::{array, Array2};
use pflicm::clustering::{
    build_neighborhoods, compute_g, update_centers, update_memberships, update_typicalities,
};
use pflicm::{ClusterConfig, FeatureMatrix};

/// `1 / (1 + 0.3^(1/1.2))`, evaluated with 40-digit arithmetic.
pub const T_REFERENCE: f64 = 0.731_708_997_774_526_4;

pub struct Check {
    pub name: &'static str,
    pub got: f64,
    pub want: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        (self.got - self.want).abs() <= self.tol
    }
}

fn line(xs: &[f64]) -> FeatureMatrix<f64> {
    FeatureMatrix::with_linear_coords(Array2::from_shape_vec((xs.len(), 1), xs.to_vec()).unwrap()).unwrap()
}

pub fn all() -> Vec<Check> {
    let mut checks = Vec::new();

    // membership: x = 0, centers 1 and 3, no fuzzy factor, m = 2
    let u = update_memberships(&line(&[0.0]), &array![[1.0], [3.0]], &Array2::zeros((2, 1)), 2.0);
    checks.push(Check { name: "membership u1", got: u[[0, 0]], want: 0.9, tol: 1e-12 });
    checks.push(Check { name: "membership u2", got: u[[1, 0]], want: 0.1, tol: 1e-12 });

    // typicality: at the center, on the crossover, and b = 0.3, gamma = 1, d^2 = 1, q = 2.2
    let t = |x: f64, gamma: f64, b: f64| update_typicalities(&line(&[x]), &array![[0.0]], &[gamma], b, 2.2)[[0, 0]];
    checks.push(Check { name: "typicality at the center", got: t(0.0, 1.0, 0.3), want: 1.0, tol: 1e-12 });
    checks.push(Check { name: "typicality at b d^2 = gamma", got: t(2.0, 2.0, 0.5), want: 0.5, tol: 1e-12 });
    checks.push(Check { name: "typicality b=0.3 gamma=1 d^2=1", got: t(1.0, 1.0, 0.3), want: T_REFERENCE, tol: 1e-3 });

    // center: x = {0, 1}, a = 1, b = 0, m = 2, memberships (0.8, 0.2)
    let config = ClusterConfig { n_clusters: 1, a: 1.0, b: 0.0, m: 2.0, ..ClusterConfig::default() };
    let c = update_centers(&array![[0.8, 0.2]], &array![[1.0, 1.0]], &line(&[0.0, 1.0]), &config).unwrap();
    checks.push(Check { name: "center", got: c[[0, 0]], want: 0.04 / 0.68, tol: 1e-6 });

    // fuzzy factor: one neighbor at distance 1 with u = 0.5, m = 2, squared distance 4
    let data = FeatureMatrix::new(array![[7.0], [2.0]], vec![(0.0, 0.0), (0.0, 1.0)]).unwrap();
    let graph = build_neighborhoods(data.coords(), 1.0).unwrap();
    let g = compute_g(&array![[0.5, 0.5]], &array![[0.0]], &data, &graph, 2.0);
    checks.push(Check { name: "fuzzy factor", got: g[[0, 0]], want: 0.5, tol: 1e-9 });

    checks
}
