//! Possibilistic fuzzy local-information c-means.
//!
//! The engine alternates closed-form updates of centers, memberships,
//! penalty scales and typicalities. Setting `b = 0` removes the possibilistic
//! terms (FLICM), `radius = 0` removes the spatial fuzzy factor (PFCM), and both
//! together leave plain fuzzy c-means.

mod engine;
mod neighborhood;
mod objective;
mod updates;

use ndarray::Array2;

pub use engine::{run, run_from_state, run_observed};
pub use neighborhood::{build_neighborhoods, NeighborhoodGraph};
pub use objective::objective;
pub use updates::{
    compute_g, hard_assignments, init_state, init_state_with_centers, squared_distances,
    update_centers, update_gammas, update_memberships, update_typicalities,
};

use crate::error::{Error, Result};

/// How the per-cluster penalty scales evolve during a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaMode {
    /// Re-estimated every iteration from the hard-assigned cluster spread.
    #[default]
    Adaptive,
    /// Kept at the values computed from the initial centers.
    Frozen,
}

/// Parameters of one clustering run.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterConfig {
    pub n_clusters: usize,
    /// Weight of the fuzzy membership term.
    pub a: f64,
    /// Weight of the typicality term.
    pub b: f64,
    /// Membership fuzzifier.
    pub m: f64,
    /// Typicality fuzzifier.
    pub q: f64,
    /// Stop once the largest membership change falls below this.
    pub epsilon: f64,
    pub max_iters: usize,
    /// Neighborhood radius in pixels; `f64::INFINITY` connects every pair.
    pub radius: f64,
    pub seed: u64,
    pub gamma_mode: GammaMode,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        Self {
            n_clusters: 3,
            a: 14.0,
            b: 0.3,
            m: 1.8,
            q: 2.2,
            epsilon: 1e-6,
            max_iters: 500,
            radius: f64::INFINITY,
            seed: 0,
            gamma_mode: GammaMode::Adaptive,
        }
    }
}

impl ClusterConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::config(msg));
        if self.n_clusters == 0 {
            return fail("number of clusters must be at least 1".into());
        }
        if !(self.m > 1.0 && self.m.is_finite()) {
            return fail(format!("m must be a finite value > 1, got {}", self.m));
        }
        if !(self.q > 1.0 && self.q.is_finite()) {
            return fail(format!("q must be a finite value > 1, got {}", self.q));
        }
        if !(self.a >= 0.0 && self.a.is_finite()) || !(self.b >= 0.0 && self.b.is_finite()) {
            return fail(format!("a and b must be finite and >= 0, got a={} b={}", self.a, self.b));
        }
        if self.a + self.b <= 0.0 {
            return fail("a + b must be positive".into());
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return fail(format!("epsilon must be > 0, got {}", self.epsilon));
        }
        if self.max_iters == 0 {
            return fail("max_iters must be at least 1".into());
        }
        if self.radius.is_nan() || self.radius < 0.0 {
            return fail(format!("radius must be in [0, inf], got {}", self.radius));
        }
        Ok(())
    }
}

/// Memberships `u` (C x N, columns sum to one), typicalities `t` (C x N),
/// centers (C x d) and penalty scales `gamma` (C).
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionState<T> {
    pub u: Array2<T>,
    pub t: Array2<T>,
    pub centers: Array2<T>,
    pub gamma: Vec<T>,
}

impl<T> PartitionState<T> {
    pub fn n_clusters(&self) -> usize {
        self.u.nrows()
    }

    pub fn n_points(&self) -> usize {
        self.u.ncols()
    }
}

/// What happened during a run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunDiagnostics {
    pub iterations: usize,
    /// Objective value after each iteration.
    pub objective_trace: Vec<f64>,
    /// Largest absolute membership change in each iteration.
    pub max_delta_trace: Vec<f64>,
    pub converged: bool,
    /// `(iteration, cluster)` for every center that had to be re-seeded.
    pub reseeds: Vec<(usize, usize)>,
}

impl RunDiagnostics {
    pub fn final_objective(&self) -> Option<f64> {
        self.objective_trace.last().copied()
    }

    pub fn final_max_delta(&self) -> Option<f64> {
        self.max_delta_trace.last().copied()
    }
}
