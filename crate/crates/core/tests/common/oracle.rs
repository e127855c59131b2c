//! Direct, loop-based fuzzy c-means and possibilistic fuzzy c-means.
//!
//! Written against plain vectors, independent of the library's update code,
//! so the engine's reductions can be checked against them. Both start from
//! given centers and penalty scales, keep the centers fixed in the first
//! iteration, and stop once no membership moves by `epsilon` or more.

#![allow(dead_code)]

pub struct OracleResult {
    /// `u[c][n]`
    pub u: Vec<Vec<f64>>,
    pub t: Vec<Vec<f64>>,
    pub centers: Vec<Vec<f64>>,
    pub iterations: usize,
}

pub struct OracleParams {
    pub a: f64,
    pub b: f64,
    pub m: f64,
    pub q: f64,
    pub epsilon: f64,
    pub max_iters: usize,
}

fn sq_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

fn memberships(d: &[Vec<f64>], m: f64) -> Vec<Vec<f64>> {
    let (c, n) = (d.len(), d[0].len());
    let mut u = vec![vec![0.0; n]; c];
    for k in 0..n {
        let zero: Vec<usize> = (0..c).filter(|&i| d[i][k] <= 0.0).collect();
        for i in 0..c {
            u[i][k] = if !zero.is_empty() {
                if zero.contains(&i) {
                    1.0 / zero.len() as f64
                } else {
                    0.0
                }
            } else {
                let s: f64 = (0..c).map(|j| (d[i][k] / d[j][k]).powf(1.0 / (m - 1.0))).sum();
                1.0 / s
            };
        }
    }
    u
}

/// Textbook fuzzy c-means.
pub fn fcm(points: &[Vec<f64>], centers: Vec<Vec<f64>>, p: &OracleParams) -> OracleResult {
    pfcm_impl(points, centers, vec![1.0; 0], p, false, None)
}

/// Fuzzy local-information c-means: fuzzy c-means plus the spatial fuzzy
/// factor over neighbors within `radius` (weights `1 / (distance + 1)`).
pub fn flicm(
    points: &[Vec<f64>],
    coords: &[(f64, f64)],
    radius: f64,
    centers: Vec<Vec<f64>>,
    p: &OracleParams,
) -> OracleResult {
    pfcm_impl(points, centers, vec![1.0; 0], p, false, Some((coords, radius)))
}

/// Possibilistic fuzzy c-means with penalty scales re-estimated from hard
/// assignments every iteration.
pub fn pfcm(points: &[Vec<f64>], centers: Vec<Vec<f64>>, gamma: Vec<f64>, p: &OracleParams) -> OracleResult {
    pfcm_impl(points, centers, gamma, p, true, None)
}

fn pfcm_impl(
    points: &[Vec<f64>],
    mut centers: Vec<Vec<f64>>,
    mut gamma: Vec<f64>,
    p: &OracleParams,
    possibilistic: bool,
    spatial: Option<(&[(f64, f64)], f64)>,
) -> OracleResult {
    let c = centers.len();
    let n = points.len();
    let dim = points[0].len();
    let mut u = vec![vec![1.0 / c as f64; n]; c];
    let mut t = vec![vec![1.0f64; n]; c];
    let mut iterations = 0;
    for iter in 1..=p.max_iters {
        iterations = iter;
        if iter > 1 {
            for i in 0..c {
                let mut num = vec![0.0; dim];
                let mut den = 0.0;
                for k in 0..n {
                    let w = p.a * u[i][k].powf(p.m) + if possibilistic { p.b * t[i][k].powf(p.q) } else { 0.0 };
                    den += w;
                    for j in 0..dim {
                        num[j] += w * points[k][j];
                    }
                }
                centers[i] = num.iter().map(|v| v / den).collect();
            }
        }
        let d: Vec<Vec<f64>> = centers.iter().map(|ci| points.iter().map(|x| sq_dist(x, ci)).collect()).collect();
        let mut cost = d.clone();
        if let Some((coords, radius)) = spatial {
            for k in 0..n {
                for j in 0..n {
                    let dist = ((coords[k].0 - coords[j].0).powi(2) + (coords[k].1 - coords[j].1).powi(2)).sqrt();
                    if j == k || dist > radius {
                        continue;
                    }
                    for i in 0..c {
                        cost[i][k] += (1.0 - u[i][j]).powf(p.m) * d[i][j] / (dist + 1.0);
                    }
                }
            }
        }
        let new_u = memberships(&cost, p.m);
        let mut delta: f64 = 0.0;
        for i in 0..c {
            for k in 0..n {
                delta = delta.max((new_u[i][k] - u[i][k]).abs());
            }
        }
        u = new_u;
        if possibilistic {
            let mut sum = vec![0.0; c];
            let mut count = vec![0usize; c];
            for k in 0..n {
                let mut best = 0;
                for i in 1..c {
                    if u[i][k] > u[best][k] {
                        best = i;
                    }
                }
                sum[best] += d[best][k];
                count[best] += 1;
            }
            for i in 0..c {
                let hard = if count[i] > 0 { sum[i] / count[i] as f64 } else { 0.0 };
                gamma[i] = if hard >= 1e-12 {
                    hard
                } else {
                    let (mut num, mut den) = (0.0, 0.0);
                    for k in 0..n {
                        let w = u[i][k].powf(p.m);
                        num += w * d[i][k];
                        den += w;
                    }
                    (if den > 0.0 { num / den } else { 0.0 }).max(1e-12)
                };
            }
            for i in 0..c {
                for k in 0..n {
                    t[i][k] = 1.0 / (1.0 + (p.b * d[i][k] / gamma[i]).powf(1.0 / (p.q - 1.0)));
                }
            }
        }
        if delta < p.epsilon {
            break;
        }
    }
    OracleResult { u, t, centers, iterations }
}
