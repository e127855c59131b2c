//! Seeded point-cloud fixtures for tests, benchmarks and acceptance runs.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::clustering::ClusterConfig;
use crate::data::{Coord, FeatureMatrix};

/// A random clustering problem together with the configuration to run it with.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub data: FeatureMatrix<f64>,
    pub config: ClusterConfig,
}

/// Gaussian blobs with random sizes, dimensions and parameters.
///
/// Every fixture has at most 500 points, 10 dimensions and 5 clusters. Points
/// sit on a random spatial layout and the neighborhood radius is drawn from
/// `{0, 4, 12, inf}` so that local, wide and disabled fuzzy factors all appear.
pub fn random_fixture(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(20..=500);
    let d = rng.random_range(1..=10);
    let c = rng.random_range(2..=5);
    let spread = rng.random_range(0.05..1.0);
    let centers: Vec<Vec<f64>> = (0..c)
        .map(|_| (0..d).map(|_| rng.random_range(-5.0..5.0)).collect())
        .collect();
    let noise = Normal::new(0.0, spread).expect("valid normal");
    let mut points = Array2::zeros((n, d));
    let mut coords = Vec::with_capacity(n);
    let side = (n as f64).sqrt().ceil() as usize;
    for i in 0..n {
        let center = &centers[rng.random_range(0..c)];
        for (j, &mu) in center.iter().enumerate() {
            points[[i, j]] = mu + noise.sample(&mut rng);
        }
        coords.push(((i / side) as f64, (i % side) as f64));
    }
    let radius = [0.0, 4.0, 12.0, f64::INFINITY][rng.random_range(0..4)];
    let config = ClusterConfig {
        n_clusters: c,
        a: rng.random_range(0.5..20.0),
        b: rng.random_range(0.0..5.0),
        m: rng.random_range(1.3..3.0),
        q: rng.random_range(1.3..3.0),
        epsilon: 1e-6,
        max_iters: 200,
        radius,
        seed,
        ..ClusterConfig::default()
    };
    Fixture {
        data: FeatureMatrix::new(points, coords).expect("fixture is valid"),
        config,
    }
}

/// Three tight blobs plus one far outlier.
#[derive(Debug, Clone)]
pub struct OutlierFixture {
    pub data: FeatureMatrix<f64>,
    /// Blob index of every point; `None` for the outlier.
    pub blob: Vec<Option<usize>>,
    pub outlier: usize,
}

/// Points per blob in [`outlier_fixture`].
pub const OUTLIER_BLOB_SIZE: usize = 100;

/// Three blobs of [`OUTLIER_BLOB_SIZE`] points in ten dimensions (standard
/// deviation 0.1), centered 20 apart along the first axis, and a single point
/// 50 beyond the last blob. Each blob occupies its own spatial tile; the
/// outlier sits to the right of the last tile.
pub fn outlier_fixture(seed: u64) -> OutlierFixture {
    const DIM: usize = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, 0.1).expect("valid normal");
    let n = 3 * OUTLIER_BLOB_SIZE + 1;
    let mut points = Array2::zeros((n, DIM));
    let mut coords: Vec<Coord> = Vec::with_capacity(n);
    let mut blob = Vec::with_capacity(n);
    for b in 0..3 {
        for i in 0..OUTLIER_BLOB_SIZE {
            let row = b * OUTLIER_BLOB_SIZE + i;
            for j in 0..DIM {
                points[[row, j]] = noise.sample(&mut rng);
            }
            points[[row, 0]] += 20.0 * b as f64;
            coords.push(((i / 10) as f64, (b * 12 + i % 10) as f64));
            blob.push(Some(b));
        }
    }
    let outlier = n - 1;
    points[[outlier, 0]] = 90.0;
    coords.push((5.0, 40.0));
    blob.push(None);
    OutlierFixture {
        data: FeatureMatrix::new(points, coords).expect("fixture is valid"),
        blob,
        outlier,
    }
}
