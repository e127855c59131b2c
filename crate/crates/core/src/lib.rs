//! Soft texture segmentation with possibilistic fuzzy local-information c-means.
//!
//! The pipeline extracts per-pixel texture descriptors, oversegments the image
//! into superpixels, averages descriptors per superpixel and clusters the
//! averages. Every cluster yields a membership, a typicality and a product map.
//!
//! The numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the double-precision variants used by the command-line tool.

pub mod clustering;
pub mod data;
pub mod error;
pub mod features;
pub mod fixtures;
pub mod image;
pub mod io;
pub mod maps;
pub mod scalar;
pub mod superpixels;
pub mod synth;

pub use clustering::{ClusterConfig, GammaMode, NeighborhoodGraph, PartitionState, RunDiagnostics};
pub use data::{normalize_features, Coord, FeatureMatrix};
pub use error::{Error, Result};
pub use scalar::Scalar;

pub type FeatureMatrix64 = FeatureMatrix<f64>;
pub type FeatureMatrix32 = FeatureMatrix<f32>;
pub type PartitionState64 = PartitionState<f64>;
pub type PartitionState32 = PartitionState<f32>;
