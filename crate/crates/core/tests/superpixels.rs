//! SLIC partitions, connectivity and feature aggregation.

mod common;

use common::superpixel_checks::{check_fixture, fixtures};
use pflicm::image::GrayImage;
use pflicm::superpixels::{enforce_connectivity, is_four_connected, slic, SlicParams};

#[test]
fn fixtures_satisfy_partition_round_trip_and_conservation() {
    for (name, img, k) in fixtures() {
        if let Err(e) = check_fixture(&img, k) {
            panic!("{name}: {e}");
        }
    }
}

#[test]
fn constant_image_gives_a_near_square_grid() {
    let img = GrayImage::constant(100, 100, 0.5).unwrap();
    let sp = slic(&img, &SlicParams::new(25)).unwrap();
    let k = sp.n_superpixels();
    assert!((20..=30).contains(&k), "{k} superpixels");
    let mean = 10_000.0 / k as f64;
    assert!(sp.sizes().iter().all(|&s| (s as f64) <= 4.0 * mean));
    for &(r, c) in sp.centroids() {
        let near = |v: f64| ((v - 10.0) / 20.0).round() * 20.0 + 10.0;
        assert!((r - near(r)).abs() <= 2.0 && (c - near(c)).abs() <= 2.0, "centroid ({r}, {c})");
    }
}

#[test]
fn constant_images_have_no_oversized_regions() {
    for (rows, cols, k) in [(64, 64, 16), (90, 60, 40), (128, 128, 100), (50, 200, 33)] {
        let sp = slic(&GrayImage::constant(rows, cols, 0.7).unwrap(), &SlicParams::new(k)).unwrap();
        let mean = (rows * cols) as f64 / sp.n_superpixels() as f64;
        let largest = *sp.sizes().iter().max().unwrap();
        assert!((largest as f64) <= 4.0 * mean, "{rows}x{cols}: {largest} vs mean {mean}");
    }
}

#[test]
fn slic_is_deterministic() {
    for (_, img, k) in fixtures() {
        let a = slic(&img, &SlicParams::new(k)).unwrap();
        let b = slic(&img, &SlicParams::new(k)).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn checkerboard_labels_merge_into_connected_regions() {
    let labels: Vec<u32> = (0..16).map(|p| ((p / 4 + p % 4) % 2) as u32).collect();
    let merged = enforce_connectivity(4, 4, &labels);
    let distinct = merged.iter().collect::<std::collections::BTreeSet<_>>().len();
    assert!(distinct < 16);
    assert!(is_four_connected(4, 4, &merged));
}
