//! Superpixel invariants shared by the integration and acceptance suites.

#![allow(dead_code)]

use pflicm::features::{extract_features, TextureParams};
use pflicm::image::GrayImage;
use pflicm::superpixels::{
    aggregate, is_four_connected, project_to_pixels, slic, superpixel_means, SlicParams,
    SuperpixelMap,
};
use pflicm::synth::{generate, Layout, SynthParams, Texture};

/// Ten labeled images with the superpixel count to request for each.
pub fn fixtures() -> Vec<(String, GrayImage<f64>, usize)> {
    let synth = |p: SynthParams| generate(&p).unwrap().image;
    let mut diagonal = SynthParams::composite(vec![Texture::Ripple, Texture::Flat, Texture::RockNoise], 96, 96, 4);
    diagonal.layout = Layout::Diagonal;
    let mut with_outlier = SynthParams::composite(vec![Texture::Flat, Texture::Ripple], 80, 120, 6);
    with_outlier.outlier_radius = Some(4);
    vec![
        ("ripple".into(), synth(SynthParams::texture(Texture::Ripple, 64, 64, 1)), 50),
        ("flat".into(), synth(SynthParams::texture(Texture::Flat, 80, 100, 2)), 30),
        ("rock".into(), synth(SynthParams::texture(Texture::RockNoise, 64, 96, 3)), 120),
        ("diagonal composite".into(), synth(diagonal), 64),
        ("composite with outlier".into(), synth(with_outlier), 90),
        ("constant".into(), GrayImage::constant(100, 100, 0.4).unwrap(), 25),
        (
            "ramp".into(),
            GrayImage::from_fn(70, 50, |r, c| (r + c) as f64 / 118.0).unwrap(),
            35,
        ),
        (
            "checkerboard".into(),
            GrayImage::from_fn(48, 48, |r, c| if (r / 6 + c / 6) % 2 == 0 { 0.1 } else { 0.9 }).unwrap(),
            64,
        ),
        ("single pixel".into(), GrayImage::constant(1, 1, 0.5).unwrap(), 1),
        ("thin strip".into(), GrayImage::from_fn(3, 90, |_, c| (c % 7) as f64 / 7.0).unwrap(), 10),
    ]
}

/// Every pixel labeled, every label used, every region 4-connected, and the
/// stored sizes and centroids consistent with the label image.
pub fn check_partition(sp: &SuperpixelMap) -> Result<(), String> {
    let k = sp.n_superpixels();
    if sp.labels().len() != sp.rows() * sp.cols() {
        return Err("label image size mismatch".into());
    }
    let mut sizes = vec![0usize; k];
    let mut sums = vec![(0.0f64, 0.0f64); k];
    for (p, &l) in sp.labels().iter().enumerate() {
        let l = l as usize;
        if l >= k {
            return Err(format!("label {l} out of range {k}"));
        }
        sizes[l] += 1;
        sums[l].0 += (p / sp.cols()) as f64;
        sums[l].1 += (p % sp.cols()) as f64;
    }
    if let Some(s) = sizes.iter().position(|&n| n == 0) {
        return Err(format!("superpixel {s} is empty"));
    }
    if sizes != sp.sizes() {
        return Err("stored sizes disagree with the labels".into());
    }
    for (s, (&(r, c), &(sr, sc))) in sp.centroids().iter().zip(&sums).enumerate() {
        let n = sizes[s] as f64;
        if (r - sr / n).abs() > 1e-9 || (c - sc / n).abs() > 1e-9 {
            return Err(format!("centroid of superpixel {s} is off"));
        }
    }
    if !is_four_connected(sp.rows(), sp.cols(), sp.labels()) {
        return Err("a region is not 4-connected".into());
    }
    Ok(())
}

/// Projecting per-superpixel values to pixels and averaging them back returns
/// the values bit for bit.
pub fn check_round_trip(sp: &SuperpixelMap) -> Result<(), String> {
    let k = sp.n_superpixels();
    let values: Vec<f64> = (0..k).map(|s| ((s * 7919) % 1000) as f64 / 999.0).collect();
    let pixels = project_to_pixels(&values, sp).map_err(|e| e.to_string())?;
    let back = superpixel_means(&pixels, sp).map_err(|e| e.to_string())?;
    for s in 0..k {
        let back = back[s];
        if back != values[s] {
            return Err(format!("superpixel {s}: {} came back as {back}", values[s]));
        }
    }
    Ok(())
}

/// Size-weighted superpixel means re-sum to the pixel feature totals.
/// Returns the largest relative discrepancy.
pub fn mass_discrepancy(img: &GrayImage<f64>, sp: &SuperpixelMap) -> Result<f64, String> {
    let features = extract_features(img, &TextureParams::default()).map_err(|e| e.to_string())?;
    let means = aggregate(&features, sp).map_err(|e| e.to_string())?;
    let dim = features.dim();
    let mut pixel_total = vec![0.0f64; dim];
    for p in 0..img.len() {
        for (t, &v) in pixel_total.iter_mut().zip(features.pixel(p)) {
            *t += v;
        }
    }
    let mut worst = 0.0f64;
    for (j, &total) in pixel_total.iter().enumerate() {
        let resum: f64 = (0..sp.n_superpixels()).map(|s| sp.sizes()[s] as f64 * means.points()[[s, j]]).sum();
        worst = worst.max((resum - total).abs() / total.abs().max(1.0));
    }
    Ok(worst)
}

/// Runs SLIC on one fixture and every check above.
pub fn check_fixture(img: &GrayImage<f64>, k_target: usize) -> Result<SuperpixelMap, String> {
    let sp = slic(img, &SlicParams::new(k_target)).map_err(|e| e.to_string())?;
    check_partition(&sp)?;
    check_round_trip(&sp)?;
    if img.rows() >= 17 && img.cols() >= 17 {
        let mass = mass_discrepancy(img, &sp)?;
        if mass > 1e-6 {
            return Err(format!("feature mass off by {mass}"));
        }
    }
    Ok(sp)
}
