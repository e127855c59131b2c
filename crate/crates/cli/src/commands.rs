//! The four subcommands.
//!
//! Every command writes into its output directory and finishes with
//! `config.txt`, the fully resolved settings, so that `--config config.txt`
//! reproduces the run.

use std::fs;
use std::path::{Path, PathBuf};

use pflicm::clustering::{hard_assignments, run};
use pflicm::features::extract_features;
use pflicm::image::GrayImage;
use pflicm::io::{
    format_diagnostics, read_feature_csv, write_centers_csv, write_labels_csv, write_partition_csv,
    write_superpixel_csv, write_text,
};
use pflicm::maps::{align_clusters, map_file_name, permute_clusters, product_values, render_map, ClusterMaps, MapKind};
use pflicm::superpixels::{aggregate, slic, SlicParams, SuperpixelMap};
use pflicm::synth::generate;
use pflicm::{FeatureMatrix64, PartitionState64, RunDiagnostics};

use crate::config::{Algo, PipelineConfig, SynthConfig};
use crate::error::{CliError, CliResult};

fn create_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| pflicm::Error::Io { path: dir.into(), source: e })?;
    Ok(())
}

fn required_input(cfg: &PipelineConfig) -> CliResult<&Path> {
    cfg.input.as_deref().ok_or_else(|| CliError::usage("no input given (use --input)"))
}

fn stem_of(path: &Path) -> String {
    path.file_stem().map_or_else(|| "image".into(), |s| s.to_string_lossy().into_owned())
}

/// Hard labels: argmax of the product maps when typicality is active,
/// otherwise of the memberships.
pub fn hard_labels(algo: Algo, state: &PartitionState64) -> CliResult<Vec<usize>> {
    if algo.is_possibilistic() {
        Ok(hard_assignments(&product_values(&state.u, &state.t)?))
    } else {
        Ok(hard_assignments(&state.u))
    }
}

/// Features and superpixels of an image, shared by every run on it.
struct Preprocessed {
    superpixels: SuperpixelMap,
    features: FeatureMatrix64,
}

fn preprocess(cfg: &PipelineConfig, input: &Path) -> CliResult<Preprocessed> {
    let img = GrayImage::<f64>::load(input)?;
    let pixel_features = extract_features(&img, &cfg.texture)?;
    let params = SlicParams { k_target: cfg.k_target, compactness: cfg.compactness, iters: cfg.slic_iters };
    let superpixels = slic(&img, &params)?;
    let mut features = aggregate(&pixel_features, &superpixels)?;
    if cfg.normalize {
        features = features.normalized();
    }
    Ok(Preprocessed { superpixels, features })
}

/// Partition, centers, hard labels and diagnostics of one run.
fn write_run(dir: &Path, algo: Algo, state: &PartitionState64, diag: &RunDiagnostics) -> CliResult<()> {
    write_partition_csv(&dir.join("partition.csv"), state)?;
    write_centers_csv(&dir.join("centers.csv"), &state.centers)?;
    write_labels_csv(&dir.join("hard_labels.csv"), &hard_labels(algo, state)?)?;
    write_text(&dir.join("diagnostics.txt"), &format_diagnostics(diag))?;
    Ok(())
}

fn write_maps(
    dir: &Path,
    stem: &str,
    cfg: &PipelineConfig,
    kind: MapKind,
    state: &PartitionState64,
    sp: &SuperpixelMap,
) -> CliResult<()> {
    let maps = ClusterMaps::from_partition(kind, state, sp)?;
    for (c, values) in maps.maps.iter().enumerate() {
        let name = map_file_name(stem, cfg.algo.name(), c, kind, cfg.image_format.extension());
        render_map(values, maps.rows, maps.cols, &dir.join(name))?;
    }
    Ok(())
}

fn write_superpixels(dir: &Path, sp: &SuperpixelMap) -> CliResult<()> {
    write_superpixel_csv(&dir.join("superpixels.csv"), sp)?;
    sp.save_labels(&dir.join("superpixel_labels.pgm"))?;
    Ok(())
}

fn check_converged(runs: &[(Algo, &RunDiagnostics)], strict: bool) -> CliResult<()> {
    for (algo, diag) in runs {
        if !diag.converged {
            let msg = format!("{algo} stopped after {} iterations without converging", diag.iterations);
            if strict {
                return Err(CliError::NotConverged(msg));
            }
            eprintln!("warning: {msg}");
        }
    }
    Ok(())
}

/// Full image pipeline: features, superpixels, clustering, maps of all kinds.
pub fn segment(cfg: &PipelineConfig) -> CliResult<()> {
    let input = required_input(cfg)?;
    let pre = preprocess(cfg, input)?;
    let (state, diag) = run(&pre.features, &cfg.cluster)?;

    let out = &cfg.out_dir;
    create_dir(out)?;
    let stem = stem_of(input);
    for kind in MapKind::ALL {
        write_maps(out, &stem, cfg, kind, &state, &pre.superpixels)?;
    }
    write_run(out, cfg.algo, &state, &diag)?;
    write_superpixels(out, &pre.superpixels)?;
    write_text(&out.join("config.txt"), &cfg.echo())?;
    check_converged(&[(cfg.algo, &diag)], cfg.strict)
}

/// Clusters a feature table without the image pipeline.
pub fn cluster(cfg: &PipelineConfig) -> CliResult<()> {
    let input = required_input(cfg)?;
    let mut features: FeatureMatrix64 = read_feature_csv(input)?;
    if cfg.normalize {
        features = features.normalized();
    }
    let (state, diag) = run(&features, &cfg.cluster)?;

    let out = &cfg.out_dir;
    create_dir(out)?;
    write_run(out, cfg.algo, &state, &diag)?;
    write_text(&out.join("config.txt"), &cfg.echo())?;
    check_converged(&[(cfg.algo, &diag)], cfg.strict)
}

/// Runs pflicm, flicm and pfcm on one set of features and superpixels, aligns
/// the latter two to pflicm, and writes each run into its own subdirectory:
/// product maps for pflicm and pfcm, membership maps for flicm.
pub fn compare(cfg: &PipelineConfig) -> CliResult<()> {
    if cfg.algo != Algo::Pflicm {
        return Err(CliError::usage(format!(
            "compare always runs pflicm, flicm and pfcm; algo must be pflicm, got {}",
            cfg.algo
        )));
    }
    let input = required_input(cfg)?;
    let pre = preprocess(cfg, input)?;
    let stem = stem_of(input);
    let out = &cfg.out_dir;
    create_dir(out)?;

    let (reference, reference_diag) = run(&pre.features, &cfg.cluster)?;
    let mut runs = vec![(Algo::Pflicm, reference.clone(), reference_diag)];
    for algo in [Algo::Flicm, Algo::Pfcm] {
        let algo_cfg = cfg.with_algo(algo);
        let (state, diag) = run(&pre.features, &algo_cfg.cluster)?;
        let perm = align_clusters(&reference.centers, &state.centers)?;
        runs.push((algo, permute_clusters(&state, &perm), diag));
    }

    for (algo, state, diag) in &runs {
        let dir: PathBuf = out.join(algo.name());
        create_dir(&dir)?;
        let kind = if algo.is_possibilistic() { MapKind::Product } else { MapKind::Membership };
        write_maps(&dir, &stem, &cfg.with_algo(*algo), kind, state, &pre.superpixels)?;
        write_run(&dir, *algo, state, diag)?;
        write_superpixels(&dir, &pre.superpixels)?;
    }
    write_text(&out.join("config.txt"), &cfg.echo())?;
    let diags: Vec<(Algo, &RunDiagnostics)> = runs.iter().map(|(a, _, d)| (*a, d)).collect();
    check_converged(&diags, cfg.strict)
}

/// Writes `<kind>.<ext>`, the texture labels `<kind>_labels.pgm` (raw label
/// values 0, 1, 2) and the outlier mask `<kind>_outlier.pgm` (0 or 255).
pub fn synth(cfg: &SynthConfig) -> CliResult<()> {
    let synth = generate(&cfg.params)?;
    let (rows, cols) = (cfg.params.rows, cfg.params.cols);
    let out = &cfg.out_dir;
    create_dir(out)?;
    let stem = &cfg.kind;
    synth.image.save(&out.join(format!("{stem}.{}", cfg.image_format.extension())))?;
    GrayImage::<f64>::from_u8(rows, cols, &synth.labels)?.save(&out.join(format!("{stem}_labels.pgm")))?;
    let mask: Vec<u8> = synth.outlier.iter().map(|&o| if o { 255 } else { 0 }).collect();
    GrayImage::<f64>::from_u8(rows, cols, &mask)?.save(&out.join(format!("{stem}_outlier.pgm")))?;
    write_text(&out.join("config.txt"), &cfg.echo())?;
    Ok(())
}
