//! Hand-computed values of each update step.

mod common;

#[test]
fn update_steps_reproduce_hand_computed_values() {
    let failed: Vec<String> = common::spot_checks::all()
        .into_iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: got {}, want {} ± {}", c.name, c.got, c.want, c.tol))
        .collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}

#[test]
fn reference_typicality_matches_closed_form() {
    let t = 1.0 / (1.0 + 0.3f64.powf(1.0 / 1.2));
    assert!((t - common::spot_checks::T_REFERENCE).abs() < 1e-15);
}
