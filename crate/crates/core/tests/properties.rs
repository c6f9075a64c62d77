//! Seeded property tests over the model catalog.

mod support;

use support::{catalog, Case};

fn over_catalog(seed: u64, filter: impl Fn(&Case) -> bool, check: fn(&Case, u64) -> Result<(), String>) {
    let mut failures = Vec::new();
    for (i, c) in catalog().iter().filter(|c| filter(c)).enumerate() {
        if let Err(e) = check(c, seed + 100 * i as u64) {
            failures.push(format!("{}: {e}", c.name));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn differential_squares_to_zero() {
    over_catalog(1, |_| true, support::dd_zero);
}

#[test]
fn boundary_squares_to_zero() {
    over_catalog(2, |_| true, support::delta_delta_zero);
}

#[test]
fn differential_preserves_homogeneity() {
    over_catalog(3, |_| true, support::homogeneity_preserved);
}

#[test]
fn gr_is_onto_with_kernel_the_next_filtration_step() {
    over_catalog(4, |c| c.pair.dim() <= 10, support::gr_dimension_identities);
}

#[test]
fn codifferentials_are_adjoint_to_the_differential() {
    over_catalog(5, |c| c.inner.is_some(), support::adjoint_identity);
}

#[test]
fn normalization_is_idempotent() {
    over_catalog(6, |c| c.codiff.is_some(), support::normalize_idempotent);
}

#[test]
fn normal_and_exact_parts_are_unique() {
    over_catalog(7, |c| c.codiff.is_some(), support::decomposition_unique);
}

#[test]
fn g0_acts_on_forms_by_a_lie_algebra_action() {
    over_catalog(8, |_| true, support::action_is_leibniz);
}

#[test]
fn catalog_covers_the_expected_models() {
    let names: Vec<&str> = catalog().iter().map(|c| c.name.as_str()).collect();
    for want in ["ode(3,1)", "sl3/[1,2]", "sp4/[1,2]", "heisenberg(3)", "euc(2)"] {
        assert!(names.contains(&want), "{want} missing from {names:?}");
    }
}
