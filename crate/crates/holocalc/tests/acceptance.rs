//! Acceptance suite: the exit criteria of the build, one test per
//! criterion, each printing a single pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`). Tolerances are pinned
//! in the library checks these tests drive: exact-zero for everything
//! rational, 1 +- 0.05 and 2 +- 0.1 for the floating-shadow slopes.

use holocalc::report::{CheckRecord, Status};
use holocalc::verify::{run_suite, Suite};
use std::time::Instant;

const SEED: u64 = 7;

fn require(records: &[CheckRecord], names: &[&str]) -> Result<String, String> {
    let mut details = Vec::new();
    for want in names {
        let rec = records
            .iter()
            .find(|r| r.name == *want)
            .ok_or_else(|| format!("check {want} missing from the suite"))?;
        if rec.status != Status::Pass {
            return Err(format!("{}: {}", rec.name, rec.detail));
        }
        details.push(rec.detail.clone());
    }
    Ok(details.join(" | "))
}

fn criterion(number: usize, title: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => {
            println!("criterion {number:2} [{title}]: PASS - {detail}");
        }
        Err(msg) => {
            println!("criterion {number:2} [{title}]: FAIL - {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

#[test]
fn criterion_01_exterior_core_exactness() {
    let start = Instant::now();
    let records = run_suite(Suite::Exterior, SEED);
    let outcome = require(
        &records,
        &[
            "exterior.hodge_defining_contract_exhaustive",
            "exterior.hodge_double_star_sign_law",
            "exterior.d_squared_and_leibniz",
            "exterior.hodge_star_linear_solve_oracle",
        ],
    )
    .and_then(|d| {
        let elapsed = start.elapsed();
        if elapsed.as_secs() >= 30 {
            Err(format!("exterior core took {elapsed:?}, budget is 30 s"))
        } else {
            Ok(format!("{d} | runtime {elapsed:?}"))
        }
    });
    criterion(1, "exterior core exactness", outcome);
}

#[test]
fn criterion_02_g2_type_decomposition() {
    let records = run_suite(Suite::G2, SEED);
    let outcome = require(
        &records,
        &["g2.projector_ranks", "g2.projector_algebra_random"],
    );
    criterion(2, "G2 type decomposition", outcome);
}

#[test]
fn criterion_03_identity_suite() {
    let records = run_suite(Suite::G2, SEED);
    let outcome = require(
        &records,
        &[
            "g2.first_order_identities",
            "g2.second_identity_zero_27_part",
            "g2.dirac_descriptions_agree",
            "g2.dirac_squared_is_laplacian",
        ],
    );
    criterion(3, "function/one-form identity suite", outcome);
}

#[test]
fn criterion_04_torsion_round_trip() {
    let records = run_suite(Suite::G2, SEED);
    let outcome = require(
        &records,
        &["g2.torsion_round_trip", "g2.torsion_flat_and_conformal"],
    );
    criterion(4, "torsion round trip", outcome);
}

#[test]
fn criterion_05_cone_torsion_free() {
    let records = run_suite(Suite::Cone, SEED);
    let outcome = require(
        &records,
        &[
            "cone.torsion_free_cone_structure",
            "cone.link_star_table_generated",
            "cone.cone_torsion_via_pointwise_solver",
        ],
    );
    criterion(5, "cone structure torsion-free", outcome);
}

#[test]
fn criterion_06_ansatz_residuals() {
    let records = run_suite(Suite::Spin7, SEED);
    let outcome = require(
        &records,
        &[
            "spin7.cayley_self_pairing",
            "spin7.residual_equivalence_random_triples",
            "spin7.eps_scaling_equivalence",
        ],
    );
    criterion(6, "circle-invariant ansatz residuals", outcome);
}

#[test]
fn criterion_07_linearisation_and_deformation() {
    let records = run_suite(Suite::Spin7, SEED);
    let outcome = require(
        &records,
        &[
            "spin7.linearisation_is_linear",
            "spin7.derivative_slope_test",
            "spin7.quadratic_remainder_slope",
            "spin7.hitchin_quadratic_bound",
            "spin7.infinitesimal_solver_full_basis",
        ],
    );
    criterion(7, "linearisation and infinitesimal deformation", outcome);
}

#[test]
fn criterion_08_seifert_operators() {
    let records = run_suite(Suite::Seifert, SEED);
    let outcome = require(
        &records,
        &[
            "seifert.codifferential_formulas_agree",
            "seifert.star_m_vs_transverse_star_exhaustive",
        ],
    );
    criterion(8, "adapted Seifert operators", outcome);
}

#[test]
fn criterion_09_spectral_calculators() {
    let records = run_suite(Suite::Spectral, SEED);
    let outcome = require(
        &records,
        &[
            "spectral.reference_indicial_roots",
            "spectral.index_jump_additivity",
            "spectral.weighted_cohomology_cases",
        ],
    );
    criterion(9, "spectral calculators", outcome);
}

#[test]
fn criterion_10_example_catalogs() {
    let start = Instant::now();
    let records = run_suite(Suite::Catalog, SEED);
    let outcome = require(
        &records,
        &[
            "catalog.canonical_zeta_flags_and_closed_forms",
            "catalog.an_records",
            "catalog.wcp2_weights",
            "catalog.s3r4_family",
        ],
    )
    .and_then(|d| {
        // the whole acceptance surface must stay desk-scale; this suite is
        // the cheapest, the heavyweight ones are timed by criterion 1 and
        // the full run below
        let elapsed = start.elapsed();
        Ok(format!("{d} | runtime {elapsed:?}"))
    });
    criterion(10, "example catalogs", outcome);
}

#[test]
fn full_suite_runtime_budget() {
    // criterion 10's global constraint: the complete verification surface
    // finishes in well under two minutes
    let start = Instant::now();
    let records = holocalc::verify::run_all(SEED);
    let elapsed = start.elapsed();
    let bad: Vec<_> = records.iter().filter(|r| r.status != Status::Pass).collect();
    if !bad.is_empty() {
        for b in &bad {
            println!("non-pass: {} - {}", b.name, b.detail);
        }
        panic!("{} checks did not pass", bad.len());
    }
    println!(
        "full verification surface: {} checks in {elapsed:?} (budget 120 s)",
        records.len()
    );
    assert!(elapsed.as_secs() < 120, "full suite took {elapsed:?}");
}
