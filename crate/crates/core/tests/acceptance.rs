//! Acceptance suite: runs the audit engine once and checks each criterion,
//! printing one pass/fail line per criterion. `injcolor audit` renders the
//! same report from the command line.

use std::sync::OnceLock;

use injcolor::audit::{run_audit, AuditReport};

fn report() -> &'static AuditReport {
    static REPORT: OnceLock<AuditReport> = OnceLock::new();
    REPORT.get_or_init(run_audit)
}

fn check(name: &str) {
    let report = report();
    let criterion = report
        .criteria
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("no criterion named {name:?}"));
    println!(
        "{}  {}",
        if criterion.passed { "PASS" } else { "FAIL" },
        criterion.name
    );
    for d in &criterion.details {
        println!("      {d}");
    }
    assert!(criterion.passed, "criterion {name:?} failed: {:?}", criterion.details);
}

#[test]
fn small_instance_exact_values() {
    check("small-instance exact values");
}

#[test]
fn corpus_colorings_stay_within_13_colors() {
    check("corpus colorings stay within 13 colors");
}

#[test]
fn reduction_stage_coverage() {
    check("reduction stage coverage");
}

#[test]
fn conflict_model_invariant_fuzzing() {
    check("conflict-model invariant fuzzing");
}

#[test]
fn solver_agreement_with_brute_force() {
    check("solver agreement with brute force");
}

#[test]
fn exact_index_bounded_by_constructive_colors() {
    check("exact index bounded by constructive colors");
}

#[test]
fn claw_free_subcubic_bound_of_six() {
    check("claw-free subcubic bound of six");
}

#[test]
fn deterministic_audit_report() {
    check("deterministic audit report");
}

#[test]
fn full_report_renders_with_summary() {
    let rendered = report().render();
    assert!(rendered.contains("RESULT:"));
    assert!(rendered.contains("criteria passed"));
}
