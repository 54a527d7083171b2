//! Integration tests for the three-party disclosure protocol: truthful
//! runs on the reference figures, exhaustive and sampled truthfulness
//! audits, the corrupted-court negative control, and the revelation
//! wrapper.

mod common;

use std::sync::Arc;

use common::grid_figure;
use ediscovery::dataset::{IndexSet, LabeledDataset};
use ediscovery::mlpipeline::generate_separable;
use ediscovery::protocol::{
    audit_protocol, audit_truthfulness, revelation_wrap, run_cpp, run_cpp_with, AliceStrategy,
    AliceWins, AuditMode, BaseProtocol, ExactBackend, ProtocolError, ScriptFn, ViolationKind,
};
use ediscovery::separability::critical_points;

/// Two positives on the right, three negatives on the left; the inner
/// negatives (1,1) and (2,0) are critical, (0,0) is shielded.
fn small_universe() -> LabeledDataset {
    LabeledDataset::parse(
        &[
            &["5", "0"],
            &["6", "1"],
            &["0", "0"],
            &["1", "1"],
            &["2", "0"],
        ],
        &[1, 1, -1, -1, -1],
    )
    .unwrap()
}

#[test]
fn truthful_grid_run_discloses_the_seven_circled_points() {
    let s = grid_figure();
    let transcript = run_cpp(&s, &AliceStrategy::Truthful).unwrap();
    assert_eq!(
        transcript.disclosed,
        IndexSet::from_iter([3, 5, 6, 7, 8, 9, 10])
    );
    assert!(!transcript.aborted_to_full_disclosure);
    assert!(transcript.disputes.is_empty());
    // Trent asked Bob to hand-label the report plus its critical points.
    let sent = transcript.labeling_request().unwrap();
    let expected = s.positives().union(&critical_points(&s, &s.positives()).unwrap());
    assert_eq!(sent, &expected);
}

#[test]
fn hiding_a_positive_on_the_grid_forces_full_disclosure() {
    // Every 3-positive sub-report of the grid figure is inseparable from
    // its complement, so a hiding Alice is caught immediately.
    let s = grid_figure();
    let transcript = run_cpp(&s, &AliceStrategy::HidePositives(1)).unwrap();
    assert!(transcript.aborted_to_full_disclosure);
    assert_eq!(transcript.disclosed, IndexSet::full(s.len()));
}

#[test]
fn hiding_a_positive_on_the_small_universe_is_disputed_and_disclosed() {
    let s = small_universe();
    let transcript = run_cpp(&s, &AliceStrategy::HidePositives(1)).unwrap();
    // Index 1 was withheld, hand-labeling caught it, and the court made
    // the label stick; disclosure still covers the mandatory set.
    assert_eq!(transcript.disputes.len(), 1);
    assert_eq!(transcript.disputes[0].index, 1);
    let mandatory = s
        .positives()
        .union(&critical_points(&s, &s.positives()).unwrap());
    assert!(mandatory.is_subset(&transcript.disclosed));
}

#[test]
fn exhaustive_grid_audit_is_clean() {
    let s = grid_figure();
    let report = audit_truthfulness(&s, AuditMode::Exhaustive).unwrap();
    assert_eq!(report.total_runs, 1 << s.len());
    assert!(report.violations.is_empty(), "{:?}", report.violations);
    assert_eq!(
        report.truthful_disclosed,
        IndexSet::from_iter([3, 5, 6, 7, 8, 9, 10])
    );
    assert_eq!(report.mandatory, report.truthful_disclosed);
}

#[test]
fn exhaustive_audits_of_random_instances_are_clean() {
    for seed in 0..5u64 {
        let s = generate_separable(4000 + seed, 8, 2, 0.2).unwrap();
        let report = audit_truthfulness(&s, AuditMode::Exhaustive).unwrap();
        assert_eq!(report.total_runs, 256);
        assert!(
            report.violations.is_empty(),
            "seed {seed}: {:?}",
            report.violations
        );
    }
}

#[test]
fn sampled_audits_are_reproducible_and_clean() {
    let s = grid_figure();
    let mode = AuditMode::Sampled {
        seed: 9,
        trials: 64,
    };
    let first = audit_truthfulness(&s, mode).unwrap();
    let second = audit_truthfulness(&s, mode).unwrap();
    assert_eq!(first, second);
    assert_eq!(first.total_runs, 64);
    assert!(first.violations.is_empty());
}

#[test]
fn exhaustive_audits_refuse_oversized_datasets() {
    let s = generate_separable(4242, 13, 2, 0.2).unwrap();
    assert!(matches!(
        audit_truthfulness(&s, AuditMode::Exhaustive),
        Err(ProtocolError::TooLargeForExhaustive { len: 13, max: 12 })
    ));
}

#[test]
fn corrupted_court_fails_the_audit() {
    // With a court that always sides with Alice, underreporting survives
    // hand-labeling and the mandatory-disclosure promise breaks.
    let s = small_universe();
    let report = audit_protocol(&s, AuditMode::Exhaustive, |ds, rep| {
        run_cpp_with(
            ds,
            &AliceStrategy::FixedReport(rep.clone()),
            &AliceWins,
            &ExactBackend,
        )
    })
    .unwrap();
    assert!(!report.violations.is_empty());
    assert!(report.violations.iter().any(|v| matches!(
        &v.kind,
        ViolationKind::MissingMandatory { missing } if !missing.is_empty()
    )));
}

fn cpp_base() -> BaseProtocol {
    Arc::new(|ds: &LabeledDataset, rep: &IndexSet| {
        run_cpp(ds, &AliceStrategy::FixedReport(rep.clone()))
    })
}

#[test]
fn revelation_wrapper_preserves_truthful_runs() {
    let s = grid_figure();
    let identity: ScriptFn = Arc::new(|r: &IndexSet| r.clone());
    let wrapped = revelation_wrap(cpp_base(), identity);
    let direct = wrapped.run(&s, &s.positives()).unwrap();
    let base = run_cpp(&s, &AliceStrategy::Truthful).unwrap();
    assert_eq!(direct, base);
}

#[test]
fn revelation_wrapper_discloses_everything_on_a_false_report() {
    // A report that omits a true positive diverges the moment the
    // simulated hand-labeling disagrees with reality.
    let s = small_universe();
    let identity: ScriptFn = Arc::new(|r: &IndexSet| r.clone());
    let wrapped = revelation_wrap(cpp_base(), identity);
    let transcript = wrapped.run(&s, &IndexSet::from_iter([0])).unwrap();
    assert!(transcript.aborted_to_full_disclosure);
    assert_eq!(transcript.disclosed, IndexSet::full(s.len()));
}

#[test]
fn revelation_wrapper_replays_a_hiding_script_against_the_truth() {
    // Wrapping a hiding strategy does not hide anything: on a truthful
    // report the claimed world is the real world, so the wrapper simply
    // runs the base protocol on the hiding message and Bob's hand-labels
    // pull the withheld positive back in via a dispute.
    let s = small_universe();
    let drop_largest: ScriptFn = Arc::new(|r: &IndexSet| {
        let mut out = r.clone();
        if let Some(&last) = r.to_vec().last() {
            out.remove(last);
        }
        out
    });
    let wrapped = revelation_wrap(cpp_base(), drop_largest);
    let transcript = wrapped.run(&s, &s.positives()).unwrap();
    assert!(!transcript.aborted_to_full_disclosure);
    assert_eq!(transcript.disputes.len(), 1);
    assert_eq!(transcript.disputes[0].index, 1);
    let mandatory = s
        .positives()
        .union(&critical_points(&s, &s.positives()).unwrap());
    assert!(mandatory.is_subset(&transcript.disclosed));
}

#[test]
fn revelation_wrapped_protocol_passes_the_exhaustive_audit() {
    // Wrapping the base-optimal strategy (truthful reporting) yields a
    // truthful direct protocol: no report beats the truth.
    for s in [small_universe(), grid_figure()] {
        let identity: ScriptFn = Arc::new(|r: &IndexSet| r.clone());
        let wrapped = revelation_wrap(cpp_base(), identity);
        let report =
            audit_protocol(&s, AuditMode::Exhaustive, |ds, rep| wrapped.run(ds, rep)).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        // False reports collapse to full disclosure instead of leaking
        // less than the truth.
        assert!(report.full_disclosure_runs > 0);
    }
}

#[test]
fn invalid_reports_are_rejected() {
    let s = small_universe();
    let report = IndexSet::from_iter([0, 9]);
    assert!(matches!(
        run_cpp(&s, &AliceStrategy::FixedReport(report)),
        Err(ProtocolError::InvalidReport { index: 9, len: 5 })
    ));
}

#[test]
fn transcripts_serialize_with_stable_field_names() {
    let s = small_universe();
    let transcript = run_cpp(&s, &AliceStrategy::Truthful).unwrap();
    let json = transcript.to_json();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(value["messages"].is_array());
    assert!(value["disclosed"].is_array());
    assert!(value["full_disclosure"].is_boolean());
    assert_eq!(value["messages"][0]["from"], "alice");
    assert_eq!(value["messages"][0]["type"], "full_dataset");
    assert_eq!(value["messages"][1]["type"], "report");
}
