//! Individual checks on hand-picked instances, witnesses, and the suite
//! runner's determinism and exit codes.

use hyperquot::io::{FamilyJson, SpaceJson};
use hyperquot::topology::enumerate_topologies;
use hyperquot::verifier::*;
use hyperquot::{Error, Execution, Topology};

fn space(labels: &[&str], opens: &[&[usize]]) -> SpaceJson {
    SpaceJson {
        labels: labels.iter().map(|s| s.to_string()).collect(),
        opens: opens.iter().map(|o| o.to_vec()).collect(),
    }
}

fn discrete2() -> SpaceJson {
    space(&["a", "b"], &[&[], &[0], &[1], &[0, 1]])
}

fn sierpinski() -> SpaceJson {
    space(&["a", "b"], &[&[], &[0], &[0, 1]])
}

fn prepared(space: SpaceJson, y_size: usize, tuples: Option<Vec<Vec<usize>>>) -> Prepared {
    let fj = FamilyJson {
        space,
        y_size,
        all: tuples.is_none(),
        tuples: tuples.unwrap_or_default(),
    };
    Prepared::new(Instance::explicit(&fj).unwrap(), FaultPlan::None).unwrap()
}

fn enumerated(n: usize, id: usize, y: usize) -> Prepared {
    let t = enumerate_topologies(n).unwrap()[id].clone();
    Prepared::new(Instance::enumerated(id, t, y).unwrap(), FaultPlan::None).unwrap()
}

fn assert_replays(r: &CheckResult) {
    let w = r.witness.as_ref().expect("witness");
    let replay = w.replay().unwrap();
    assert!(replay.confirms(), "{r:?}: {replay:?}");
    let back: Witness = serde_json::from_str(&serde_json::to_string(w).unwrap()).unwrap();
    assert_eq!(&back, w);
    assert_eq!(back.replay().unwrap(), replay);
}

#[test]
fn lower_quotient_holds_on_sierpinski_and_fails_on_two_discrete_points() {
    let r = verify_lower_quotient(&prepared(sierpinski(), 2, None)).unwrap();
    assert_eq!(r.status, Status::Verified);
    let r = verify_lower_quotient(&prepared(discrete2(), 2, None)).unwrap();
    assert_eq!(r.status, Status::Counterexample);
    assert_replays(&r);
    assert_eq!(r.exploratory["lower_within_product_quotient"], true);
    assert_eq!(r.exploratory["product_quotient_within_vietoris"], true);
}

#[test]
fn single_tuple_families_miss_the_hypotheses() {
    let p = prepared(discrete2(), 2, Some(vec![vec![0, 1]]));
    for r in [
        verify_lower_quotient(&p).unwrap(),
        verify_lower_strictness(&p).unwrap(),
        verify_upper_quotient(&p).unwrap(),
        verify_finite_y_equality(&p).unwrap(),
    ] {
        assert_eq!(r.status, Status::HypothesisNotMet, "{:?}", r.check);
    }
}

#[test]
fn strictness_is_witnessed_by_a_coordinate_open() {
    let p = prepared(discrete2(), 2, None);
    let r = verify_lower_strictness(&p).unwrap();
    assert_eq!(r.status, Status::StrictnessWitnessed);
    let w = r.witness.as_ref().unwrap();
    assert_eq!(w.detail.as_deref(), Some("[(y=1, O={a})]_p"));
    let Claim::OpenInFirstOnly { set, .. } = &w.claim else { panic!("{w:?}") };
    let expected: Vec<usize> = p
        .instance
        .family
        .tuples()
        .iter()
        .enumerate()
        .filter(|(_, f)| f[0] == 0)
        .map(|(i, _)| i)
        .collect();
    assert_eq!(set, &expected);
    assert_eq!(expected.len(), 2);
    assert_replays(&r);

    assert_eq!(verify_lower_strictness(&enumerated(2, 3, 2)).unwrap().status, Status::StrictnessNotWitnessed);
    assert_eq!(verify_lower_strictness(&prepared(discrete2(), 1, None)).unwrap().status, Status::HypothesisNotMet);
}

#[test]
fn upper_quotient_and_join_hold_on_every_small_instance() {
    for n in 1..=3 {
        for (id, _) in enumerate_topologies(n).unwrap().iter().enumerate() {
            for y in 1..=3 {
                let p = enumerated(n, id, y);
                assert_eq!(verify_upper_quotient(&p).unwrap().status, Status::Verified);
                assert_eq!(verify_vietoris_join(&p).unwrap().status, Status::Verified);
                assert_eq!(verify_saturated_restriction(&p).unwrap().status, Status::Verified);
                assert_eq!(verify_pointwise_image_convergence(&p).unwrap().status, Status::Verified);
            }
        }
    }
}

#[test]
fn finite_y_equality_needs_t1() {
    let r = verify_finite_y_equality(&prepared(discrete2(), 2, None)).unwrap();
    assert_eq!(r.status, Status::Verified);
    let r = verify_finite_y_equality(&prepared(sierpinski(), 2, None)).unwrap();
    assert_eq!(r.status, Status::HypothesisNotMet);
    assert!(!r.exploratory.is_empty());
}

#[test]
fn fsn_restriction_on_three_discrete_points() {
    let p = enumerated(3, 0, 3);
    for n in 1..=3 {
        let r = verify_fsn_restriction(&p, n).unwrap();
        assert_eq!(r.status, Status::Verified, "n = {n}");
        assert_eq!(r.instance.param.as_deref(), Some(format!("n={n}").as_str()));
    }
}

#[test]
fn smallest_lifts_are_verified() {
    let p = enumerated(2, 1, 2);
    for target in [LiftTarget::Vietoris, LiftTarget::Indiscrete, LiftTarget::Lower] {
        let r = verify_smallest_qlift(&p, target, 7, 20).unwrap();
        assert_eq!(r.status, Status::Verified, "{target:?}");
        assert_eq!(r, verify_smallest_qlift(&p, target, 7, 20).unwrap());
    }
}

#[test]
fn cosets_of_normal_subgroups_are_realized() {
    for g in default_groups() {
        let r = verify_coset_realization(&g).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", g.name);
    }
    let r = verify_coset_realization(&GroupSpec::cyclic(6, vec![0, 3])).unwrap();
    assert_eq!(r.exploratory["cosets"], serde_json::json!([[0, 3], [1, 4], [2, 5]]));
}

/// `S_3` as permutations of three letters, composed right to left.
fn s3(subgroup: Vec<usize>) -> GroupSpec {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let table = perms
        .iter()
        .map(|g| perms.iter().map(|h| idx([g[h[0]], g[h[1]], g[h[2]]])).collect())
        .collect();
    GroupSpec { name: "S3".into(), table, subgroup }
}

#[test]
fn non_normal_subgroups_are_rejected() {
    assert!(matches!(verify_coset_realization(&s3(vec![0, 1])), Err(Error::InvalidInput(_))));
    assert_eq!(verify_coset_realization(&s3(vec![0, 3, 4])).unwrap().status, Status::Verified);
    assert!(matches!(verify_coset_realization(&GroupSpec::cyclic(4, vec![0, 1])), Err(Error::InvalidInput(_))));
    let mut bad = GroupSpec::cyclic(3, vec![0]);
    bad.table[1][1] = 0;
    assert!(verify_coset_realization(&bad).is_err());
}

#[test]
fn explicit_families_are_validated() {
    let fj = FamilyJson { space: discrete2(), y_size: 4, tuples: vec![], all: true };
    assert!(Instance::explicit(&fj).is_err());
    let fj = FamilyJson { space: discrete2(), y_size: 2, tuples: vec![vec![0, 2]], all: false };
    assert!(Instance::explicit(&fj).is_err());
    let fj = FamilyJson { space: space(&["a", "b"], &[&[0]]), y_size: 1, tuples: vec![], all: true };
    assert!(Instance::explicit(&fj).is_err());
}

fn small_config() -> SuiteConfig {
    SuiteConfig { max_x: 2, max_y: 2, ..SuiteConfig::default() }
}

#[test]
fn reports_are_deterministic_across_execution_modes() {
    let par = run_suite(&small_config()).unwrap();
    let seq = run_suite(&SuiteConfig { execution: Execution::Sequential, ..small_config() }).unwrap();
    assert_eq!(serde_json::to_string(&par).unwrap(), serde_json::to_string(&seq).unwrap());
    assert_eq!(par, run_suite(&small_config()).unwrap());
    assert!(par.results.iter().all(|r| r.ms == 0));
    let total: usize = Status::ALL.iter().map(|&s| par.summary.count(s)).sum();
    assert_eq!(total, par.results.len());
}

#[test]
fn every_counterexample_replays() {
    let report = run_suite(&SuiteConfig::default()).unwrap();
    let bad: Vec<&CheckResult> = report.with_status(Status::Counterexample).collect();
    assert!(!bad.is_empty());
    for r in bad {
        assert_eq!(r.check, CheckName::LowerQuotient);
        assert_replays(r);
    }
    assert_eq!(report.exit_code(), 1);
}

#[test]
fn check_selection_and_limits() {
    let cfg = SuiteConfig { checks: vec![CheckName::UpperQuotient], ..SuiteConfig::default() };
    let report = run_suite(&cfg).unwrap();
    assert!(report.results.iter().all(|r| r.check == CheckName::UpperQuotient));
    assert_eq!(report.exit_code(), 0);
    let empty = run_suite(&SuiteConfig { max_x: 0, max_y: 0, ..SuiteConfig::default() }).unwrap();
    assert!(empty.results.is_empty());
    assert_eq!(empty.exit_code(), 0);
    for cfg in [
        SuiteConfig { max_x: 4, ..SuiteConfig::default() },
        SuiteConfig { max_y: 4, ..SuiteConfig::default() },
        SuiteConfig { max_x: 6, deep: true, ..SuiteConfig::default() },
    ] {
        assert!(matches!(run_suite(&cfg), Err(Error::InstanceTooLarge(_))));
    }
    assert_eq!("fsn_restriction".parse::<CheckName>().unwrap(), CheckName::FsnRestriction);
    assert!("nope".parse::<CheckName>().is_err());
}

#[test]
fn explicit_families_join_the_suite() {
    let fj = FamilyJson { space: discrete2(), y_size: 2, tuples: vec![vec![0, 1]], all: false };
    let cfg = SuiteConfig { max_x: 0, max_y: 0, explicit: vec![fj], ..SuiteConfig::default() };
    let report = run_suite(&cfg).unwrap();
    assert!(!report.results.is_empty());
    assert!(report.results.iter().all(|r| r.instance.x_topology_id.is_none()));
}

#[test]
fn injected_fault_is_caught_and_refuted_on_replay() {
    let cfg = SuiteConfig {
        max_x: 2,
        max_y: 2,
        checks: vec![CheckName::UpperQuotient],
        fault: FaultPlan::PerturbUpperVietoris,
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg).unwrap();
    assert_eq!(report.exit_code(), 1);
    let r = report.with_status(Status::Counterexample).next().unwrap();
    let replay = r.witness.as_ref().unwrap().replay().unwrap();
    assert_eq!(replay.recorded, Some(true));
    assert!(!replay.recomputed && !replay.confirms());
}

#[test]
fn witness_tampering_is_detected() {
    let r = verify_lower_quotient(&prepared(discrete2(), 2, None)).unwrap();
    let mut w = r.witness.unwrap();
    if let Claim::OpenInFirstOnly { recorded_first, .. } = &mut w.claim {
        let n = recorded_first.len();
        *recorded_first = Topology::indiscrete(n).neighborhood_lists();
    }
    assert_eq!(w.replay().unwrap().recorded, Some(false));
    assert!(!w.replay().unwrap().confirms());
}
