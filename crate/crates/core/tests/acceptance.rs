//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to
//! see the lines; the test fails if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use hyperquot::metric::{hausdorff_agreement_sweep, OpenFamily, TOLERANCE};
use hyperquot::topology::{enumerate_topologies, topology_count};
use hyperquot::verifier::*;
use hyperquot::Execution;

const SWEEP_BUDGET: Duration = Duration::from_secs(10);
const ENUMERATION_BUDGET: Duration = Duration::from_secs(300);

#[derive(Default)]
struct Board {
    failed: Vec<usize>,
}

impl Board {
    fn record(&mut self, n: usize, ok: bool, what: impl AsRef<str>) {
        println!("{} criterion {n}: {}", if ok { "PASS" } else { "FAIL" }, what.as_ref());
        if !ok {
            self.failed.push(n);
        }
    }
}

/// `F = X^Y` over every topology with `|X|, |Y| ≤ 3`, restricted to `checks`.
fn grid(checks: &[CheckName]) -> (Report, Duration) {
    let cfg = SuiteConfig { checks: checks.to_vec(), groups: false, ..SuiteConfig::default() };
    let start = Instant::now();
    let report = run_suite(&cfg).expect("grid sweep");
    (report, start.elapsed())
}

fn counts(r: &Report) -> String {
    Status::ALL
        .iter()
        .filter(|&&s| r.summary.count(s) > 0)
        .map(|&s| format!("{s}={}", r.summary.count(s)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn all_verified(r: &Report) -> bool {
    !r.results.is_empty() && r.results.iter().all(|c| c.status == Status::Verified)
}

fn discrete_instance(n: usize, y: usize) -> Prepared {
    let t = enumerate_topologies(n).unwrap()[0].clone();
    assert!(t.is_discrete());
    Prepared::new(Instance::enumerated(0, t, y).unwrap(), FaultPlan::None).unwrap()
}

#[test]
fn acceptance() {
    let mut b = Board::default();
    let spaces: usize = (1..=3).map(|n| topology_count(n).unwrap()).sum();

    let (r, t) = grid(&[CheckName::LowerQuotient]);
    let replayed = r.with_status(Status::Counterexample).all(|c| c.witness.as_ref().unwrap().replay().unwrap().confirms());
    b.record(
        1,
        spaces == 34 && r.results.len() == 102 && all_verified(&r) && t < SWEEP_BUDGET,
        format!("product quotient equals lower Vietoris on {} instances: {}, counterexamples replay: {replayed}, {t:.2?}", r.results.len(), counts(&r)),
    );
    if let Some(c) = r.with_status(Status::Counterexample).next() {
        println!("      first counterexample: |X|={} id={:?} |Y|={}", c.instance.x_size, c.instance.x_topology_id, c.instance.y_size);
    }

    let (r, t) = grid(&[CheckName::UpperQuotient]);
    b.record(2, r.results.len() == 102 && all_verified(&r) && t < SWEEP_BUDGET, format!("upper quotient on {} instances: {}, {t:.2?}", r.results.len(), counts(&r)));

    let (r, t) = grid(&[CheckName::VietorisJoin]);
    b.record(3, r.results.len() == 102 && all_verified(&r) && t < SWEEP_BUDGET, format!("Vietoris as a join on {} instances: {}, {t:.2?}", r.results.len(), counts(&r)));

    let statuses: Vec<Status> = (1..=3)
        .flat_map(|n| (1..=3).map(move |y| verify_finite_y_equality(&discrete_instance(n, y)).unwrap().status))
        .collect();
    b.record(4, statuses.iter().all(|&s| s == Status::Verified), format!("finite index equality on 9 discrete instances: {statuses:?}"));

    let mut witnessed = 0;
    let mut cases = 0;
    for n in 2usize..=4 {
        for y in (2..=3).filter(|&y| n.pow(y as u32) <= 64) {
            cases += 1;
            let r = verify_lower_strictness(&discrete_instance(n, y)).unwrap();
            let ok = r.status == Status::StrictnessWitnessed
                && r.witness.as_ref().is_some_and(|w| w.replay().unwrap().confirms());
            if ok {
                witnessed += 1;
                if (n, y) == (2, 2) {
                    println!("      witness for |X|=2 |Y|=2: {}", r.witness.as_ref().unwrap().detail.as_deref().unwrap_or(""));
                }
            }
        }
    }
    b.record(5, witnessed == cases, format!("strictness witnessed and replayed on {witnessed}/{cases} discrete instances"));

    let sweep = hausdorff_agreement_sweep(0x5eed, 1000, 64, Execution::Parallel);
    let axioms = dh_axioms(&metric_spaces(6, 11));
    b.record(
        6,
        sweep.triples == 1000 && sweep.disagreements.is_empty() && sweep.max_spread <= TOLERANCE && axioms.violations == 0,
        format!(
            "{} triples, max spread {:e}, {} disagreements; {} axiom checks, {} violations",
            sweep.triples, sweep.max_spread, sweep.disagreements.len(), axioms.checked, axioms.violations
        ),
    );

    let dq = dq_pseudometric(3, 2);
    b.record(7, dq.violations == 0, format!("{} pseudometric checks, {} violations", dq.checked, dq.violations));

    let spaces4 = metric_spaces(4, 5);
    let gen = convergence_coherence(&spaces4, OpenFamily::Generated);
    let balls = convergence_coherence(&spaces4, OpenFamily::Balls);
    b.record(8, gen.checked > 0 && gen.violations == 0, format!("{} sequences, {} violations", gen.checked, gen.violations));
    println!("      with bare balls instead of the opens they generate: {} violations", balls.violations);

    let expect: [(Vec<usize>, Vec<Vec<usize>>); 3] = [
        (vec![0, 2, 4], vec![vec![0, 2, 4], vec![1, 3, 5]]),
        (vec![0, 1, 2, 3, 4, 5], vec![vec![0, 1, 2, 3, 4, 5]]),
        (vec![0], (0..6).map(|g| vec![g]).collect()),
    ];
    let cosets_ok = expect.iter().all(|(h, cosets)| {
        let r = verify_coset_realization(&GroupSpec::cyclic(6, h.clone())).unwrap();
        r.status == Status::Verified && r.exploratory["cosets"] == serde_json::json!(cosets)
    });
    b.record(9, cosets_ok, "cosets of {0,2,4}, of the whole group and of the identity in Z6");

    let start = Instant::now();
    let mut found = Vec::new();
    let mut agree = true;
    for n in 1..=4 {
        let oracle = brute_force_topologies(n);
        let listed: BTreeSet<Vec<u64>> = enumerate_topologies(n).unwrap().iter().map(as_opens).collect();
        agree &= listed == oracle;
        found.push(oracle.len());
    }
    let t = start.elapsed();
    b.record(10, agree && found == [1, 4, 29, 355] && t < ENUMERATION_BUDGET, format!("counts {found:?} match the brute force, {t:.2?}"));

    let (r, t) = grid(&[CheckName::SaturatedRestriction, CheckName::FsnRestriction]);
    let clean = r.summary.count(Status::Counterexample) == 0
        && r.results.iter().filter(|c| c.check == CheckName::SaturatedRestriction).all(|c| c.status == Status::Verified)
        && r.summary.count(Status::Verified) > 0;
    b.record(11, clean && t < SWEEP_BUDGET, format!("restriction checks on {} cases: {}, {t:.2?}", r.results.len(), counts(&r)));

    let cfg = SuiteConfig { checks: vec![CheckName::UpperQuotient], ..SuiteConfig::default() };
    let baseline = run_suite(&cfg).unwrap().exit_code();
    let faulty = run_suite(&SuiteConfig { fault: FaultPlan::PerturbUpperVietoris, ..cfg }).unwrap();
    let replay = faulty
        .with_status(Status::Counterexample)
        .next()
        .and_then(|c| c.witness.as_ref())
        .map(|w| w.replay().unwrap());
    b.record(
        12,
        baseline == 0 && faulty.exit_code() == 1 && replay.is_some_and(|r| r.recorded == Some(true) && !r.recomputed),
        format!("exit {baseline} without the fault, {} with it; replay {replay:?}", faulty.exit_code()),
    );

    assert!(b.failed.is_empty(), "failed criteria: {:?}", b.failed);
}
