use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::io::FamilyJson;
use crate::topology::{enumerate_topologies, sample_topologies, Topology, MAX_EXHAUSTIVE, MAX_SAMPLED};

use super::checks::*;
use super::group::{verify_coset_realization, GroupSpec};
use super::{CheckName, CheckResult, Instance, Status, MAX_Y};

/// A deliberate defect for exercising the failure path of the suite.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultPlan {
    #[default]
    None,
    /// Replaces `τ_v⁺` by the discrete topology inside the upper-quotient
    /// comparison only.
    #[cfg(feature = "fault-injection")]
    PerturbUpperVietoris,
}

impl FaultPlan {
    pub fn is_none(&self) -> bool {
        *self == FaultPlan::None
    }

    pub(crate) fn upper(&self, t: &Topology) -> Topology {
        match self {
            FaultPlan::None => t.clone(),
            #[cfg(feature = "fault-injection")]
            FaultPlan::PerturbUpperVietoris => Topology::discrete(t.size()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub max_x: usize,
    pub max_y: usize,
    pub seed: u64,
    /// Required for `max_x ≥ 4`.
    #[serde(default)]
    pub deep: bool,
    /// Topologies drawn on 5 points when `max_x = 5`.
    pub sample_x5: usize,
    /// Candidate lifts of each kind per smallest-q-lift check.
    pub lift_samples: usize,
    /// Restricts the suite to these checks; empty means all.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckName>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub explicit: Vec<FamilyJson>,
    /// Adds the coset cases for `Z_6` when the grid is nonempty.
    pub groups: bool,
    /// Records wall-clock milliseconds; off keeps reports reproducible.
    #[serde(default)]
    pub timings: bool,
    #[serde(skip)]
    pub execution: Execution,
    #[serde(default, skip_serializing_if = "FaultPlan::is_none")]
    pub fault: FaultPlan,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            max_x: 3,
            max_y: 3,
            seed: 0,
            deep: false,
            sample_x5: 16,
            lift_samples: 20,
            checks: Vec::new(),
            explicit: Vec::new(),
            groups: true,
            timings: false,
            execution: Execution::default(),
            fault: FaultPlan::None,
        }
    }
}

impl SuiteConfig {
    fn wants(&self, c: CheckName) -> bool {
        self.checks.is_empty() || self.checks.contains(&c)
    }

    fn validate(&self) -> Result<()> {
        if self.max_y > MAX_Y {
            return Err(Error::InstanceTooLarge(format!("max_y {} exceeds {MAX_Y}", self.max_y)));
        }
        if self.max_x > MAX_SAMPLED {
            return Err(Error::InstanceTooLarge(format!("max_x {} exceeds {MAX_SAMPLED}", self.max_x)));
        }
        if self.max_x >= MAX_EXHAUSTIVE && !self.deep {
            return Err(Error::InstanceTooLarge(format!(
                "max_x {} needs the deep sweep to be enabled",
                self.max_x
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Summary {
    pub verified: usize,
    pub counterexample: usize,
    pub hypothesis_not_met: usize,
    pub strictness_witnessed: usize,
    pub strictness_not_witnessed: usize,
}

impl Summary {
    pub fn count(&self, s: Status) -> usize {
        match s {
            Status::Verified => self.verified,
            Status::Counterexample => self.counterexample,
            Status::HypothesisNotMet => self.hypothesis_not_met,
            Status::StrictnessWitnessed => self.strictness_witnessed,
            Status::StrictnessNotWitnessed => self.strictness_not_witnessed,
        }
    }

    fn add(&mut self, s: Status) {
        *match s {
            Status::Verified => &mut self.verified,
            Status::Counterexample => &mut self.counterexample,
            Status::HypothesisNotMet => &mut self.hypothesis_not_met,
            Status::StrictnessWitnessed => &mut self.strictness_witnessed,
            Status::StrictnessNotWitnessed => &mut self.strictness_not_witnessed,
        } += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: SuiteConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    /// 1 if any check produced a counterexample.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.counterexample > 0)
    }

    pub fn with_status(&self, s: Status) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(move |r| r.status == s)
    }
}

fn timed(timings: bool, f: impl FnOnce() -> Result<CheckResult>) -> Result<CheckResult> {
    let start = Instant::now();
    let mut r = f()?;
    r.ms = if timings { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(r)
}

fn mix(seed: u64, ordinal: usize, salt: usize) -> u64 {
    seed ^ (ordinal as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (salt as u64).rotate_left(32)
}

type Check = fn(&Prepared) -> Result<CheckResult>;

fn run_instance(cfg: &SuiteConfig, ordinal: usize, inst: &Instance) -> Result<Vec<CheckResult>> {
    let p = Prepared::new(inst.clone(), cfg.fault)?;
    let t = cfg.timings;
    let mut out = Vec::new();
    let single: [(CheckName, Check); 6] = [
        (CheckName::LowerQuotient, verify_lower_quotient),
        (CheckName::LowerStrictness, verify_lower_strictness),
        (CheckName::UpperQuotient, verify_upper_quotient),
        (CheckName::VietorisJoin, verify_vietoris_join),
        (CheckName::FiniteYEquality, verify_finite_y_equality),
        (CheckName::SaturatedRestriction, verify_saturated_restriction),
    ];
    for (name, check) in single {
        if cfg.wants(name) {
            out.push(timed(t, || check(&p))?);
        }
    }
    if cfg.wants(CheckName::FsnRestriction) {
        for n in 1..=inst.family.space().size() {
            out.push(timed(t, || verify_fsn_restriction(&p, n))?);
        }
    }
    if cfg.wants(CheckName::SmallestQlift) {
        for (salt, target) in LiftTarget::ALL.into_iter().enumerate() {
            let seed = mix(cfg.seed, ordinal, salt);
            out.push(timed(t, || verify_smallest_qlift(&p, target, seed, cfg.lift_samples))?);
        }
    }
    if cfg.wants(CheckName::PointwiseImageConvergence) {
        out.push(timed(t, || verify_pointwise_image_convergence(&p))?);
    }
    Ok(out)
}

/// The coset cases: `Z_6` with `H = {0,2,4}`, `H = G` and `H = {e}`.
pub fn default_groups() -> Vec<GroupSpec> {
    vec![
        GroupSpec::cyclic(6, vec![0, 2, 4]),
        GroupSpec::cyclic(6, (0..6).collect()),
        GroupSpec::cyclic(6, vec![0]),
    ]
}

/// The instance grid: every topology on `1..=max_x` points (sampled on 5)
/// with `F = X^Y` for `1..=max_y`, skipping `|X|^|Y| > 64`, then the
/// explicit families.
pub fn instances(cfg: &SuiteConfig) -> Result<Vec<Instance>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for x in 1..=cfg.max_x {
        let (tops, sampled) = if x <= MAX_EXHAUSTIVE {
            (enumerate_topologies(x)?, false)
        } else {
            (sample_topologies(x, cfg.sample_x5, cfg.seed)?, true)
        };
        for (id, t) in tops.into_iter().enumerate() {
            for y in 1..=cfg.max_y {
                if x.pow(y as u32) > crate::mask::MAX_CARRIER {
                    continue;
                }
                let mut inst = Instance::enumerated(id, t.clone(), y)?;
                if sampled {
                    inst.spec.param = Some("sampled".into());
                }
                out.push(inst);
            }
        }
    }
    for fj in &cfg.explicit {
        out.push(Instance::explicit(fj)?);
    }
    Ok(out)
}

/// Runs every selected check over the grid. Instances are processed in
/// parallel under [`Execution::Parallel`]; results keep grid order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let insts = instances(cfg)?;
    let indexed: Vec<(usize, &Instance)> = insts.iter().enumerate().collect();
    let per_instance = cfg.execution.map(&indexed, |&(i, inst)| run_instance(cfg, i, inst));
    let mut results = Vec::new();
    for r in per_instance {
        results.extend(r?);
    }
    if cfg.groups && cfg.max_x > 0 && cfg.max_y > 0 && cfg.wants(CheckName::CosetRealization) {
        for g in default_groups() {
            results.push(timed(cfg.timings, || verify_coset_realization(&g))?);
        }
    }
    let mut summary = Summary::default();
    for r in &results {
        summary.add(r.status);
    }
    Ok(Report {
        config: cfg.clone(),
        results,
        summary,
    })
}
