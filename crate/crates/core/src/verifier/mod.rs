//! Named checks of the relations between the function-space and hyperspace
//! topologies, run over enumerated finite instances with hypothesis gating
//! and replayable witnesses.

mod checks;
mod group;
mod suite;
mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperspace::FunctionFamily;
use crate::io::{FamilyJson, SpaceJson};
use crate::topology::{FiniteSpace, Topology};

pub use checks::{
    verify_finite_y_equality, verify_fsn_restriction, verify_lower_quotient, verify_lower_strictness,
    verify_pointwise_image_convergence, verify_saturated_restriction, verify_smallest_qlift,
    verify_upper_quotient, verify_vietoris_join, LiftTarget, Prepared,
};
pub use group::{verify_coset_realization, GroupSpec};
pub use suite::{default_groups, instances, run_suite, FaultPlan, Report, SuiteConfig, Summary};
pub use witness::{Claim, ConvergenceMode, Replay, Witness};

/// Largest `|Y|` on the instance grid.
pub const MAX_Y: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Counterexample,
    HypothesisNotMet,
    StrictnessWitnessed,
    StrictnessNotWitnessed,
}

impl Status {
    pub const ALL: [Status; 5] = [
        Status::Verified,
        Status::Counterexample,
        Status::HypothesisNotMet,
        Status::StrictnessWitnessed,
        Status::StrictnessNotWitnessed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Counterexample => "counterexample",
            Status::HypothesisNotMet => "hypothesis-not-met",
            Status::StrictnessWitnessed => "strictness-witnessed",
            Status::StrictnessNotWitnessed => "strictness-not-witnessed",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    LowerQuotient,
    LowerStrictness,
    UpperQuotient,
    VietorisJoin,
    FiniteYEquality,
    SaturatedRestriction,
    FsnRestriction,
    SmallestQlift,
    PointwiseImageConvergence,
    CosetRealization,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::LowerQuotient,
        CheckName::LowerStrictness,
        CheckName::UpperQuotient,
        CheckName::VietorisJoin,
        CheckName::FiniteYEquality,
        CheckName::SaturatedRestriction,
        CheckName::FsnRestriction,
        CheckName::SmallestQlift,
        CheckName::PointwiseImageConvergence,
        CheckName::CosetRealization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckName::LowerQuotient => "lower_quotient",
            CheckName::LowerStrictness => "lower_strictness",
            CheckName::UpperQuotient => "upper_quotient",
            CheckName::VietorisJoin => "vietoris_join",
            CheckName::FiniteYEquality => "finite_y_equality",
            CheckName::SaturatedRestriction => "saturated_restriction",
            CheckName::FsnRestriction => "fsn_restriction",
            CheckName::SmallestQlift => "smallest_qlift",
            CheckName::PointwiseImageConvergence => "pointwise_image_convergence",
            CheckName::CosetRealization => "coset_realization",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckName> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySpec {
    All,
    Tuples(Vec<Vec<usize>>),
}

/// Identifies one instance: a topology on `X` (by index in the canonical
/// enumeration, or given explicitly), `|Y|`, and the family `F ⊂ X^Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub x_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_topology_id: Option<usize>,
    pub y_size: usize,
    pub family: FamilySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceJson>,
}

impl InstanceSpec {
    pub fn with_param(&self, param: impl Into<String>) -> InstanceSpec {
        InstanceSpec {
            param: Some(param.into()),
            ..self.clone()
        }
    }
}

/// A resolved instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub family: FunctionFamily,
}

impl Instance {
    /// `F = X^Y` over topology number `id` of the canonical enumeration.
    pub fn enumerated(id: usize, topology: Topology, y_size: usize) -> Result<Instance> {
        check_y(y_size)?;
        let x_size = topology.size();
        let family = FunctionFamily::all(FiniteSpace::with_default_labels(topology), y_size)?;
        Ok(Instance {
            spec: InstanceSpec {
                x_size,
                x_topology_id: Some(id),
                y_size,
                family: FamilySpec::All,
                param: None,
                space: None,
            },
            family,
        })
    }

    /// An explicitly given family, as used for probes and witnesses.
    pub fn explicit(fj: &FamilyJson) -> Result<Instance> {
        check_y(fj.y_size)?;
        let family = fj.to_family()?;
        let spec = InstanceSpec {
            x_size: family.space().size(),
            x_topology_id: None,
            y_size: fj.y_size,
            family: if fj.all {
                FamilySpec::All
            } else {
                FamilySpec::Tuples(family.tuples().to_vec())
            },
            param: None,
            space: Some(fj.space.clone()),
        };
        Ok(Instance { spec, family })
    }

    /// The family in replayable form.
    pub fn family_json(&self) -> Result<FamilyJson> {
        family_json(&self.family, self.spec.family == FamilySpec::All)
    }
}

pub(crate) fn family_json(fam: &FunctionFamily, all: bool) -> Result<FamilyJson> {
    Ok(FamilyJson {
        space: SpaceJson::from_space(fam.space())?,
        y_size: fam.y_size(),
        tuples: if all { Vec::new() } else { fam.tuples().to_vec() },
        all,
    })
}

fn check_y(y_size: usize) -> Result<()> {
    if y_size == 0 || y_size > MAX_Y {
        return Err(Error::InstanceTooLarge(format!("|Y| = {y_size} outside 1..={MAX_Y}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: CheckName,
    pub instance: InstanceSpec,
    pub status: Status,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub exploratory: BTreeMap<String, serde_json::Value>,
    pub ms: u64,
}

impl CheckResult {
    pub(crate) fn new(check: CheckName, instance: InstanceSpec, status: Status) -> CheckResult {
        CheckResult {
            check,
            instance,
            status,
            witness: None,
            exploratory: BTreeMap::new(),
            ms: 0,
        }
    }

    pub(crate) fn note(mut self, key: &str, value: impl Into<serde_json::Value>) -> CheckResult {
        self.exploratory.insert(key.to_string(), value.into());
        self
    }

    pub(crate) fn with_witness(mut self, w: Witness) -> CheckResult {
        self.witness = Some(w);
        self
    }
}
