use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hyperspace::{centrally_converges, marginally_converges, FunctionFamily, SubsetSequence, TopologyExpr};
use crate::io::FamilyJson;
use crate::mask::Mask;
use crate::topology::{EventualSequence, Topology};

use super::group::{cosets, realized_cosets, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergenceMode {
    Central,
    Marginal,
}

/// A claim about concrete data, checkable with the topology and hyperspace
/// primitives alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Claim {
    /// `set` is open in `first` but not in `second`. The neighbourhood
    /// arrays the verifier compared are recorded alongside the recipes.
    OpenInFirstOnly {
        first: TopologyExpr,
        second: TopologyExpr,
        set: Vec<usize>,
        recorded_first: Vec<Vec<usize>>,
        recorded_second: Vec<Vec<usize>>,
    },
    /// The eventually cyclic sequence does not converge to `limit`.
    NotConvergent {
        topology: TopologyExpr,
        cycle: Vec<usize>,
        limit: usize,
        recorded: Vec<Vec<usize>>,
    },
    /// The subset sequence of `X` does not converge to `limit` in the given
    /// mode.
    ImageNotConvergent {
        mode: ConvergenceMode,
        cycle: Vec<Vec<usize>>,
        limit: Vec<usize>,
    },
    /// The image sets of the translation family differ from the cosets.
    CosetMismatch {
        group: GroupSpec,
        realized: Vec<Vec<usize>>,
        expected: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub claim: Claim,
}

/// Outcome of re-evaluating a witness. `recorded` evaluates the claim on
/// the recorded topologies, `recomputed` rebuilds everything from the
/// family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Replay {
    pub recorded: Option<bool>,
    pub recomputed: bool,
}

impl Replay {
    pub fn confirms(&self) -> bool {
        self.recomputed && self.recorded != Some(false)
    }
}

fn mask(ix: &[usize]) -> Mask {
    Mask::from_indices(ix.iter().copied())
}

fn sorted_sets(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = sets.iter().map(|s| mask(s).to_indices()).collect();
    out.sort_by_key(|s| mask(s));
    out
}

impl Witness {
    pub fn replay(&self) -> Result<Replay> {
        let family = || -> Result<FunctionFamily> {
            match &self.family {
                Some(fj) => fj.to_family(),
                None => invalid("witness carries no family"),
            }
        };
        match &self.claim {
            Claim::OpenInFirstOnly {
                first,
                second,
                set,
                recorded_first,
                recorded_second,
            } => {
                let s = mask(set);
                let holds = |a: &Topology, b: &Topology| -> Result<bool> {
                    if !s.fits(a.size()) || !s.fits(b.size()) {
                        return invalid("witness set exceeds the carrier");
                    }
                    Ok(a.is_open(s) && !b.is_open(s))
                };
                let rec = holds(
                    &Topology::from_neighborhood_lists(recorded_first)?,
                    &Topology::from_neighborhood_lists(recorded_second)?,
                )?;
                let fam = family()?;
                let re = holds(&first.evaluate(&fam)?, &second.evaluate(&fam)?)?;
                Ok(Replay {
                    recorded: Some(rec),
                    recomputed: re,
                })
            }
            Claim::NotConvergent {
                topology,
                cycle,
                limit,
                recorded,
            } => {
                let seq = EventualSequence::new(Vec::new(), cycle.clone())?;
                let rec = !Topology::from_neighborhood_lists(recorded)?.converges(&seq, *limit)?;
                let re = !topology.evaluate(&family()?)?.converges(&seq, *limit)?;
                Ok(Replay {
                    recorded: Some(rec),
                    recomputed: re,
                })
            }
            Claim::ImageNotConvergent { mode, cycle, limit } => {
                let fam = family()?;
                let seq = SubsetSequence::new(Vec::new(), cycle.iter().map(|c| mask(c)).collect())?;
                let t = fam.space().topology();
                let conv = match mode {
                    ConvergenceMode::Central => centrally_converges(t, &seq, mask(limit))?,
                    ConvergenceMode::Marginal => marginally_converges(t, &seq, mask(limit))?,
                };
                Ok(Replay {
                    recorded: None,
                    recomputed: !conv,
                })
            }
            Claim::CosetMismatch {
                group,
                realized,
                expected,
            } => {
                let rec = sorted_sets(realized) != sorted_sets(expected);
                let re = realized_cosets(group)? != cosets(group)?;
                Ok(Replay {
                    recorded: Some(rec),
                    recomputed: re,
                })
            }
        }
    }
}
