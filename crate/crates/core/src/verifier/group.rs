use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hyperspace::FunctionFamily;
use crate::mask::{Mask, MAX_CARRIER};
use crate::topology::{FiniteSpace, Topology};

use super::{family_json, CheckName, CheckResult, Claim, FamilySpec, InstanceSpec, Status, Witness};

/// A finite group as a Cayley table (`table[g][h] = g·h`) with a subgroup
/// given by its elements; the order of `subgroup` fixes the index set `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub table: Vec<Vec<usize>>,
    pub subgroup: Vec<usize>,
}

impl GroupSpec {
    /// `Z_n` under addition.
    pub fn cyclic(n: usize, subgroup: Vec<usize>) -> GroupSpec {
        GroupSpec {
            name: format!("Z{n}"),
            table: (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect(),
            subgroup,
        }
    }

    fn order(&self) -> usize {
        self.table.len()
    }

    fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    /// Checks the group axioms and that `subgroup` is a normal subgroup;
    /// returns the identity and the inverse table.
    fn validate(&self) -> Result<(usize, Vec<usize>)> {
        let n = self.order();
        if n == 0 || n > MAX_CARRIER {
            return invalid(format!("group order {n} outside 1..={MAX_CARRIER}"));
        }
        if self.table.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
            return invalid("Cayley table must be square with entries below the order");
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return invalid("Cayley table is not associative");
                    }
                }
            }
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|g| self.mul(e, g) == g && self.mul(g, e) == g)) else {
            return invalid("Cayley table has no identity");
        };
        let mut inv = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| self.mul(g, h) == e && self.mul(h, g) == e) {
                Some(h) => inv.push(h),
                None => return invalid(format!("element {g} has no inverse")),
            }
        }
        let h: Mask = self.subgroup.iter().copied().collect();
        if self.subgroup.is_empty() || h.len() != self.subgroup.len() || !h.fits(n) {
            return invalid("subgroup must list distinct elements of the group");
        }
        if h.iter().any(|a| h.iter().any(|b| !h.contains(self.mul(a, inv[b])))) {
            return invalid("subgroup is not closed under a·b⁻¹");
        }
        if (0..n).any(|g| h.iter().any(|a| !h.contains(self.mul(self.mul(g, a), inv[g])))) {
            return invalid("subgroup is not normal");
        }
        Ok((e, inv))
    }

    fn translations(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.order())
            .map(|g| self.subgroup.iter().map(|&h| self.mul(g, h)).collect())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn family(&self) -> Result<FunctionFamily> {
        let space = FiniteSpace::with_default_labels(Topology::discrete(self.order()));
        FunctionFamily::new(space, self.subgroup.len(), self.translations())
    }
}

fn sorted(mut sets: Vec<Mask>) -> Vec<Vec<usize>> {
    sets.sort();
    sets.dedup();
    sets.iter().map(|m| m.to_indices()).collect()
}

/// `G/H` from the relation `g⁻¹g' ∈ H`.
pub(crate) fn cosets(group: &GroupSpec) -> Result<Vec<Vec<usize>>> {
    let (_, inv) = group.validate()?;
    let h: Mask = group.subgroup.iter().copied().collect();
    let n = group.order();
    let classes = (0..n)
        .map(|g| (0..n).filter(|&k| h.contains(group.mul(inv[g], k))).collect())
        .collect();
    Ok(sorted(classes))
}

/// `q(Lt(H,G))` for the left translations restricted to `H`.
pub(crate) fn realized_cosets(group: &GroupSpec) -> Result<Vec<Vec<usize>>> {
    group.validate()?;
    Ok(sorted(group.family()?.image_sets()))
}

/// Checks that the unordering images of the left translations restricted
/// to a normal subgroup are exactly its cosets.
pub fn verify_coset_realization(group: &GroupSpec) -> Result<CheckResult> {
    let expected = cosets(group)?;
    let fam = group.family()?;
    let realized = sorted(fam.image_sets());
    let instance = InstanceSpec {
        x_size: group.order(),
        x_topology_id: None,
        y_size: group.subgroup.len(),
        family: FamilySpec::Tuples(fam.tuples().to_vec()),
        param: Some(format!("{} H={:?}", group.name, group.subgroup)),
        space: None,
    };
    let mut res = if realized == expected {
        CheckResult::new(CheckName::CosetRealization, instance, Status::Verified)
    } else {
        CheckResult::new(CheckName::CosetRealization, instance, Status::Counterexample).with_witness(Witness {
            family: Some(family_json(&fam, false)?),
            detail: None,
            claim: Claim::CosetMismatch {
                group: group.clone(),
                realized: realized.clone(),
                expected: expected.clone(),
            },
        })
    };
    res = res.note("cosets", serde_json::to_value(&realized)?);
    Ok(res)
}
