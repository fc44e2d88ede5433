//! Hyperspaces of closed subsets and the topologies that live on them.
//!
//! The points of `Cl_Y(X)` are the nonempty closed sets `cl(S)` with
//! `|S| ≤ |Y|`, kept as a list of masks sorted by numeric value. Every
//! topology on the hyperspace is indexed by position in that list. For a
//! finite `X` every subset is compact, so the compact-subset hyperspace
//! `K_Y(X)` is the same carrier and is not modelled separately.

mod expr;
mod family;

pub use expr::{NamedTopology, TopologyExpr};
pub use family::{FamilyTopologies, FunctionFamily};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::mask::{Mask, MAX_CARRIER};
use crate::topology::{FiniteSpace, Topology, MAX_EXPLICIT};

/// Largest `X` whose subsets are enumerated to build a hyperspace carrier.
pub const MAX_HYPER_BASE: usize = 20;

/// `Cl_Y(X) = {cl(S) : ∅ ≠ S ⊆ X, |S| ≤ y_size}`, sorted by mask value.
pub fn indexed_closed_family(space: &FiniteSpace, y_size: usize) -> Result<Vec<Mask>> {
    if y_size == 0 {
        return invalid("index set must be nonempty");
    }
    let n = space.size();
    if n > MAX_HYPER_BASE {
        return Err(Error::InstanceTooLarge(format!(
            "hyperspace of a {n}-point space exceeds the {MAX_HYPER_BASE}-point cap"
        )));
    }
    let carrier: BTreeSet<Mask> = Mask::full(n)
        .submasks()
        .filter(|s| !s.is_empty() && s.len() <= y_size)
        .map(|s| space.closure(s))
        .collect();
    Ok(carrier.into_iter().collect())
}

/// Positions in `carrier` of the sets with at most `n` points.
pub fn fs_n(carrier: &[Mask], n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return invalid("FS_n needs n ≥ 1");
    }
    Ok(carrier
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() <= n)
        .map(|(i, _)| i)
        .collect())
}

fn check_hyper_carrier(space: &FiniteSpace, carrier: &[Mask]) -> Result<()> {
    if carrier.len() > MAX_CARRIER {
        return Err(Error::InstanceTooLarge(format!(
            "hyperspace carrier of {} sets exceeds {MAX_CARRIER}",
            carrier.len()
        )));
    }
    let n = space.size();
    for &c in carrier {
        if c.is_empty() || !c.fits(n) || space.closure(c) != c {
            return invalid(format!("{c:?} is not a nonempty closed subset of the space"));
        }
    }
    Ok(())
}

fn opens_of(space: &FiniteSpace) -> Result<Vec<Mask>> {
    space.topology().opens().ok_or_else(|| {
        Error::InstanceTooLarge(format!(
            "open sets of a {}-point space are not materialized (cap {MAX_EXPLICIT})",
            space.size()
        ))
    })
}

/// `O⁺ = {C : C ⊆ O}` as a mask over carrier positions.
pub fn upper_set(carrier: &[Mask], o: Mask) -> Mask {
    carrier
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_subset(o))
        .map(|(i, _)| i)
        .collect()
}

/// `O⁻ = {C : C ∩ O ≠ ∅}` as a mask over carrier positions.
pub fn lower_set(carrier: &[Mask], o: Mask) -> Mask {
    carrier
        .iter()
        .enumerate()
        .filter(|(_, c)| c.meets(o))
        .map(|(i, _)| i)
        .collect()
}

/// `[O_F]_v = {C : C ⊆ ⋃O_F, C ∩ O_α ≠ ∅ ∀α}`.
pub fn vietoris_base_set(carrier: &[Mask], family: &[Mask]) -> Mask {
    let union = family.iter().fold(Mask::EMPTY, |acc, &o| acc | o);
    carrier
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_subset(union) && family.iter().all(|o| c.meets(*o)))
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vietoris {
    pub full: Topology,
    pub upper: Topology,
    pub lower: Topology,
}

/// Upper and lower Vietoris topologies from their subbases over the open
/// sets of `space`, and the full topology as their join.
pub fn vietoris_topologies(space: &FiniteSpace, carrier: &[Mask]) -> Result<Vietoris> {
    check_hyper_carrier(space, carrier)?;
    let opens = opens_of(space)?;
    let k = carrier.len();
    let uppers: Vec<Mask> = opens.iter().map(|&o| upper_set(carrier, o)).collect();
    let lowers: Vec<Mask> = opens.iter().map(|&o| lower_set(carrier, o)).collect();
    let upper = Topology::from_subbase(k, &uppers)?;
    let lower = Topology::from_subbase(k, &lowers)?;
    let full = upper.join(&lower)?;
    Ok(Vietoris { full, upper, lower })
}

/// The Vietoris topology generated from its base `{[O_F]_v}`, with `F`
/// ranging over nonempty collections of at most `cap` nonempty open sets.
pub fn vietoris_from_base(space: &FiniteSpace, carrier: &[Mask], cap: usize) -> Result<Topology> {
    check_hyper_carrier(space, carrier)?;
    let opens: Vec<Mask> = opens_of(space)?.into_iter().filter(|o| !o.is_empty()).collect();
    let mut base = BTreeSet::new();
    let mut chosen = Vec::with_capacity(cap);
    collect_base(carrier, &opens, 0, cap, &mut chosen, &mut base);
    let base: Vec<Mask> = base.into_iter().collect();
    Topology::from_subbase(carrier.len(), &base)
}

fn collect_base(
    carrier: &[Mask],
    opens: &[Mask],
    start: usize,
    cap: usize,
    chosen: &mut Vec<Mask>,
    out: &mut BTreeSet<Mask>,
) {
    if !chosen.is_empty() {
        out.insert(vietoris_base_set(carrier, chosen));
    }
    if chosen.len() == cap {
        return;
    }
    for i in start..opens.len() {
        chosen.push(opens[i]);
        collect_base(carrier, opens, i + 1, cap, chosen, out);
        chosen.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "label")]
pub enum HyperKind {
    Vietoris,
    Upper,
    Lower,
    Quotient(String),
}

/// `Cl_Y(X)` together with one topology on it.
#[derive(Clone, Debug)]
pub struct HyperStructure {
    space: FiniteSpace,
    y_size: usize,
    carrier: Vec<Mask>,
    topology: Topology,
    kind: HyperKind,
}

impl HyperStructure {
    /// Builds the carrier and the requested Vietoris-type topology.
    /// Quotient kinds must come through [`HyperStructure::with_topology`].
    pub fn new(space: FiniteSpace, y_size: usize, kind: HyperKind) -> Result<HyperStructure> {
        let carrier = indexed_closed_family(&space, y_size)?;
        let v = vietoris_topologies(&space, &carrier)?;
        let topology = match &kind {
            HyperKind::Vietoris => v.full,
            HyperKind::Upper => v.upper,
            HyperKind::Lower => v.lower,
            HyperKind::Quotient(_) => {
                return invalid("quotient hyperspaces need an explicit topology")
            }
        };
        Ok(HyperStructure {
            space,
            y_size,
            carrier,
            topology,
            kind,
        })
    }

    pub fn with_topology(
        space: FiniteSpace,
        y_size: usize,
        topology: Topology,
        kind: HyperKind,
    ) -> Result<HyperStructure> {
        let carrier = indexed_closed_family(&space, y_size)?;
        if topology.size() != carrier.len() {
            return invalid(format!(
                "topology on {} points for a carrier of {}",
                topology.size(),
                carrier.len()
            ));
        }
        Ok(HyperStructure {
            space,
            y_size,
            carrier,
            topology,
            kind,
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn carrier(&self) -> &[Mask] {
        &self.carrier
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn kind(&self) -> &HyperKind {
        &self.kind
    }

    pub fn position(&self, c: Mask) -> Option<usize> {
        self.carrier.binary_search(&c).ok()
    }

    /// Whether the carrier positions in `part` form a closed set.
    pub fn is_closed_subset(&self, part: &[usize]) -> Result<bool> {
        if let Some(&p) = part.iter().find(|&&p| p >= self.carrier.len()) {
            return invalid(format!("position {p} outside hyperspace carrier"));
        }
        Ok(self.topology.is_closed(Mask::from_indices(part.iter().copied())))
    }
}

/// A sequence of subsets: a finite prefix followed by a repeating cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSequence {
    pub prefix: Vec<Mask>,
    pub cycle: Vec<Mask>,
}

impl SubsetSequence {
    pub fn new(prefix: Vec<Mask>, cycle: Vec<Mask>) -> Result<SubsetSequence> {
        let seq = SubsetSequence { prefix, cycle };
        seq.validate(MAX_CARRIER)?;
        Ok(seq)
    }

    pub fn constant(a: Mask) -> SubsetSequence {
        SubsetSequence {
            prefix: Vec::new(),
            cycle: vec![a],
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.cycle.is_empty() {
            return invalid("subset sequence needs a nonempty repeating cycle");
        }
        if let Some(m) = self.prefix.iter().chain(&self.cycle).find(|m| !m.fits(n)) {
            return invalid(format!("sequence term {m:?} exceeds carrier of {n} points"));
        }
        Ok(())
    }
}

/// Every open set containing `a` eventually contains the terms. In a finite
/// space it suffices to test the smallest such open set.
pub fn centrally_converges(t: &Topology, seq: &SubsetSequence, a: Mask) -> Result<bool> {
    seq.validate(t.size())?;
    let hull = t.open_hull(a);
    Ok(seq.cycle.iter().all(|c| c.is_subset(hull)))
}

/// Every open set meeting `a` eventually meets the terms. It suffices to
/// test the minimal neighbourhoods of the points of `a`.
pub fn marginally_converges(t: &Topology, seq: &SubsetSequence, a: Mask) -> Result<bool> {
    seq.validate(t.size())?;
    Ok(a.iter()
        .all(|x| seq.cycle.iter().all(|c| c.meets(t.neighborhood(x)))))
}
