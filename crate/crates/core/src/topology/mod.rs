//! Finite topologies in minimal-neighbourhood (Alexandrov) form.
//!
//! A topology on `n` points is stored as the array `U_x`, the smallest open
//! set containing `x`. A set `S` is open exactly when `U_x ⊆ S` for every
//! `x ∈ S`, so openness, comparison, join, closure and convergence are all
//! linear in the array. Explicit open-set lists are produced on demand for
//! carriers of at most [`MAX_EXPLICIT`] points.

mod enumerate;
mod sequence;
mod space;

pub use enumerate::{enumerate_topologies, sample_topologies, topology_count, MAX_EXHAUSTIVE, MAX_SAMPLED};
pub use sequence::EventualSequence;
pub use space::{FiniteSpace, SpaceMap};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::mask::{Mask, MAX_CARRIER};

/// Largest carrier whose open sets are materialized explicitly.
pub const MAX_EXPLICIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Topology {
    nbhd: Vec<Mask>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Equal,
    /// The first topology has strictly more open sets.
    FirstStrictlyFiner,
    SecondStrictlyFiner,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
}

fn check_carrier(n: usize) -> Result<()> {
    if n > MAX_CARRIER {
        return Err(Error::InstanceTooLarge(format!(
            "carrier of {n} points exceeds {MAX_CARRIER}"
        )));
    }
    Ok(())
}

impl Topology {
    pub fn discrete(n: usize) -> Topology {
        Topology {
            nbhd: (0..n).map(Mask::singleton).collect(),
        }
    }

    pub fn indiscrete(n: usize) -> Topology {
        Topology {
            nbhd: vec![Mask::full(n); n],
        }
    }

    /// Builds a topology from its minimal-neighbourhood array, checking
    /// `x ∈ U_x` and `y ∈ U_x ⇒ U_y ⊆ U_x`.
    pub fn from_neighborhoods(nbhd: Vec<Mask>) -> Result<Topology> {
        let n = nbhd.len();
        check_carrier(n)?;
        for (x, &u) in nbhd.iter().enumerate() {
            if !u.fits(n) {
                return invalid(format!("neighbourhood of point {x} exceeds carrier"));
            }
            if !u.contains(x) {
                return invalid(format!("point {x} is missing from its own neighbourhood"));
            }
            if let Some(y) = u.iter().find(|&y| !nbhd[y].is_subset(u)) {
                return invalid(format!(
                    "neighbourhood of {x} contains {y} but not all of U_{y}"
                ));
            }
        }
        Ok(Topology { nbhd })
    }

    /// The smallest topology containing every subbase element.
    ///
    /// `U_x` is the intersection of the subbase elements containing `x`, or
    /// the whole carrier when there are none.
    pub fn from_subbase(n: usize, subbase: &[Mask]) -> Result<Topology> {
        check_carrier(n)?;
        if let Some(s) = subbase.iter().find(|s| !s.fits(n)) {
            return invalid(format!("subbase element {s:?} exceeds carrier of {n} points"));
        }
        let full = Mask::full(n);
        let nbhd = (0..n)
            .map(|x| {
                subbase
                    .iter()
                    .filter(|s| s.contains(x))
                    .fold(full, |acc, &s| acc & s)
            })
            .collect();
        Ok(Topology { nbhd })
    }

    /// Validates an explicit list of open sets and converts it.
    pub fn from_opens(n: usize, opens: &[Mask]) -> Result<Topology> {
        check_carrier(n)?;
        let set: BTreeSet<Mask> = opens.iter().copied().collect();
        if let Some(o) = set.iter().find(|o| !o.fits(n)) {
            return invalid(format!("open set {o:?} exceeds carrier of {n} points"));
        }
        if !set.contains(&Mask::EMPTY) || !set.contains(&Mask::full(n)) {
            return invalid("open sets must include the empty set and the whole carrier");
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&(a | b)) || !set.contains(&(a & b)) {
                    return invalid(format!(
                        "open sets not closed under union/intersection: {a:?}, {b:?}"
                    ));
                }
            }
        }
        let t = Topology::from_subbase(n, &set.iter().copied().collect::<Vec<_>>())?;
        debug_assert_eq!(t.opens().map(|o| o.len()), (n <= MAX_EXPLICIT).then_some(set.len()));
        Ok(t)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.nbhd.len()
    }

    #[inline]
    pub fn full(&self) -> Mask {
        Mask::full(self.size())
    }

    #[inline]
    pub fn neighborhood(&self, x: usize) -> Mask {
        self.nbhd[x]
    }

    pub fn neighborhoods(&self) -> &[Mask] {
        &self.nbhd
    }

    pub fn is_open(&self, s: Mask) -> bool {
        s.iter().all(|x| self.nbhd[x].is_subset(s))
    }

    pub fn is_closed(&self, s: Mask) -> bool {
        self.is_open(s.complement(self.size()))
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: Mask) -> Mask {
        s.iter().fold(Mask::EMPTY, |acc, x| acc | self.nbhd[x])
    }

    /// `cl(A) = {x : U_x ∩ A ≠ ∅}`.
    pub fn closure(&self, a: Mask) -> Mask {
        self.nbhd
            .iter()
            .enumerate()
            .filter(|(_, u)| u.meets(a))
            .map(|(x, _)| x)
            .collect()
    }

    /// All open sets in increasing numeric order, or `None` above
    /// [`MAX_EXPLICIT`] points.
    pub fn opens(&self) -> Option<Vec<Mask>> {
        if self.size() > MAX_EXPLICIT {
            return None;
        }
        let mut opens = BTreeSet::from([Mask::EMPTY]);
        for &u in &self.nbhd {
            let grown: Vec<Mask> = opens.iter().map(|&o| o | u).collect();
            opens.extend(grown);
        }
        Some(opens.into_iter().collect())
    }

    pub fn is_discrete(&self) -> bool {
        self.nbhd.iter().enumerate().all(|(x, &u)| u == Mask::singleton(x))
    }

    pub fn is_indiscrete(&self) -> bool {
        let full = self.full();
        self.nbhd.iter().all(|&u| u == full)
    }

    fn same_carrier(&self, other: &Topology) -> Result<()> {
        if self.size() != other.size() {
            return invalid(format!(
                "carrier mismatch: {} vs {} points",
                self.size(),
                other.size()
            ));
        }
        Ok(())
    }

    /// Smallest topology containing both.
    pub fn join(&self, other: &Topology) -> Result<Topology> {
        self.same_carrier(other)?;
        let nbhd = self.nbhd.iter().zip(&other.nbhd).map(|(&a, &b)| a & b).collect();
        Ok(Topology { nbhd })
    }

    /// Every open set of `self` is open in `other`.
    pub fn is_coarser_or_equal(&self, other: &Topology) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(self.nbhd.iter().zip(&other.nbhd).all(|(&mine, &theirs)| theirs.is_subset(mine)))
    }

    pub fn compare(&self, other: &Topology) -> Result<Comparison> {
        let le = self.is_coarser_or_equal(other)?;
        let ge = other.is_coarser_or_equal(self)?;
        Ok(match (le, ge) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::SecondStrictlyFiner,
            (false, true) => Comparison::FirstStrictlyFiner,
            (false, false) => Comparison::Incomparable,
        })
    }

    /// A set open in `self` but not in `other`, if any.
    pub fn open_set_missing_from(&self, other: &Topology) -> Result<Option<Mask>> {
        self.same_carrier(other)?;
        Ok(self
            .nbhd
            .iter()
            .zip(&other.nbhd)
            .find(|(&mine, &theirs)| !theirs.is_subset(mine))
            .map(|(&mine, _)| mine))
    }

    pub fn separation(&self) -> Separation {
        let n = self.size();
        let t0 = (0..n).all(|x| (x + 1..n).all(|y| self.nbhd[x] != self.nbhd[y]));
        // {x} closed for all x  ⟺  no U_y contains another point
        let t1 = (0..n).all(|x| self.is_closed(Mask::singleton(x)));
        let t2 = (0..n).all(|x| (x + 1..n).all(|y| !self.nbhd[x].meets(self.nbhd[y])));
        Separation { t0, t1, t2 }
    }

    /// Subspace topology on `sub`, re-indexed to `0..|sub|` in increasing
    /// order of the original indices.
    pub fn subspace(&self, sub: Mask) -> Result<Topology> {
        if sub.is_empty() {
            return invalid("subspace of an empty set");
        }
        if !sub.fits(self.size()) {
            return invalid("subspace mask exceeds carrier");
        }
        let points = sub.to_indices();
        let nbhd = points
            .iter()
            .map(|&x| compress(self.nbhd[x] & sub, &points))
            .collect();
        Ok(Topology { nbhd })
    }

    /// `U ⊂ B` is open iff `U ∩ A` is open, where `A` is the image of the
    /// injective `embed`.
    pub fn superspace(&self, embed: &SpaceMap) -> Result<Topology> {
        if embed.domain_size() != self.size() {
            return invalid("embedding domain does not match topology");
        }
        if !embed.is_injective() {
            return invalid("superspace embedding must be injective");
        }
        let mut nbhd: Vec<Mask> = (0..embed.codomain_size()).map(Mask::singleton).collect();
        for x in 0..self.size() {
            nbhd[embed.apply(x)] = embed.image_of(self.nbhd[x]);
        }
        Ok(Topology { nbhd })
    }

    /// `f⁻¹(τ)`: the opens are exactly the preimages of opens of `self`.
    pub fn preimage(&self, f: &SpaceMap) -> Result<Topology> {
        if f.codomain_size() != self.size() {
            return invalid("map codomain does not match topology");
        }
        let nbhd = (0..f.domain_size())
            .map(|x| f.preimage_of(self.nbhd[f.apply(x)]))
            .collect();
        Ok(Topology { nbhd })
    }

    /// Quotient topology on the codomain of a surjection: `B` is open iff
    /// `g⁻¹(B)` is open in `self`.
    ///
    /// `U_b` is the image of the smallest saturated open set containing the
    /// fibre over `b`, found by alternating open hulls and saturation.
    pub fn quotient(&self, g: &SpaceMap) -> Result<Topology> {
        if g.domain_size() != self.size() {
            return invalid("map domain does not match topology");
        }
        if !g.is_surjective() {
            return invalid("quotient map must be surjective");
        }
        let nbhd = (0..g.codomain_size())
            .map(|b| {
                let mut s = g.preimage_of(Mask::singleton(b));
                loop {
                    let next = g.saturate(self.open_hull(s));
                    if next == s {
                        break g.image_of(s);
                    }
                    s = next;
                }
            })
            .collect();
        Ok(Topology { nbhd })
    }

    /// Product of `y_size` copies of `self` on tuples indexed
    /// lexicographically (first coordinate most significant).
    pub fn power(&self, y_size: usize) -> Result<Topology> {
        let n = self.size();
        let total = checked_power(n, y_size)?;
        let nbhd = (0..total)
            .map(|idx| {
                let tuple = tuple_at(idx, n, y_size);
                let mut m = Mask::EMPTY;
                for other in 0..total {
                    let g = tuple_at(other, n, y_size);
                    if tuple.iter().zip(&g).all(|(&fy, &gy)| self.nbhd[fy].contains(gy)) {
                        m.insert(other);
                    }
                }
                m
            })
            .collect();
        Ok(Topology { nbhd })
    }

    /// Whether an eventually periodic sequence converges to `x`: every
    /// element of the repeating cycle must lie in `U_x`.
    pub fn converges(&self, seq: &EventualSequence, x: usize) -> Result<bool> {
        seq.check(self.size())?;
        if x >= self.size() {
            return invalid(format!("limit point {x} outside carrier"));
        }
        let u = self.nbhd[x];
        Ok(seq.cycle().iter().all(|&p| u.contains(p)))
    }

    /// All limits of the sequence.
    pub fn limits(&self, seq: &EventualSequence) -> Result<Mask> {
        seq.check(self.size())?;
        Ok((0..self.size())
            .filter(|&x| seq.cycle().iter().all(|&p| self.nbhd[x].contains(p)))
            .collect())
    }

    /// Neighbourhood arrays as index lists, for serialization.
    pub fn neighborhood_lists(&self) -> Vec<Vec<usize>> {
        self.nbhd.iter().map(|m| m.to_indices()).collect()
    }

    pub fn from_neighborhood_lists(lists: &[Vec<usize>]) -> Result<Topology> {
        if let Some(bad) = lists.iter().flatten().find(|&&i| i >= MAX_CARRIER) {
            return invalid(format!("index {bad} exceeds carrier cap"));
        }
        Topology::from_neighborhoods(lists.iter().map(|l| Mask::from_indices(l.iter().copied())).collect())
    }
}

/// Re-index `m` (a subset of `points`) to positions within `points`.
pub(crate) fn compress(m: Mask, points: &[usize]) -> Mask {
    points
        .iter()
        .enumerate()
        .filter(|(_, &p)| m.contains(p))
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn checked_power(n: usize, y_size: usize) -> Result<usize> {
    let total = (n as u128).checked_pow(y_size as u32).unwrap_or(u128::MAX);
    if total > MAX_CARRIER as u128 {
        return Err(Error::InstanceTooLarge(format!(
            "{n}^{y_size} tuples exceed the {MAX_CARRIER}-point cap"
        )));
    }
    Ok(total as usize)
}

/// Coordinates of the `idx`-th tuple in `{0..n}^y_size`.
pub fn tuple_at(mut idx: usize, n: usize, y_size: usize) -> Vec<usize> {
    let mut t = vec![0; y_size];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

/// Inverse of [`tuple_at`].
pub fn tuple_index(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &c| acc * n + c)
}
