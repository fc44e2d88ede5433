use std::collections::{BTreeSet, HashMap};

use crate::error::{invalid, Error, Result};
use crate::mask::{Mask, MAX_CARRIER};
use crate::topology::{checked_power, tuple_at, FiniteSpace, SpaceMap, Topology};

use super::{indexed_closed_family, vietoris_topologies, Vietoris};

/// A set `F ⊂ X^Y` of functions from a finite index set `Y = {0..y_size}`
/// into a finite space, stored as tuples, with the unordering map
/// `q(f) = cl(f(Y))` precomputed.
#[derive(Clone, Debug)]
pub struct FunctionFamily {
    space: FiniteSpace,
    y_size: usize,
    tuples: Vec<Vec<usize>>,
    carrier: Vec<Mask>,
    q_images: Vec<Mask>,
    /// Sorted positions in `carrier` of `q(F)`.
    image: Vec<usize>,
    /// `F → q(F)`, codomain indexed by position in `image`.
    q_map: SpaceMap,
    q_full: bool,
    finitely_q_stable: bool,
}

impl FunctionFamily {
    pub fn new(space: FiniteSpace, y_size: usize, tuples: Vec<Vec<usize>>) -> Result<FunctionFamily> {
        if tuples.is_empty() {
            return invalid("function family must be nonempty");
        }
        if tuples.len() > MAX_CARRIER {
            return Err(Error::InstanceTooLarge(format!(
                "{} functions exceed the {MAX_CARRIER}-point cap",
                tuples.len()
            )));
        }
        let n = space.size();
        let mut seen = BTreeSet::new();
        for t in &tuples {
            if t.len() != y_size {
                return invalid(format!("tuple {t:?} does not have length {y_size}"));
            }
            if let Some(&c) = t.iter().find(|&&c| c >= n) {
                return invalid(format!("tuple entry {c} outside a space of {n} points"));
            }
            if !seen.insert(t.as_slice()) {
                return invalid(format!("duplicate tuple {t:?}"));
            }
        }
        let carrier = indexed_closed_family(&space, y_size)?;
        let q_images: Vec<Mask> = tuples
            .iter()
            .map(|t| space.closure(t.iter().copied().collect()))
            .collect();
        let positions: Vec<usize> = q_images
            .iter()
            .map(|c| carrier.binary_search(c).expect("closure of a small image lies in Cl_Y(X)"))
            .collect();
        let image: Vec<usize> = positions.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let q_map = SpaceMap::new(
            tuples.len(),
            image.len(),
            positions.iter().map(|p| image.binary_search(p).unwrap()).collect(),
        )?;
        let q_full = image.len() == carrier.len();
        let finitely_q_stable = finitely_q_stable(&tuples, &q_images, y_size);
        Ok(FunctionFamily {
            space,
            y_size,
            tuples,
            carrier,
            q_images,
            image,
            q_map,
            q_full,
            finitely_q_stable,
        })
    }

    /// `F = X^Y`, tuples in lexicographic order.
    pub fn all(space: FiniteSpace, y_size: usize) -> Result<FunctionFamily> {
        let n = space.size();
        let total = checked_power(n, y_size)?;
        let tuples = (0..total).map(|i| tuple_at(i, n, y_size)).collect();
        FunctionFamily::new(space, y_size, tuples)
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// `Cl_Y(X)`.
    pub fn carrier(&self) -> &[Mask] {
        &self.carrier
    }

    /// `q(f)` for each tuple.
    pub fn q_images(&self) -> &[Mask] {
        &self.q_images
    }

    /// Positions in [`FunctionFamily::carrier`] that make up `q(F)`.
    pub fn image_positions(&self) -> &[usize] {
        &self.image
    }

    /// `q(F)` as closed sets, sorted.
    pub fn image_sets(&self) -> Vec<Mask> {
        self.image.iter().map(|&i| self.carrier[i]).collect()
    }

    /// The unordering map `F → q(F)`.
    pub fn q_map(&self) -> &SpaceMap {
        &self.q_map
    }

    /// The unordering map into all of `Cl_Y(X)`; surjective iff q-full.
    pub fn unordering_map(&self) -> SpaceMap {
        let image = self.q_map.images().iter().map(|&p| self.image[p]).collect();
        SpaceMap::new(self.len(), self.carrier.len(), image).expect("positions lie in the carrier")
    }

    pub fn is_q_full(&self) -> bool {
        self.q_full
    }

    pub fn is_finitely_q_stable(&self) -> bool {
        self.finitely_q_stable
    }

    /// Mask over `q(F)` positions of those in the carrier mask `m`.
    pub fn image_mask_of_carrier(&self, m: Mask) -> Mask {
        self.image
            .iter()
            .enumerate()
            .filter(|(_, &c)| m.contains(c))
            .map(|(i, _)| i)
            .collect()
    }

    /// Restricts a topology on `Cl_Y(X)` to the subspace `q(F)`.
    pub fn restrict_to_image(&self, t: &Topology) -> Result<Topology> {
        if t.size() != self.carrier.len() {
            return invalid("topology is not on the hyperspace carrier");
        }
        if self.q_full {
            return Ok(t.clone());
        }
        t.subspace(Mask::from_indices(self.image.iter().copied()))
    }

    /// `τ_p` on `F`: the subspace topology of the product.
    pub fn product_topology(&self) -> Topology {
        let x = self.space.topology();
        let nbhd = self
            .tuples
            .iter()
            .map(|f| {
                self.tuples
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| f.iter().zip(g.iter()).all(|(&fy, &gy)| x.neighborhood(fy).contains(gy)))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Topology::from_neighborhoods(nbhd).expect("product neighbourhoods are transitive")
    }

    /// The sub-basic product open `[(y, O)]_p = {f ∈ F : f(y) ∈ O}`.
    pub fn coordinate_open(&self, y: usize, o: Mask) -> Mask {
        self.tuples
            .iter()
            .enumerate()
            .filter(|(_, f)| o.contains(f[y]))
            .map(|(i, _)| i)
            .collect()
    }

    /// `[O]_s = {f ∈ F : q(f) ⊆ O}`.
    pub fn symmetric_open(&self, o: Mask) -> Mask {
        self.q_images
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_subset(o))
            .map(|(i, _)| i)
            .collect()
    }

    /// `τ_s`, generated by `[O]_s` over the open sets of `X`.
    pub fn symmetric_topology(&self) -> Result<Topology> {
        let opens = self.space.topology().opens().ok_or_else(|| {
            Error::InstanceTooLarge("open sets of the base space are not materialized".into())
        })?;
        let base: Vec<Mask> = opens.iter().map(|&o| self.symmetric_open(o)).collect();
        Topology::from_subbase(self.len(), &base)
    }

    /// `τ_q` on `q(F)` for a topology `t` on `F`.
    pub fn quotient_over_q(&self, t: &Topology) -> Result<Topology> {
        if t.size() != self.len() {
            return invalid("topology is not on the function family");
        }
        t.quotient(&self.q_map)
    }

    /// `q⁻¹(τ)` on `F` for a topology `τ` on `q(F)`.
    pub fn pullback(&self, t: &Topology) -> Result<Topology> {
        t.preimage(&self.q_map)
    }

    /// Vietoris topologies on `Cl_Y(X)`.
    pub fn vietoris(&self) -> Result<Vietoris> {
        vietoris_topologies(&self.space, &self.carrier)
    }

    /// Whether the Vietoris topology on `q(F)` is contained in `τ_q` for
    /// the topology `t` on `F`. On finite carriers the range-compactness
    /// parts of the definition hold automatically, so this is the whole
    /// test.
    pub fn is_swrc(&self, t: &Topology) -> Result<bool> {
        let v = self.restrict_to_image(&self.vietoris()?.full)?;
        v.is_coarser_or_equal(&self.quotient_over_q(t)?)
    }

    pub fn topologies(&self) -> Result<FamilyTopologies> {
        FamilyTopologies::compute(self)
    }
}

/// For every `f`, every partial injection `σ` of `Y` into itself, some `g`
/// with `g(σ(y)) = f(y)` on the domain of `σ` and `q(g) = q(f)`.
fn finitely_q_stable(tuples: &[Vec<usize>], q_images: &[Mask], y_size: usize) -> bool {
    let mut classes: HashMap<Mask, Vec<&[usize]>> = HashMap::new();
    for (t, &c) in tuples.iter().zip(q_images) {
        classes.entry(c).or_default().push(t);
    }
    let injections = partial_injections(y_size);
    tuples.iter().zip(q_images).all(|(f, c)| {
        let class = &classes[c];
        injections.iter().all(|sigma| {
            class.iter().any(|g| {
                sigma
                    .iter()
                    .enumerate()
                    .all(|(y, target)| target.is_none_or(|t| g[t] == f[y]))
            })
        })
    })
}

/// All partial injections `Y ⇀ Y`, as `sigma[y] = Some(target)`.
pub(crate) fn partial_injections(y_size: usize) -> Vec<Vec<Option<usize>>> {
    fn go(y: usize, n: usize, used: &mut Vec<bool>, cur: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        if y == n {
            out.push(cur.clone());
            return;
        }
        cur.push(None);
        go(y + 1, n, used, cur, out);
        cur.pop();
        for t in 0..n {
            if !used[t] {
                used[t] = true;
                cur.push(Some(t));
                go(y + 1, n, used, cur, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, y_size, &mut vec![false; y_size], &mut Vec::new(), &mut out);
    out
}

/// Every topology the theorem checks need for one family, computed once.
/// Hyperspace topologies are on `q(F)` (positions in
/// [`FunctionFamily::image_positions`]).
#[derive(Clone, Debug)]
pub struct FamilyTopologies {
    pub product: Topology,
    pub symmetric: Topology,
    pub product_symmetric: Topology,
    pub vietoris: Topology,
    pub upper: Topology,
    pub lower: Topology,
    pub product_quotient: Topology,
    pub symmetric_quotient: Topology,
    pub product_symmetric_quotient: Topology,
    pub pullback_vietoris: Topology,
    pub pullback_upper: Topology,
    pub pullback_lower: Topology,
}

impl FamilyTopologies {
    fn compute(fam: &FunctionFamily) -> Result<FamilyTopologies> {
        let product = fam.product_topology();
        let symmetric = fam.symmetric_topology()?;
        let product_symmetric = product.join(&symmetric)?;
        let v = fam.vietoris()?;
        let vietoris = fam.restrict_to_image(&v.full)?;
        let upper = fam.restrict_to_image(&v.upper)?;
        let lower = fam.restrict_to_image(&v.lower)?;
        Ok(FamilyTopologies {
            product_quotient: fam.quotient_over_q(&product)?,
            symmetric_quotient: fam.quotient_over_q(&symmetric)?,
            product_symmetric_quotient: fam.quotient_over_q(&product_symmetric)?,
            pullback_vietoris: fam.pullback(&vietoris)?,
            pullback_upper: fam.pullback(&upper)?,
            pullback_lower: fam.pullback(&lower)?,
            product,
            symmetric,
            product_symmetric,
            vietoris,
            upper,
            lower,
        })
    }
}
