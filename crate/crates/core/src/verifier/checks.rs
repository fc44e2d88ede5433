use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperspace::FamilyTopologies;
use crate::hyperspace::{centrally_converges, fs_n, marginally_converges, FunctionFamily, NamedTopology, SubsetSequence, TopologyExpr};
use crate::mask::Mask;
use crate::topology::{EventualSequence, Topology};

use super::suite::FaultPlan;
use super::{CheckName, CheckResult, Claim, ConvergenceMode, Instance, Status, Witness};

fn named(n: NamedTopology) -> TopologyExpr {
    TopologyExpr::named(n)
}

/// An instance with every topology the checks compare computed once.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub instance: Instance,
    pub tops: FamilyTopologies,
    pub fault: FaultPlan,
}

impl Prepared {
    pub fn new(instance: Instance, fault: FaultPlan) -> Result<Prepared> {
        let tops = instance.family.topologies()?;
        Ok(Prepared { instance, tops, fault })
    }

    fn fam(&self) -> &FunctionFamily {
        &self.instance.family
    }

    fn quotient_hypotheses(&self) -> bool {
        self.fam().is_q_full() && self.fam().is_finitely_q_stable()
    }

    fn result(&self, check: CheckName, status: Status) -> CheckResult {
        CheckResult::new(check, self.instance.spec.clone(), status)
    }

    fn witness(&self, claim: Claim, detail: Option<String>) -> Result<Witness> {
        Ok(Witness {
            family: Some(self.instance.family_json()?),
            detail,
            claim,
        })
    }

    fn counterexample(&self, check: CheckName, claim: Claim) -> Result<CheckResult> {
        Ok(self
            .result(check, Status::Counterexample)
            .with_witness(self.witness(claim, None)?))
    }
}

/// An open set of `sub` that is not open in `sup`, if any.
fn not_contained(sub: (TopologyExpr, &Topology), sup: (TopologyExpr, &Topology)) -> Result<Option<Claim>> {
    Ok(sub.1.open_set_missing_from(sup.1)?.map(|s| Claim::OpenInFirstOnly {
        set: s.to_indices(),
        recorded_first: sub.1.neighborhood_lists(),
        recorded_second: sup.1.neighborhood_lists(),
        first: sub.0,
        second: sup.0,
    }))
}

fn not_equal(a: (TopologyExpr, &Topology), b: (TopologyExpr, &Topology)) -> Result<Option<Claim>> {
    if let Some(c) = not_contained(a.clone(), b.clone())? {
        return Ok(Some(c));
    }
    not_contained(b, a)
}

fn le(a: &Topology, b: &Topology) -> Result<bool> {
    a.is_coarser_or_equal(b)
}

/// `τ_pq = τ_v⁻` on `q(F)`, gated on `F` being q-full and finitely
/// q-stable.
pub fn verify_lower_quotient(p: &Prepared) -> Result<CheckResult> {
    use NamedTopology::*;
    let t = &p.tops;
    let diff = not_equal(
        (named(ProductQuotient), &t.product_quotient),
        (named(Lower), &t.lower),
    )?;
    let notes = |r: CheckResult| -> Result<CheckResult> {
        Ok(r.note("lower_within_product_quotient", le(&t.lower, &t.product_quotient)?)
            .note("product_quotient_within_vietoris", le(&t.product_quotient, &t.vietoris)?))
    };
    if !p.quotient_hypotheses() {
        return notes(p.result(CheckName::LowerQuotient, Status::HypothesisNotMet).note("equal", diff.is_none()));
    }
    match diff {
        None => notes(p.result(CheckName::LowerQuotient, Status::Verified)),
        Some(c) => notes(p.counterexample(CheckName::LowerQuotient, c)?),
    }
}

/// `q⁻¹(τ_v⁻) ⊆ τ_p`, strict when `|Y| ≥ 2`; searches the sub-basic sets
/// `[(y, O)]_p` first, then any `τ_p`-open set.
pub fn verify_lower_strictness(p: &Prepared) -> Result<CheckResult> {
    use NamedTopology::*;
    const CHECK: CheckName = CheckName::LowerStrictness;
    let (fam, t) = (p.fam(), &p.tops);
    if fam.y_size() < 2 || !p.quotient_hypotheses() {
        return Ok(p.result(CHECK, Status::HypothesisNotMet));
    }
    if let Some(c) = not_contained((named(PullbackLower), &t.pullback_lower), (named(Product), &t.product))? {
        return p.counterexample(CHECK, c);
    }
    let opens = fam
        .space()
        .topology()
        .opens()
        .ok_or_else(|| Error::InstanceTooLarge("open sets of X are not materialized".into()))?;
    let mut found = None;
    'search: for y in 0..fam.y_size() {
        for &o in &opens {
            let s = fam.coordinate_open(y, o);
            if !t.pullback_lower.is_open(s) {
                found = Some((s, format!("[(y={}, O={})]_p", y + 1, fam.space().describe(o))));
                break 'search;
            }
        }
    }
    if found.is_none() {
        found = t
            .product
            .open_set_missing_from(&t.pullback_lower)?
            .map(|s| (s, "product-open set".to_string()));
    }
    Ok(match found {
        Some((s, detail)) => {
            let claim = Claim::OpenInFirstOnly {
                first: named(Product),
                second: named(PullbackLower),
                set: s.to_indices(),
                recorded_first: t.product.neighborhood_lists(),
                recorded_second: t.pullback_lower.neighborhood_lists(),
            };
            p.result(CHECK, Status::StrictnessWitnessed)
                .with_witness(p.witness(claim, Some(detail))?)
        }
        None => p.result(CHECK, Status::StrictnessNotWitnessed),
    })
}

/// `τ_sq = τ_v⁺` and `τ_s = q⁻¹(τ_v⁺)`, gated on q-fullness.
pub fn verify_upper_quotient(p: &Prepared) -> Result<CheckResult> {
    use NamedTopology::*;
    const CHECK: CheckName = CheckName::UpperQuotient;
    let t = &p.tops;
    if !p.fam().is_q_full() {
        return Ok(p.result(CHECK, Status::HypothesisNotMet));
    }
    let upper = p.fault.upper(&t.upper);
    if let Some(c) = not_equal((named(SymmetricQuotient), &t.symmetric_quotient), (named(Upper), &upper))? {
        return p.counterexample(CHECK, c);
    }
    if let Some(c) = not_equal((named(Symmetric), &t.symmetric), (named(PullbackUpper), &t.pullback_upper))? {
        return p.counterexample(CHECK, c);
    }
    Ok(p.result(CHECK, Status::Verified))
}

/// `⟨τ_pq ∪ τ_sq⟩ = τ_v` and `τ_v ⊆ ⟨τ_p ∪ τ_s⟩_q`.
pub fn verify_vietoris_join(p: &Prepared) -> Result<CheckResult> {
    use NamedTopology::*;
    const CHECK: CheckName = CheckName::VietorisJoin;
    let t = &p.tops;
    if !p.quotient_hypotheses() {
        return Ok(p.result(CHECK, Status::HypothesisNotMet));
    }
    let join = t.product_quotient.join(&t.symmetric_quotient)?;
    let join_expr = TopologyExpr::join(named(ProductQuotient), named(SymmetricQuotient));
    if let Some(c) = not_equal((join_expr, &join), (named(Vietoris), &t.vietoris))? {
        return p.counterexample(CHECK, c);
    }
    if let Some(c) = not_contained(
        (named(Vietoris), &t.vietoris),
        (named(ProductSymmetricQuotient), &t.product_symmetric_quotient),
    )? {
        return p.counterexample(CHECK, c);
    }
    Ok(p.result(CHECK, Status::Verified))
}

/// For T1 `X`: `τ_s ⊆ τ_p` and `⟨τ_p ∪ τ_s⟩_q = τ_pq = τ_v`, and the
/// Hausdorff-distance topology for the discrete metric equals `τ_v`.
pub fn verify_finite_y_equality(p: &Prepared) -> Result<CheckResult> {
    use NamedTopology::*;
    const CHECK: CheckName = CheckName::FiniteYEquality;
    let t = &p.tops;
    if !p.fam().space().topology().separation().t1 || !p.quotient_hypotheses() {
        return Ok(p
            .result(CHECK, Status::HypothesisNotMet)
            .note("vietoris_equals_product_quotient", t.vietoris == t.product_quotient)
            .note("vietoris_within_product_quotient", le(&t.vietoris, &t.product_quotient)?));
    }
    if let Some(c) = not_contained((named(Symmetric), &t.symmetric), (named(Product), &t.product))? {
        return p.counterexample(CHECK, c);
    }
    if let Some(c) = not_equal(
        (named(ProductSymmetricQuotient), &t.product_symmetric_quotient),
        (named(ProductQuotient), &t.product_quotient),
    )? {
        return p.counterexample(CHECK, c);
    }
    if let Some(c) = not_equal((named(ProductQuotient), &t.product_quotient), (named(Vietoris), &t.vietoris))? {
        return p.counterexample(CHECK, c);
    }
    let hd = named(HausdorffDiscrete).evaluate(p.fam())?;
    if let Some(c) = not_equal((named(HausdorffDiscrete), &hd), (named(Vietoris), &t.vietoris))? {
        return p.counterexample(CHECK, c);
    }
    Ok(p.result(CHECK, Status::Verified).note("hausdorff_discrete_equals_vietoris", true))
}

/// For every q-saturated `S ⊆ F` that is `τ_p`-open or `τ_p`-closed, the
/// quotient of `τ_p|S` under `q|S` is the subspace `τ_pq|q(S)`.
pub fn verify_saturated_restriction(p: &Prepared) -> Result<CheckResult> {
    use NamedTopology::*;
    const CHECK: CheckName = CheckName::SaturatedRestriction;
    let (fam, t) = (p.fam(), &p.tops);
    let k = fam.image_positions().len();
    if k > 20 {
        return Err(Error::InstanceTooLarge(format!("{k} image points exceed the saturated-set sweep")));
    }
    let mut checked = 0u64;
    for b in Mask::full(k).submasks().filter(|b| !b.is_empty()) {
        let s = fam.q_map().preimage_of(b);
        if !t.product.is_open(s) && !t.product.is_closed(s) {
            continue;
        }
        checked += 1;
        let restricted = t.product.subspace(s)?.quotient(&fam.q_map().restrict(s))?;
        let sub = t.product_quotient.subspace(b)?;
        if let Some(c) = not_equal(
            (TopologyExpr::restricted_quotient(named(Product), s), &restricted),
            (TopologyExpr::subspace(named(ProductQuotient), b), &sub),
        )? {
            return p.counterexample(CHECK, c);
        }
    }
    Ok(p.result(CHECK, Status::Verified).note("saturated_sets", checked))
}

/// On `FS_n = {A ∈ q(F) : |A| ≤ n}`, closed in `τ_v`: `q` restricted to
/// `q⁻¹(FS_n)` is a quotient map for `q⁻¹(τ_v)` and for `⟨τ_p ∪ τ_s⟩`, and
/// `⟨τ_pq ∪ τ_sq⟩` restricts to `τ_v`.
pub fn verify_fsn_restriction(p: &Prepared, n: usize) -> Result<CheckResult> {
    use NamedTopology::*;
    const CHECK: CheckName = CheckName::FsnRestriction;
    let (fam, t) = (p.fam(), &p.tops);
    let result = |status| {
        CheckResult::new(CHECK, p.instance.spec.with_param(format!("n={n}")), status)
    };
    if !p.quotient_hypotheses() {
        return Ok(result(Status::HypothesisNotMet));
    }
    let fs = fs_n(fam.carrier(), n)?;
    let b: Mask = fam
        .image_positions()
        .iter()
        .enumerate()
        .filter(|(_, c)| fs.contains(*c))
        .map(|(i, _)| i)
        .collect();
    if b.is_empty() {
        return Ok(result(Status::Verified).note("empty", true));
    }
    if !t.vietoris.is_closed(b) {
        return Ok(result(Status::HypothesisNotMet));
    }
    let s = fam.q_map().preimage_of(b);
    let q = fam.q_map().restrict(s);
    let v_expr = TopologyExpr::subspace(named(Vietoris), b);
    let v = t.vietoris.subspace(b)?;
    let sub = |name: NamedTopology, top: &Topology| -> Result<(TopologyExpr, Topology)> {
        Ok((TopologyExpr::subspace(named(name), b), top.subspace(b)?))
    };
    let candidates = [
        (
            TopologyExpr::restricted_quotient(named(PullbackVietoris), s),
            t.pullback_vietoris.subspace(s)?.quotient(&q)?,
        ),
        (
            TopologyExpr::restricted_quotient(named(ProductSymmetric), s),
            t.product_symmetric.subspace(s)?.quotient(&q)?,
        ),
        {
            let (pe, pt) = sub(ProductQuotient, &t.product_quotient)?;
            let (se, st) = sub(SymmetricQuotient, &t.symmetric_quotient)?;
            (TopologyExpr::join(pe, se), pt.join(&st)?)
        },
    ];
    for (expr, top) in candidates {
        let claim = not_equal((expr, &top), (v_expr.clone(), &v))?;
        if let Some(c) = claim {
            return Ok(result(Status::Counterexample).with_witness(p.witness(c, None)?));
        }
    }
    let restricted_pq = t.product_quotient.subspace(b)?;
    Ok(result(Status::Verified).note("product_quotient_equals_vietoris", restricted_pq == v))
}

/// The hyperspace topology `τ_0` whose smallest q-lift is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftTarget {
    Vietoris,
    Indiscrete,
    Lower,
}

impl LiftTarget {
    pub const ALL: [LiftTarget; 3] = [LiftTarget::Vietoris, LiftTarget::Indiscrete, LiftTarget::Lower];

    pub fn name(self) -> &'static str {
        match self {
            LiftTarget::Vietoris => "tau_v",
            LiftTarget::Indiscrete => "indiscrete",
            LiftTarget::Lower => "tau_v_minus",
        }
    }
}

/// `q⁻¹(τ_0)` quotients back to `τ_0` and lies inside every sampled
/// topology on `F` whose quotient is `τ_0`. Candidates are random
/// topologies and their joins with `q⁻¹(τ_0)`.
pub fn verify_smallest_qlift(p: &Prepared, target: LiftTarget, seed: u64, samples: usize) -> Result<CheckResult> {
    use NamedTopology::*;
    const CHECK: CheckName = CheckName::SmallestQlift;
    let (fam, t) = (p.fam(), &p.tops);
    let result = |status| CheckResult::new(CHECK, p.instance.spec.with_param(target.name()), status);
    let (base_expr, base, lift_expr, lift) = match target {
        LiftTarget::Vietoris => (named(Vietoris), t.vietoris.clone(), named(PullbackVietoris), t.pullback_vietoris.clone()),
        LiftTarget::Lower => (named(Lower), t.lower.clone(), named(PullbackLower), t.pullback_lower.clone()),
        LiftTarget::Indiscrete => {
            let base = Topology::indiscrete(fam.image_positions().len());
            let lift = fam.pullback(&base)?;
            (TopologyExpr::explicit(&base), base, TopologyExpr::explicit(&lift), lift)
        }
    };
    let back = fam.quotient_over_q(&lift)?;
    let back_expr = TopologyExpr::restricted_quotient(lift_expr.clone(), Mask::full(fam.len()));
    if let Some(c) = not_equal((back_expr, &back), (base_expr, &base))? {
        return Ok(result(Status::Counterexample).with_witness(p.witness(c, None)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = Mask::full(fam.len());
    let (mut joined, mut raw) = (0u64, 0u64);
    for i in 0..2 * samples {
        let k = rng.gen_range(1..=3);
        let subbase: Vec<Mask> = (0..k).map(|_| Mask(rng.gen::<u64>()) & full).collect();
        let r = Topology::from_subbase(fam.len(), &subbase)?;
        let candidate = if i < samples { lift.join(&r)? } else { r };
        if fam.quotient_over_q(&candidate)? != base {
            continue;
        }
        if i < samples {
            joined += 1;
        } else {
            raw += 1;
        }
        if let Some(c) = not_contained((lift_expr.clone(), &lift), (TopologyExpr::explicit(&candidate), &candidate))? {
            return Ok(result(Status::Counterexample).with_witness(p.witness(c, None)?));
        }
    }
    Ok(result(Status::Verified)
        .note("joined_lifts", joined)
        .note("random_lifts", raw))
}

/// For every 1- or 2-cycle of tuples converging pointwise to `f`: the
/// closed images converge to `q(f)` in `τ_v⁻`, the raw images converge
/// centrally and marginally to `f(Y)` in `X`, and for T1 `X` the closed
/// images converge in `τ_v`.
pub fn verify_pointwise_image_convergence(p: &Prepared) -> Result<CheckResult> {
    use NamedTopology::*;
    const CHECK: CheckName = CheckName::PointwiseImageConvergence;
    let (fam, t) = (p.fam(), &p.tops);
    let x = fam.space().topology();
    let t1 = x.separation().t1;
    let image = |i: usize| -> Mask { fam.tuples()[i].iter().copied().collect() };
    let q = |i: usize| fam.q_map().apply(i);
    let (mut sequences, mut vietoris_misses) = (0u64, 0u64);
    for f in 0..fam.len() {
        let nbhd = t.product.neighborhood(f).to_indices();
        for (a, &g) in nbhd.iter().enumerate() {
            for &h in &nbhd[a..] {
                sequences += 1;
                let cycle: Vec<usize> = if g == h { vec![g] } else { vec![g, h] };
                let q_cycle: Vec<usize> = cycle.iter().map(|&i| q(i)).collect();
                let seq = EventualSequence::new(Vec::new(), q_cycle.clone())?;
                if !t.lower.converges(&seq, q(f))? {
                    let claim = Claim::NotConvergent {
                        topology: named(Lower),
                        cycle: q_cycle,
                        limit: q(f),
                        recorded: t.lower.neighborhood_lists(),
                    };
                    return p.counterexample(CHECK, claim);
                }
                let images = SubsetSequence::new(Vec::new(), cycle.iter().map(|&i| image(i)).collect())?;
                for mode in [ConvergenceMode::Central, ConvergenceMode::Marginal] {
                    let ok = match mode {
                        ConvergenceMode::Central => centrally_converges(x, &images, image(f))?,
                        ConvergenceMode::Marginal => marginally_converges(x, &images, image(f))?,
                    };
                    if !ok {
                        let claim = Claim::ImageNotConvergent {
                            mode,
                            cycle: images.cycle.iter().map(|m| m.to_indices()).collect(),
                            limit: image(f).to_indices(),
                        };
                        return p.counterexample(CHECK, claim);
                    }
                }
                if !t.vietoris.converges(&seq, q(f))? {
                    if t1 {
                        let claim = Claim::NotConvergent {
                            topology: named(Vietoris),
                            cycle: q_cycle,
                            limit: q(f),
                            recorded: t.vietoris.neighborhood_lists(),
                        };
                        return p.counterexample(CHECK, claim);
                    }
                    vietoris_misses += 1;
                }
            }
        }
    }
    let mut res = p.result(CHECK, Status::Verified).note("sequences", sequences);
    if !t1 {
        res = res.note("closed_images_not_vietoris_convergent", vietoris_misses);
    }
    Ok(res)
}
