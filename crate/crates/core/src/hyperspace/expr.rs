use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::mask::Mask;
use crate::metric::{hausdorff_topology, FiniteMetricSpace};
use crate::topology::Topology;

use super::FunctionFamily;

/// Topologies attached to a function family `F` (first group) or to its
/// image `q(F)` (second group).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedTopology {
    Product,
    Symmetric,
    ProductSymmetric,
    PullbackVietoris,
    PullbackUpper,
    PullbackLower,

    Vietoris,
    Upper,
    Lower,
    ProductQuotient,
    SymmetricQuotient,
    ProductSymmetricQuotient,
    /// Topology of the Hausdorff distance under the discrete metric on `X`.
    HausdorffDiscrete,
}

/// A serializable recipe for a topology, evaluated against a function
/// family using only the topology and hyperspace primitives. Witnesses
/// carry these so that a claim can be replayed independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "op")]
pub enum TopologyExpr {
    Named { name: NamedTopology },
    /// Subspace on the listed points of the inner topology's carrier.
    Subspace { of: Box<TopologyExpr>, points: Vec<usize> },
    /// Quotient of the inner topology (on `F`) restricted to the listed
    /// q-saturated tuples, under `q` restricted to them; lives on the
    /// sorted positions of their image in `q(F)`.
    RestrictedQuotient { of: Box<TopologyExpr>, saturated: Vec<usize> },
    Join { left: Box<TopologyExpr>, right: Box<TopologyExpr> },
    Explicit { neighborhoods: Vec<Vec<usize>> },
}

impl TopologyExpr {
    pub fn named(name: NamedTopology) -> TopologyExpr {
        TopologyExpr::Named { name }
    }

    pub fn subspace(of: TopologyExpr, points: Mask) -> TopologyExpr {
        TopologyExpr::Subspace {
            of: Box::new(of),
            points: points.to_indices(),
        }
    }

    pub fn restricted_quotient(of: TopologyExpr, saturated: Mask) -> TopologyExpr {
        TopologyExpr::RestrictedQuotient {
            of: Box::new(of),
            saturated: saturated.to_indices(),
        }
    }

    pub fn join(left: TopologyExpr, right: TopologyExpr) -> TopologyExpr {
        TopologyExpr::Join {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn explicit(t: &Topology) -> TopologyExpr {
        TopologyExpr::Explicit {
            neighborhoods: t.neighborhood_lists(),
        }
    }

    pub fn evaluate(&self, fam: &FunctionFamily) -> Result<Topology> {
        match self {
            TopologyExpr::Named { name } => evaluate_named(*name, fam),
            TopologyExpr::Subspace { of, points } => {
                of.evaluate(fam)?.subspace(Mask::from_indices(points.iter().copied()))
            }
            TopologyExpr::RestrictedQuotient { of, saturated } => {
                let t = of.evaluate(fam)?;
                if t.size() != fam.len() {
                    return invalid("restricted quotient needs a topology on the family");
                }
                let s = Mask::from_indices(saturated.iter().copied());
                if !s.fits(fam.len()) || !fam.q_map().is_saturated(s) {
                    return invalid("restricted quotient needs a q-saturated set of tuples");
                }
                t.subspace(s)?.quotient(&fam.q_map().restrict(s))
            }
            TopologyExpr::Join { left, right } => left.evaluate(fam)?.join(&right.evaluate(fam)?),
            TopologyExpr::Explicit { neighborhoods } => Topology::from_neighborhood_lists(neighborhoods),
        }
    }
}

fn evaluate_named(name: NamedTopology, fam: &FunctionFamily) -> Result<Topology> {
    use NamedTopology::*;
    Ok(match name {
        Product => fam.product_topology(),
        Symmetric => fam.symmetric_topology()?,
        ProductSymmetric => fam.product_topology().join(&fam.symmetric_topology()?)?,
        PullbackVietoris => fam.pullback(&fam.restrict_to_image(&fam.vietoris()?.full)?)?,
        PullbackUpper => fam.pullback(&fam.restrict_to_image(&fam.vietoris()?.upper)?)?,
        PullbackLower => fam.pullback(&fam.restrict_to_image(&fam.vietoris()?.lower)?)?,
        Vietoris => fam.restrict_to_image(&fam.vietoris()?.full)?,
        Upper => fam.restrict_to_image(&fam.vietoris()?.upper)?,
        Lower => fam.restrict_to_image(&fam.vietoris()?.lower)?,
        ProductQuotient => fam.quotient_over_q(&fam.product_topology())?,
        SymmetricQuotient => fam.quotient_over_q(&fam.symmetric_topology()?)?,
        ProductSymmetricQuotient => {
            fam.quotient_over_q(&fam.product_topology().join(&fam.symmetric_topology()?)?)?
        }
        HausdorffDiscrete => {
            let metric = FiniteMetricSpace::discrete(fam.space().size());
            hausdorff_topology(&metric, &fam.image_sets())?
        }
    })
}
