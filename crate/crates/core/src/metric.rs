//! Finite metric spaces, point-to-set distance, ε-neighbourhoods and the
//! Hausdorff distance.
//!
//! Distances are `f64`; every equality and axiom check uses [`TOLERANCE`].

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exec::Execution;
use crate::hyperspace::{self, FunctionFamily, SubsetSequence};
use crate::mask::{Mask, MAX_CARRIER};
use crate::topology::Topology;

pub const TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HausdorffVariant {
    /// `max{sup_a d(a,B), sup_b d(b,A)}`
    MaxSup,
    /// `inf{r : A∪B ⊆ N̄_r(A) ∩ N̄_r(B)}`
    InfRadius,
    /// `sup_{x∈A∪B} |d(x,A) − d(x,B)|`
    SupUnion,
    /// `sup_{x∈X} |d(x,A) − d(x,B)|`
    SupAll,
}

impl HausdorffVariant {
    pub const ALL: [HausdorffVariant; 4] = [
        HausdorffVariant::MaxSup,
        HausdorffVariant::InfRadius,
        HausdorffVariant::SupUnion,
        HausdorffVariant::SupAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HausdorffVariant::MaxSup => "max_sup",
            HausdorffVariant::InfRadius => "inf_radius",
            HausdorffVariant::SupUnion => "sup_union",
            HausdorffVariant::SupAll => "sup_all",
        }
    }
}

/// Which open sets the convergence checks quantify over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpenFamily {
    /// The open balls `B(c, r)` themselves.
    Balls,
    /// Every open set of the topology the balls generate.
    Generated,
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<FiniteMetricSpace> {
        let n = dist.len();
        if labels.len() != n {
            return invalid(format!("{} labels for a {n}-point distance matrix", labels.len()));
        }
        if n > MAX_CARRIER {
            return invalid(format!("metric carrier of {n} points exceeds {MAX_CARRIER}"));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return invalid(format!("distance matrix row {i} has length {}", row.len()));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < -TOLERANCE {
                    return invalid(format!("d({i},{j}) = {d} is not a non-negative number"));
                }
                if i == j && d.abs() > TOLERANCE {
                    return invalid(format!("d({i},{i}) = {d} is not zero"));
                }
                if i != j && d <= TOLERANCE {
                    return invalid(format!("distinct points {i} and {j} at distance {d}"));
                }
                if (d - dist[j][i]).abs() > TOLERANCE {
                    return invalid(format!("d({i},{j}) ≠ d({j},{i})"));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if dist[x][z] > dist[x][y] + dist[y][z] + TOLERANCE {
                        return invalid(format!("triangle inequality fails at ({x},{y},{z})"));
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    pub fn from_coords(coords: &[Vec<f64>]) -> Result<FiniteMetricSpace> {
        let dim = coords.first().map_or(0, Vec::len);
        if coords.iter().any(|c| c.len() != dim) {
            return invalid("coordinates must share a dimension");
        }
        let dist = coords
            .iter()
            .map(|a| {
                coords
                    .iter()
                    .map(|b| a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt())
                    .collect()
            })
            .collect();
        FiniteMetricSpace::new(numbered_labels(coords.len()), dist)
    }

    /// Points on the real line.
    pub fn line(points: &[f64]) -> Result<FiniteMetricSpace> {
        let coords: Vec<Vec<f64>> = points.iter().map(|&p| vec![p]).collect();
        FiniteMetricSpace::from_coords(&coords)
    }

    /// `d(x,y) = 1` for `x ≠ y`.
    pub fn discrete(n: usize) -> FiniteMetricSpace {
        let dist = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect();
        FiniteMetricSpace {
            labels: numbered_labels(n),
            dist,
        }
    }

    pub fn size(&self) -> usize {
        self.dist.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn d(&self, x: usize, y: usize) -> f64 {
        self.dist[x][y]
    }

    pub fn full(&self) -> Mask {
        Mask::full(self.size())
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().flatten().copied().fold(0.0, f64::max)
    }

    fn check_set(&self, a: Mask) -> Result<()> {
        if a.is_empty() {
            return invalid("point set must be nonempty");
        }
        if !a.fits(self.size()) {
            return invalid(format!("point set {a:?} exceeds carrier of {} points", self.size()));
        }
        Ok(())
    }

    /// `d(x, A) = min_{a∈A} d(x, a)`.
    pub fn point_set_distance(&self, x: usize, a: Mask) -> Result<f64> {
        self.check_set(a)?;
        if x >= self.size() {
            return invalid(format!("point {x} outside carrier"));
        }
        Ok(self.dist_to(x, a))
    }

    fn dist_to(&self, x: usize, a: Mask) -> f64 {
        a.iter().map(|p| self.dist[x][p]).fold(f64::INFINITY, f64::min)
    }

    /// `N_ε(A)` (strict) or `N̄_ε(A)` (`closed`).
    pub fn eps_neighborhood(&self, a: Mask, eps: f64, closed: bool) -> Result<Mask> {
        self.check_set(a)?;
        // rejects NaN too
        if eps.is_nan() || eps < 0.0 {
            return invalid(format!("radius {eps} must be non-negative"));
        }
        Ok(self.neighborhood_unchecked(a, eps, closed))
    }

    fn neighborhood_unchecked(&self, a: Mask, eps: f64, closed: bool) -> Mask {
        (0..self.size())
            .filter(|&x| {
                let d = self.dist_to(x, a);
                if closed {
                    d <= eps
                } else {
                    d < eps
                }
            })
            .collect()
    }

    pub fn hausdorff(&self, a: Mask, b: Mask, variant: HausdorffVariant) -> Result<f64> {
        self.check_set(a)?;
        self.check_set(b)?;
        Ok(match variant {
            HausdorffVariant::MaxSup => {
                let ab = a.iter().map(|x| self.dist_to(x, b)).fold(0.0, f64::max);
                let ba = b.iter().map(|x| self.dist_to(x, a)).fold(0.0, f64::max);
                ab.max(ba)
            }
            HausdorffVariant::InfRadius => {
                // the infimum is attained among the point-to-set distances
                let both = a | b;
                let mut radii: Vec<f64> = std::iter::once(0.0)
                    .chain(both.iter().flat_map(|x| [self.dist_to(x, a), self.dist_to(x, b)]))
                    .collect();
                radii.sort_by(f64::total_cmp);
                radii
                    .into_iter()
                    .find(|&r| {
                        let cover = self.neighborhood_unchecked(a, r, true)
                            & self.neighborhood_unchecked(b, r, true);
                        both.is_subset(cover)
                    })
                    .expect("the largest candidate radius covers A ∪ B")
            }
            HausdorffVariant::SupUnion => self.sup_gap(a, b, a | b),
            HausdorffVariant::SupAll => self.sup_gap(a, b, self.full()),
        })
    }

    fn sup_gap(&self, a: Mask, b: Mask, over: Mask) -> f64 {
        over.iter()
            .map(|x| (self.dist_to(x, a) - self.dist_to(x, b)).abs())
            .fold(0.0, f64::max)
    }

    /// All four variants, in [`HausdorffVariant::ALL`] order.
    pub fn hausdorff_variants(&self, a: Mask, b: Mask) -> Result<[f64; 4]> {
        let mut out = [0.0; 4];
        for (slot, v) in out.iter_mut().zip(HausdorffVariant::ALL) {
            *slot = self.hausdorff(a, b, v)?;
        }
        Ok(out)
    }

    pub fn d_h(&self, a: Mask, b: Mask) -> Result<f64> {
        self.hausdorff(a, b, HausdorffVariant::MaxSup)
    }

    /// Open ball `{x : d(c,x) < r}`.
    pub fn ball(&self, c: usize, r: f64) -> Mask {
        (0..self.size()).filter(|&x| self.dist[c][x] < r).collect()
    }

    /// Candidate radii: every distance and every midpoint of two distances
    /// from a common point.
    pub fn candidate_radii(&self) -> Vec<f64> {
        let n = self.size();
        let mut radii = Vec::new();
        for x in 0..n {
            for y in 0..n {
                radii.push(self.dist[x][y]);
                for z in 0..n {
                    radii.push((self.dist[x][y] + self.dist[x][z]) / 2.0);
                }
            }
        }
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        radii
    }

    /// Distinct nonempty balls `B(c, r)` over every centre and candidate
    /// radius, plus one radius past the diameter.
    pub fn ball_family(&self) -> Vec<Mask> {
        let mut radii = self.candidate_radii();
        radii.push(self.diameter() + 1.0);
        let mut balls: Vec<Mask> = (0..self.size())
            .flat_map(|c| radii.iter().map(move |&r| (c, r)))
            .map(|(c, r)| self.ball(c, r))
            .filter(|b| !b.is_empty())
            .collect();
        balls.sort();
        balls.dedup();
        balls
    }

    /// The metric topology (discrete, for a finite metric space), generated
    /// from the ball family.
    pub fn topology(&self) -> Topology {
        Topology::from_subbase(self.size(), &self.ball_family()).expect("balls fit the carrier")
    }

    /// `A_n → A` centrally: every family member containing `A` eventually
    /// contains the terms.
    pub fn centrally_converges(&self, seq: &SubsetSequence, a: Mask, family: OpenFamily) -> Result<bool> {
        self.check_set(a)?;
        seq.validate(self.size())?;
        Ok(match family {
            OpenFamily::Balls => self
                .ball_family()
                .into_iter()
                .filter(|o| a.is_subset(*o))
                .all(|o| seq.cycle.iter().all(|c| c.is_subset(o))),
            OpenFamily::Generated => hyperspace::centrally_converges(&self.topology(), seq, a)?,
        })
    }

    /// `A_n → A` marginally: every family member meeting `A` eventually
    /// meets the terms.
    pub fn marginally_converges(&self, seq: &SubsetSequence, a: Mask, family: OpenFamily) -> Result<bool> {
        self.check_set(a)?;
        seq.validate(self.size())?;
        Ok(match family {
            OpenFamily::Balls => self
                .ball_family()
                .into_iter()
                .filter(|o| o.meets(a))
                .all(|o| seq.cycle.iter().all(|c| c.meets(o))),
            OpenFamily::Generated => hyperspace::marginally_converges(&self.topology(), seq, a)?,
        })
    }

    /// Eventual `d_H` closeness: every cycle term within `tol` of `A`.
    pub fn dh_converges(&self, seq: &SubsetSequence, a: Mask, tol: f64) -> Result<bool> {
        self.check_set(a)?;
        seq.validate(self.size())?;
        if seq.cycle.iter().chain(&seq.prefix).any(|c| c.is_empty()) {
            return invalid("sequence terms must be nonempty");
        }
        let mut ok = true;
        for &c in &seq.cycle {
            ok &= self.d_h(c, a)? <= tol;
        }
        Ok(ok)
    }

    /// `d_H^q(f, g) = d_H(q(f), q(g))` for two tuples of a family over this
    /// metric space. The metric topology is discrete, so `q(f) = f(Y)`.
    pub fn dq_pseudometric(&self, fam: &FunctionFamily, f: usize, g: usize) -> Result<f64> {
        if fam.space().size() != self.size() {
            return invalid("family is not over this metric space");
        }
        if !fam.space().topology().is_discrete() {
            return invalid("the topology of a finite metric space is discrete");
        }
        if f >= fam.len() || g >= fam.len() {
            return invalid("tuple index outside the family");
        }
        self.d_h(fam.q_images()[f], fam.q_images()[g])
    }
}

fn numbered_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Topology on a list of nonempty sets induced by `d_H`, generated by the
/// open `d_H`-balls at every attained distance.
pub fn hausdorff_topology(m: &FiniteMetricSpace, sets: &[Mask]) -> Result<Topology> {
    let k = sets.len();
    let mut table = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            table[i][j] = m.d_h(sets[i], sets[j])?;
        }
    }
    let mut balls = Vec::new();
    for (c, row) in table.iter().enumerate() {
        for &r in row.iter().filter(|&&r| r > 0.0) {
            balls.push((0..k).filter(|&j| table[c][j] < r).collect::<Mask>());
        }
    }
    Topology::from_subbase(k, &balls)
}

/// A random Euclidean point cloud with `n` distinct points in `dim`
/// dimensions, coordinates uniform in `[0, 10)`.
pub fn random_euclidean<R: Rng>(rng: &mut R, n: usize, dim: usize) -> FiniteMetricSpace {
    loop {
        let coords: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(0.0..10.0)).collect())
            .collect();
        if let Ok(m) = FiniteMetricSpace::from_coords(&coords) {
            return m;
        }
    }
}

/// A uniformly random nonempty subset of an `n`-point carrier.
pub fn random_nonempty_subset<R: Rng>(rng: &mut R, n: usize) -> Mask {
    loop {
        let m = Mask(rng.gen::<u64>() & Mask::full(n).bits());
        if !m.is_empty() {
            return m;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgreementReport {
    pub triples: usize,
    /// Largest spread `max − min` among the four variants.
    pub max_spread: f64,
    /// Indices of triples whose spread exceeded [`TOLERANCE`].
    pub disagreements: Vec<usize>,
}

/// Draws `count` seeded (space, A, B) triples and measures how far the four
/// Hausdorff formulas drift apart. Triple `i` uses its own RNG stream, so
/// the outcome does not depend on the execution mode.
pub fn hausdorff_agreement_sweep(seed: u64, count: usize, max_points: usize, exec: Execution) -> AgreementReport {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    let max_points = max_points.clamp(1, MAX_CARRIER);
    let indices: Vec<usize> = (0..count).collect();
    let spreads = exec.map(&indices, |&i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let n = rng.gen_range(1..=max_points);
        let dim = rng.gen_range(1..=3);
        let m = random_euclidean(&mut rng, n, dim);
        let a = random_nonempty_subset(&mut rng, n);
        let b = random_nonempty_subset(&mut rng, n);
        let v = m.hausdorff_variants(a, b).expect("nonempty sets");
        let hi = v.iter().copied().fold(f64::MIN, f64::max);
        let lo = v.iter().copied().fold(f64::MAX, f64::min);
        hi - lo
    });
    AgreementReport {
        triples: count,
        max_spread: spreads.iter().copied().fold(0.0, f64::max),
        disagreements: spreads
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > TOLERANCE)
            .map(|(i, _)| i)
            .collect(),
    }
}
