//! Oracles shared by the metric tests and the acceptance target.
#![allow(dead_code)]

use hyperquot::metric::{random_euclidean, OpenFamily};
use hyperquot::topology::tuple_at;
use hyperquot::{FiniteMetricSpace, FiniteSpace, FunctionFamily, Mask, SubsetSequence, Topology};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Lines, discrete spaces and seeded planar clouds on `1..=max` points.
pub fn metric_spaces(max: usize, seed: u64) -> Vec<FiniteMetricSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in 1..=max {
        out.push(FiniteMetricSpace::line(&(0..n).map(|i| i as f64).collect::<Vec<_>>()).unwrap());
        out.push(FiniteMetricSpace::line(&(0..n).map(|i| (i * i) as f64).collect::<Vec<_>>()).unwrap());
        out.push(FiniteMetricSpace::discrete(n));
        for _ in 0..3 {
            out.push(random_euclidean(&mut rng, n, 2));
        }
    }
    out
}

pub fn nonempty(n: usize) -> Vec<Mask> {
    Mask::full(n).submasks().filter(|s| !s.is_empty()).collect()
}

/// `max(sup_a d(a,B), sup_b d(b,A))` straight from the definition.
pub fn hausdorff_oracle(m: &FiniteMetricSpace, a: Mask, b: Mask) -> f64 {
    let d = |x: usize, s: Mask| s.iter().map(|p| m.d(x, p)).fold(f64::INFINITY, f64::min);
    let ab = a.iter().map(|x| d(x, b)).fold(0.0, f64::max);
    let ba = b.iter().map(|x| d(x, a)).fold(0.0, f64::max);
    ab.max(ba)
}

#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub violations: usize,
}

impl Tally {
    pub fn record(&mut self, ok: bool) {
        self.checked += 1;
        self.violations += usize::from(!ok);
    }
}

/// Identity of indiscernibles, symmetry, triangle inequality and
/// agreement with the definition, over all subset pairs and triples.
pub fn dh_axioms(spaces: &[FiniteMetricSpace]) -> Tally {
    const TOL: f64 = hyperquot::metric::TOLERANCE;
    let mut t = Tally::default();
    for m in spaces {
        let sets = nonempty(m.size());
        let k = sets.len();
        let mut table = vec![vec![0.0; k]; k];
        for i in 0..k {
            for j in 0..k {
                table[i][j] = m.d_h(sets[i], sets[j]).unwrap();
                t.record((table[i][j] - hausdorff_oracle(m, sets[i], sets[j])).abs() <= TOL);
                for x in 0..m.size() {
                    let gap = (m.point_set_distance(x, sets[i]).unwrap() - m.point_set_distance(x, sets[j]).unwrap()).abs();
                    t.record(gap <= table[i][j] + TOL);
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                t.record((table[i][j] <= TOL) == (i == j));
                t.record((table[i][j] - table[j][i]).abs() <= TOL);
                for l in 0..k {
                    t.record(table[i][l] <= table[i][j] + table[j][l] + TOL);
                }
            }
        }
    }
    t
}

/// `d_H^q(f,g) = 0 ⟺ q(f) = q(g)` and the pseudometric axioms over
/// `F = X^Y` with the discrete metric.
pub fn dq_pseudometric(max_x: usize, max_y: usize) -> Tally {
    let mut t = Tally::default();
    for n in 1..=max_x {
        let m = FiniteMetricSpace::discrete(n);
        for y in 1..=max_y {
            let fam = FunctionFamily::all(FiniteSpace::with_default_labels(Topology::discrete(n)), y).unwrap();
            let k = fam.len();
            let d: Vec<Vec<f64>> = (0..k).map(|f| (0..k).map(|g| m.dq_pseudometric(&fam, f, g).unwrap()).collect()).collect();
            for f in 0..k {
                for g in 0..k {
                    let same: Mask = tuple_at(f, n, y).into_iter().collect::<Mask>();
                    let other: Mask = tuple_at(g, n, y).into_iter().collect::<Mask>();
                    t.record((d[f][g] == 0.0) == (same == other));
                    t.record(d[f][g] == d[g][f] && d[f][g] >= 0.0);
                    for h in 0..k {
                        t.record(d[f][h] <= d[f][g] + d[g][h]);
                    }
                }
            }
        }
    }
    t
}

/// `d_H`-convergence at tolerance 0 against central plus marginal
/// convergence, over every sequence with cycle length 1 or 2.
pub fn convergence_coherence(spaces: &[FiniteMetricSpace], family: OpenFamily) -> Tally {
    let mut t = Tally::default();
    for m in spaces {
        let sets = nonempty(m.size());
        for &a in &sets {
            for (i, &b) in sets.iter().enumerate() {
                for &c in &sets[i..] {
                    let cycle = if b == c { vec![b] } else { vec![b, c] };
                    let seq = SubsetSequence::new(vec![a], cycle).unwrap();
                    let dh = m.dh_converges(&seq, a, 0.0).unwrap();
                    let vt = m.centrally_converges(&seq, a, family).unwrap()
                        && m.marginally_converges(&seq, a, family).unwrap();
                    t.record(dh == vt);
                }
            }
        }
    }
    t
}

/// Every family of subsets of an `n`-point set that contains `∅` and `X`
/// and is closed under union and intersection, as sorted open-set lists.
pub fn brute_force_topologies(n: usize) -> std::collections::BTreeSet<Vec<u64>> {
    let full = (1u64 << n) - 1;
    let middle: Vec<u64> = (1..full).collect();
    let mut out = std::collections::BTreeSet::new();
    for pick in 0u64..(1 << middle.len()) {
        let mut fam = vec![0, full];
        fam.extend(middle.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &s)| s));
        let set: std::collections::BTreeSet<u64> = fam.iter().copied().collect();
        let closed = fam
            .iter()
            .all(|&a| fam.iter().all(|&b| set.contains(&(a | b)) && set.contains(&(a & b))));
        if closed {
            out.insert(set.into_iter().collect());
        }
    }
    out
}

pub fn as_opens(t: &Topology) -> Vec<u64> {
    t.opens().unwrap().iter().map(|m| m.bits()).collect()
}
