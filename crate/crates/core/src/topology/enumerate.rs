//! Labelled topologies on small carriers.
//!
//! A topology on `n` points is the same thing as a preorder, so we enumerate
//! neighbourhood arrays `U_0, ..., U_{n-1}` with `x ∈ U_x` and keep the
//! transitive ones. The search space is `2^{n(n-1)}` arrays, which is
//! 1 048 576 at `n = 5`.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mask::Mask;

use super::Topology;

/// Largest carrier enumerated exhaustively by default.
pub const MAX_EXHAUSTIVE: usize = 4;
/// Largest carrier supported at all (sampled).
pub const MAX_SAMPLED: usize = 5;

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SAMPLED {
        return Err(Error::Unsupported(format!(
            "topology enumeration supports 1..={MAX_SAMPLED} points, got {n}"
        )));
    }
    Ok(())
}

fn all_topologies(n: usize) -> Vec<Topology> {
    // free bits of U_x are the other n-1 points
    let per_point = 1usize << (n - 1);
    let total = per_point.pow(n as u32);
    let mut out = Vec::new();
    let mut nbhd = vec![Mask::EMPTY; n];
    for code in 0..total {
        let mut rest = code;
        // first point is the most significant digit, so output is sorted
        for x in (0..n).rev() {
            let free = (rest % per_point) as u64;
            rest /= per_point;
            let low = free & ((1u64 << x) - 1);
            let high = (free >> x) << (x + 1);
            nbhd[x] = Mask(low | high | 1u64 << x);
        }
        let transitive = nbhd
            .iter()
            .all(|&u| u.iter().all(|y| nbhd[y].is_subset(u)));
        if transitive {
            out.push(Topology { nbhd: nbhd.clone() });
        }
    }
    out.sort();
    out
}

/// Every labelled topology on `n ≤ 5` points, once each, in canonical
/// (sorted neighbourhood array) order.
pub fn enumerate_topologies(n: usize) -> Result<Vec<Topology>> {
    check_n(n)?;
    Ok(all_topologies(n))
}

/// A deterministic pseudorandom sample of `count` topologies on `n` points,
/// returned in canonical order. Falls back to the full list when `count`
/// covers it.
pub fn sample_topologies(n: usize, count: usize, seed: u64) -> Result<Vec<Topology>> {
    let all = enumerate_topologies(n)?;
    if count >= all.len() {
        return Ok(all);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = sample(&mut rng, all.len(), count).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|i| all[i].clone()).collect())
}

pub fn topology_count(n: usize) -> Result<usize> {
    Ok(enumerate_topologies(n)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(topology_count(1).unwrap(), 1);
        assert_eq!(topology_count(2).unwrap(), 4);
        assert_eq!(topology_count(3).unwrap(), 29);
        assert_eq!(topology_count(4).unwrap(), 355);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let ts = enumerate_topologies(3).unwrap();
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
        assert!(ts.iter().all(|t| Topology::from_neighborhoods(t.nbhd.clone()).is_ok()));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(enumerate_topologies(0), Err(Error::Unsupported(_))));
        assert!(matches!(enumerate_topologies(6), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_topologies(5, 40, 7).unwrap();
        let b = sample_topologies(5, 40, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 40);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(sample_topologies(2, 100, 1).unwrap().len(), 4);
    }
}
