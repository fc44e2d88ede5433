//! Topology enumeration against a brute force over families of subsets.

mod common;

use std::collections::BTreeSet;

use common::{as_opens, brute_force_topologies as brute_force};

use hyperquot::topology::{enumerate_topologies, sample_topologies, topology_count};
use hyperquot::{Error, Mask, Topology};


#[test]
fn counts_match_the_subset_family_oracle() {
    for (n, expected) in [(1, 1), (2, 4), (3, 29), (4, 355)] {
        let oracle = brute_force(n);
        assert_eq!(oracle.len(), expected, "oracle count for n = {n}");
        let listed: BTreeSet<Vec<u64>> = enumerate_topologies(n).unwrap().iter().map(as_opens).collect();
        assert_eq!(listed, oracle, "topologies on {n} points");
        assert_eq!(topology_count(n).unwrap(), expected);
    }
}

#[test]
fn enumeration_is_canonical_and_duplicate_free() {
    let a = enumerate_topologies(3).unwrap();
    assert_eq!(a, enumerate_topologies(3).unwrap());
    let mut sorted = a.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted, a);
    assert!(a[0].is_discrete());
    assert!(a.last().unwrap().is_indiscrete());
}

#[test]
fn sampling_is_seeded_and_valid() {
    let a = sample_topologies(5, 12, 7).unwrap();
    assert_eq!(a, sample_topologies(5, 12, 7).unwrap());
    assert_eq!(a.len(), 12);
    for t in &a {
        assert_eq!(t.size(), 5);
        let opens = t.opens().unwrap();
        let set: BTreeSet<Mask> = opens.iter().copied().collect();
        assert!(opens.iter().all(|&x| opens.iter().all(|&y| set.contains(&(x | y)) && set.contains(&(x & y)))));
    }
    let all4: BTreeSet<Topology> = enumerate_topologies(4).unwrap().into_iter().collect();
    assert!(sample_topologies(4, 20, 1).unwrap().iter().all(|t| all4.contains(t)));
}

#[test]
fn out_of_range_sizes_are_unsupported() {
    assert!(matches!(enumerate_topologies(0), Err(Error::Unsupported(_))));
    assert!(matches!(enumerate_topologies(6), Err(Error::Unsupported(_))));
    assert!(matches!(sample_topologies(6, 1, 0), Err(Error::Unsupported(_))));
}
