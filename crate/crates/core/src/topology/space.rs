use std::collections::HashSet;

use crate::error::{invalid, Result};
use crate::mask::Mask;

use super::Topology;

/// A labelled finite point set with a topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    topology: Topology,
}

impl FiniteSpace {
    pub fn new(labels: Vec<String>, topology: Topology) -> Result<FiniteSpace> {
        if labels.len() != topology.size() {
            return invalid(format!(
                "{} labels for a topology on {} points",
                labels.len(),
                topology.size()
            ));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return invalid(format!("duplicate label {dup:?}"));
        }
        Ok(FiniteSpace { labels, topology })
    }

    /// Points labelled `a`, `b`, `c`, ... (or `p0`, `p1`, ... past 26).
    pub fn with_default_labels(topology: Topology) -> FiniteSpace {
        let labels = default_labels(topology.size());
        FiniteSpace { labels, topology }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn closure(&self, a: Mask) -> Mask {
        self.topology.closure(a)
    }

    /// `X^Y` with the product topology.
    pub fn power(&self, y_size: usize) -> Result<FiniteSpace> {
        let topology = self.topology.power(y_size)?;
        let n = self.size();
        let labels = (0..topology.size())
            .map(|idx| {
                let parts: Vec<&str> = super::tuple_at(idx, n, y_size)
                    .into_iter()
                    .map(|c| self.labels[c].as_str())
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Ok(FiniteSpace { labels, topology })
    }

    pub fn describe(&self, m: Mask) -> String {
        let parts: Vec<&str> = m.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("p{i}")
            }
        })
        .collect()
}

/// A map between finite carriers, stored as an index array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    codomain: usize,
    image: Vec<usize>,
    surjective: bool,
}

impl SpaceMap {
    pub fn new(domain_size: usize, codomain_size: usize, image: Vec<usize>) -> Result<SpaceMap> {
        if image.len() != domain_size {
            return invalid(format!(
                "map lists {} images for a domain of {domain_size}",
                image.len()
            ));
        }
        if let Some(&bad) = image.iter().find(|&&b| b >= codomain_size) {
            return invalid(format!("image {bad} outside codomain of {codomain_size}"));
        }
        let mut hit = vec![false; codomain_size];
        for &b in &image {
            hit[b] = true;
        }
        Ok(SpaceMap {
            codomain: codomain_size,
            surjective: hit.iter().all(|&h| h),
            image,
        })
    }

    pub fn identity(n: usize) -> SpaceMap {
        SpaceMap {
            codomain: n,
            image: (0..n).collect(),
            surjective: true,
        }
    }

    pub fn domain_size(&self) -> usize {
        self.image.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        self.image.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
    }

    pub fn image_of(&self, s: Mask) -> Mask {
        s.iter().map(|x| self.image[x]).collect()
    }

    pub fn preimage_of(&self, b: Mask) -> Mask {
        self.image
            .iter()
            .enumerate()
            .filter(|(_, &y)| b.contains(y))
            .map(|(x, _)| x)
            .collect()
    }

    /// `g⁻¹(g(S))`.
    pub fn saturate(&self, s: Mask) -> Mask {
        self.preimage_of(self.image_of(s))
    }

    pub fn is_saturated(&self, s: Mask) -> bool {
        self.saturate(s) == s
    }

    /// Restriction to the domain points in `sub`, onto its image. Points are
    /// re-indexed in increasing order on both sides.
    pub fn restrict(&self, sub: Mask) -> SpaceMap {
        let points = sub.to_indices();
        let targets = self.image_of(sub).to_indices();
        let image = points
            .iter()
            .map(|&x| targets.binary_search(&self.image[x]).expect("image point present"))
            .collect();
        SpaceMap {
            codomain: targets.len(),
            image,
            surjective: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_must_match_and_be_distinct() {
        assert!(FiniteSpace::new(vec!["a".into()], Topology::discrete(2)).is_err());
        assert!(FiniteSpace::new(vec!["a".into(), "a".into()], Topology::discrete(2)).is_err());
        let s = FiniteSpace::with_default_labels(Topology::discrete(3));
        assert_eq!(s.labels(), ["a", "b", "c"]);
        assert_eq!(s.describe(Mask(0b101)), "{a,c}");
    }

    #[test]
    fn map_flags() {
        let g = SpaceMap::new(4, 2, vec![1, 1, 1, 0]).unwrap();
        assert!(g.is_surjective());
        assert!(!g.is_injective());
        assert!(SpaceMap::new(2, 2, vec![0, 2]).is_err());
        assert!(SpaceMap::new(3, 2, vec![0, 1]).is_err());
        assert!(!SpaceMap::new(1, 2, vec![0]).unwrap().is_surjective());
    }

    #[test]
    fn saturation_examples() {
        // Sierpiński² unordering map: (b,b) alone over {b}
        let q = SpaceMap::new(4, 2, vec![1, 1, 1, 0]).unwrap();
        assert!(q.is_saturated(Mask(0b1000)));
        assert!(!q.is_saturated(Mask(0b0001)));
        assert!(q.is_saturated(Mask::full(4)));
        assert_eq!(q.saturate(Mask(0b0001)), Mask(0b0111));
    }

    #[test]
    fn restriction_reindexes() {
        let g = SpaceMap::new(4, 3, vec![2, 0, 2, 1]).unwrap();
        let r = g.restrict(Mask(0b0101));
        assert_eq!(r.images(), &[0, 0]);
        assert_eq!(r.codomain_size(), 1);
        let r = g.restrict(Mask(0b1011));
        assert_eq!(r.images(), &[2, 0, 1]);
    }
}
