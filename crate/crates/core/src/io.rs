//! JSON file formats for spaces, function families, metric spaces and
//! subset sequences.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hyperspace::{FunctionFamily, SubsetSequence};
use crate::mask::{Mask, MAX_CARRIER};
use crate::metric::FiniteMetricSpace;
use crate::topology::{FiniteSpace, Topology};

fn mask_of(indices: &[usize], n: usize, what: &str) -> Result<Mask> {
    if let Some(&i) = indices.iter().find(|&&i| i >= n || i >= MAX_CARRIER) {
        return invalid(format!("{what} index {i} outside carrier of {n} points"));
    }
    Ok(Mask::from_indices(indices.iter().copied()))
}

/// `{"labels": ["a","b"], "opens": [[],[0],[0,1]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub labels: Vec<String>,
    pub opens: Vec<Vec<usize>>,
}

impl SpaceJson {
    pub fn to_space(&self) -> Result<FiniteSpace> {
        let n = self.labels.len();
        let opens = self
            .opens
            .iter()
            .map(|o| mask_of(o, n, "open set"))
            .collect::<Result<Vec<_>>>()?;
        FiniteSpace::new(self.labels.clone(), Topology::from_opens(n, &opens)?)
    }

    /// Fails above the explicit-open-set cap.
    pub fn from_space(space: &FiniteSpace) -> Result<SpaceJson> {
        let opens = space.topology().opens().ok_or_else(|| {
            crate::Error::InstanceTooLarge("open sets are not materialized for this carrier".into())
        })?;
        Ok(SpaceJson {
            labels: space.labels().to_vec(),
            opens: opens.iter().map(|o| o.to_indices()).collect(),
        })
    }
}

/// Canonical export of a topology: neighbourhoods always, open sets when
/// the carrier is small enough.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyJson {
    pub size: usize,
    pub min_nbhd: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<usize>>>,
}

impl From<&Topology> for TopologyJson {
    fn from(t: &Topology) -> TopologyJson {
        TopologyJson {
            size: t.size(),
            min_nbhd: t.neighborhood_lists(),
            opens: t.opens().map(|os| os.iter().map(|o| o.to_indices()).collect()),
        }
    }
}

impl TopologyJson {
    pub fn to_topology(&self) -> Result<Topology> {
        if self.min_nbhd.len() != self.size {
            return invalid("neighbourhood array length does not match size");
        }
        let t = Topology::from_neighborhood_lists(&self.min_nbhd)?;
        if let Some(opens) = &self.opens {
            let masks = opens
                .iter()
                .map(|o| mask_of(o, self.size, "open set"))
                .collect::<Result<Vec<_>>>()?;
            if Topology::from_opens(self.size, &masks)? != t {
                return invalid("open-set list disagrees with the neighbourhood array");
            }
        }
        Ok(t)
    }
}

/// `{"space": ..., "y_size": 2, "tuples": [[0,1],[1,0]], "all": false}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub space: SpaceJson,
    pub y_size: usize,
    #[serde(default)]
    pub tuples: Vec<Vec<usize>>,
    #[serde(default)]
    pub all: bool,
}

impl FamilyJson {
    pub fn to_family(&self) -> Result<FunctionFamily> {
        let space = self.space.to_space()?;
        if self.all {
            FunctionFamily::all(space, self.y_size)
        } else {
            FunctionFamily::new(space, self.y_size, self.tuples.clone())
        }
    }
}

/// Either an explicit distance matrix or Euclidean coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricJson {
    Matrix {
        labels: Vec<String>,
        dist: Vec<Vec<f64>>,
    },
    Coords {
        coords: Vec<Vec<f64>>,
        metric: String,
    },
}

impl MetricJson {
    pub fn to_metric(&self) -> Result<FiniteMetricSpace> {
        match self {
            MetricJson::Matrix { labels, dist } => FiniteMetricSpace::new(labels.clone(), dist.clone()),
            MetricJson::Coords { coords, metric } => {
                if metric != "euclidean" {
                    return invalid(format!("unknown metric {metric:?}"));
                }
                FiniteMetricSpace::from_coords(coords)
            }
        }
    }
}

/// `{"prefix": [[0],[1,2]], "cycle": [[0,2]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    #[serde(default)]
    pub prefix: Vec<Vec<usize>>,
    pub cycle: Vec<Vec<usize>>,
}

impl SequenceJson {
    pub fn to_sequence(&self, n: usize) -> Result<SubsetSequence> {
        let conv = |sets: &[Vec<usize>]| {
            sets.iter()
                .map(|s| mask_of(s, n, "sequence term"))
                .collect::<Result<Vec<_>>>()
        };
        SubsetSequence::new(conv(&self.prefix)?, conv(&self.cycle)?)
    }
}
