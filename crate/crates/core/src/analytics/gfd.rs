use std::str::FromStr;

use serde::Serialize;

use super::AnalyticsError;
use crate::census::{GraphletClass, GraphletFrequencies};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GfdScope {
    #[default]
    Connected,
    All,
}

impl FromStr for GfdScope {
    type Err = AnalyticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "connected" => Ok(GfdScope::Connected),
            "all" => Ok(GfdScope::All),
            _ => Err(AnalyticsError::Unknown(format!("unknown scope {s:?}"))),
        }
    }
}

/// Graphlet frequency distribution over the classes of one size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GfdVector {
    pub k: usize,
    pub scope: GfdScope,
    #[serde(serialize_with = "class_ids")]
    pub classes: Vec<GraphletClass>,
    pub values: Vec<f64>,
    /// Set when every selected count is zero; `values` is then all zeros.
    pub all_zero: bool,
}

fn class_ids<S: serde::Serializer>(classes: &[GraphletClass], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(classes.iter().map(|c| c.id()))
}

pub fn gfd(freqs: &GraphletFrequencies, k: usize, scope: GfdScope) -> Result<GfdVector, AnalyticsError> {
    if k != 3 && k != 4 {
        return Err(AnalyticsError::InvalidK(k));
    }
    let classes = match scope {
        GfdScope::Connected => GraphletClass::connected_of_size(k),
        GfdScope::All => GraphletClass::of_size(k),
    }
    .to_vec();
    let total: u128 = classes.iter().map(|&c| freqs.get(c)).sum();
    let all_zero = total == 0;
    let values = classes
        .iter()
        .map(|&c| if all_zero { 0.0 } else { freqs.get(c) as f64 / total as f64 })
        .collect();
    Ok(GfdVector { k, scope, classes, values, all_zero })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMetric {
    #[default]
    Euclidean,
    Cosine,
}

impl FromStr for DistanceMetric {
    type Err = AnalyticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euclidean" => Ok(DistanceMetric::Euclidean),
            "cosine" => Ok(DistanceMetric::Cosine),
            _ => Err(AnalyticsError::Unknown(format!("unknown metric {s:?}"))),
        }
    }
}

/// Distance between two distributions of the same size and scope.
///
/// Cosine distance is `1 - cos`; two all-zero vectors are at distance 0 and an
/// all-zero vector is at distance 1 from any other.
pub fn gfd_distance(a: &GfdVector, b: &GfdVector, metric: DistanceMetric) -> Result<f64, AnalyticsError> {
    if a.k != b.k || a.scope != b.scope || a.values.len() != b.values.len() {
        return Err(AnalyticsError::Mismatch);
    }
    let d = match metric {
        DistanceMetric::Euclidean => a.values.iter().zip(&b.values).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt(),
        DistanceMetric::Cosine => {
            let dot: f64 = a.values.iter().zip(&b.values).map(|(x, y)| x * y).sum();
            let na = a.values.iter().map(|x| x * x).sum::<f64>().sqrt();
            let nb = b.values.iter().map(|x| x * x).sum::<f64>().sqrt();
            match (na == 0.0, nb == 0.0) {
                (true, true) => 0.0,
                (true, false) | (false, true) => 1.0,
                _ if a.values == b.values => 0.0,
                _ => (1.0 - dot / (na * nb)).max(0.0),
            }
        }
    };
    Ok(d)
}
