use std::collections::HashSet;

use crate::geometry::RationalVector;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("instance has no points")]
    Empty,
    #[error("points must have positive dimension")]
    ZeroDimension,
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("{labels} labels given for {points} points")]
    LabelCount { labels: usize, points: usize },
}

/// Ordered list of points spanning `conv(p_1..p_n)`. Order is part of the
/// identity: every tie is broken towards the smaller index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    points: Vec<RationalVector>,
    labels: Vec<String>,
    norms_squared: Vec<Rational>,
    dim: usize,
}

impl Instance {
    /// Points labelled `p1, p2, ...`.
    pub fn new(points: Vec<RationalVector>) -> Result<Self, InstanceError> {
        let labels = (1..=points.len()).map(|i| format!("p{i}")).collect();
        Self::with_labels(points, labels)
    }

    /// Exact duplicates are dropped (first occurrence kept) with a warning.
    pub fn with_labels(points: Vec<RationalVector>, labels: Vec<String>) -> Result<Self, InstanceError> {
        if labels.len() != points.len() {
            return Err(InstanceError::LabelCount {
                labels: labels.len(),
                points: points.len(),
            });
        }
        let dim = points.first().ok_or(InstanceError::Empty)?.dim();
        if dim == 0 {
            return Err(InstanceError::ZeroDimension);
        }
        if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| p.dim() != dim) {
            return Err(InstanceError::DimensionMismatch {
                index,
                expected: dim,
                found: p.dim(),
            });
        }
        let mut seen = HashSet::new();
        let mut kept_points = Vec::with_capacity(points.len());
        let mut kept_labels = Vec::with_capacity(points.len());
        for (p, label) in points.into_iter().zip(labels) {
            if seen.insert(p.clone()) {
                kept_points.push(p);
                kept_labels.push(label);
            } else {
                log::warn!("dropping duplicate point {label} = {p}");
            }
        }
        let norms_squared = kept_points.iter().map(RationalVector::norm_squared).collect();
        Ok(Self {
            points: kept_points,
            labels: kept_labels,
            norms_squared,
            dim,
        })
    }

    pub fn points(&self) -> &[RationalVector] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &RationalVector {
        &self.points[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn norm_squared(&self, i: usize) -> &Rational {
        &self.norms_squared[i]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `{p1, p2}`-style rendering of an index set.
    pub fn format_set(&self, indices: &[usize]) -> String {
        let names: Vec<&str> = indices.iter().map(|&i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}
