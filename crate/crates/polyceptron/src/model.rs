//! Core domain types: labeled samples, the polyhedral model, its decision
//! function, the training criterion, and the argmin partition.
//!
//! A polyhedral model is an ordered list of K affine functions
//! `g_k(x) = w_k · x + b_k`. Its decision value is `h(x) = min_k g_k(x)` and
//! the predicted label is `sign(h(x))`, so the positive region is the convex
//! polyhedron where every affine function is non-negative.

use crate::error::{Error, Result};

/// Binary class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    /// The label as a sign, `+1.0` or `-1.0`.
    pub fn sign(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Negative => -1.0,
        }
    }

    /// Label for a decision value. Zero maps to `Positive`: the positive
    /// region is the closed set `h(x) >= 0`.
    pub fn from_sign(value: f64) -> Label {
        if value >= 0.0 {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    /// Parse the `{-1, +1}` integer convention.
    pub fn from_int(value: i64) -> Result<Label> {
        match value {
            1 => Ok(Label::Positive),
            -1 => Ok(Label::Negative),
            other => Err(Error::InvalidSample(format!(
                "label must be -1 or +1, got {other}"
            ))),
        }
    }

    /// The `{-1, +1}` integer convention.
    pub fn to_int(self) -> i64 {
        match self {
            Label::Positive => 1,
            Label::Negative => -1,
        }
    }
}

/// A feature vector with its binary label.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    pub features: Vec<f64>,
    pub label: Label,
}

impl LabeledSample {
    /// Build a sample, rejecting non-finite feature values.
    pub fn new(features: Vec<f64>, label: Label) -> Result<LabeledSample> {
        if let Some(i) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSample(format!("feature {i} is not finite")));
        }
        Ok(LabeledSample { features, label })
    }

    /// Number of features.
    pub fn dim(&self) -> usize {
        self.features.len()
    }
}

/// A feature vector in homogeneous coordinates: `[x_1, …, x_d, 1]`.
///
/// The trailing 1 lets a single weight vector `[w_1, …, w_d, b]` carry both
/// the normal and the offset of a hyperplane, so every update rule is a plain
/// vector operation.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedVector {
    entries: Vec<f64>,
}

impl AugmentedVector {
    /// Augment a raw feature vector with the trailing 1.
    pub fn from_features(features: &[f64]) -> AugmentedVector {
        let mut entries = Vec::with_capacity(features.len() + 1);
        entries.extend_from_slice(features);
        entries.push(1.0);
        AugmentedVector { entries }
    }

    /// All `d + 1` entries; the last is always exactly 1.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// The feature dimension `d` (one less than the stored length).
    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }
}

/// Augment a sample's features with the trailing 1.
pub fn augment(sample: &LabeledSample) -> AugmentedVector {
    AugmentedVector::from_features(&sample.features)
}

/// Dot product of an augmented weight vector `[w b]` with the implicit
/// augmentation `[x 1]` of a raw feature vector.
///
/// Bitwise identical to an explicit `(d+1)`-term dot product with a trailing
/// 1, because `b * 1.0 == b` exactly and the accumulation order matches.
pub(crate) fn dot_aug(weights: &[f64], features: &[f64]) -> f64 {
    debug_assert_eq!(weights.len(), features.len() + 1);
    let mut acc = 0.0;
    for (w, x) in weights.iter().zip(features) {
        acc += w * x;
    }
    acc + weights[features.len()]
}

/// A classifier of the form `sign(min_k (w_k · x + b_k))`.
///
/// Stored as K augmented weight vectors of length `d + 1` each
/// (`[w_k b_k]`). Hyperplane indices are 0-based in this API; serialized
/// artifacts and reports number them from 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralModel {
    weights: Vec<Vec<f64>>,
}

impl PolyhedralModel {
    /// Build a model from K augmented weight vectors of equal length `d + 1`.
    pub fn from_weights(weights: Vec<Vec<f64>>) -> Result<PolyhedralModel> {
        if weights.is_empty() {
            return Err(Error::InvalidConfig(
                "a model needs at least one hyperplane".into(),
            ));
        }
        let len = weights[0].len();
        if len < 2 {
            return Err(Error::InvalidConfig(
                "weight vectors must have at least two entries (w and b)".into(),
            ));
        }
        for (k, w) in weights.iter().enumerate() {
            if w.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    got: w.len(),
                });
            }
            if w.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "hyperplane {k} has a non-finite entry"
                )));
            }
        }
        Ok(PolyhedralModel { weights })
    }

    /// Number of hyperplanes K.
    pub fn k(&self) -> usize {
        self.weights.len()
    }

    /// Feature dimension d.
    pub fn dim(&self) -> usize {
        self.weights[0].len() - 1
    }

    /// The K augmented weight vectors `[w_k b_k]`.
    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub(crate) fn weights_mut(&mut self) -> &mut [Vec<f64>] {
        &mut self.weights
    }

    /// Value of hyperplane `k` at `x`: `w_k · x + b_k`.
    ///
    /// # Panics
    /// If `k` is out of range or `features.len() != self.dim()`.
    pub fn facet_value(&self, k: usize, features: &[f64]) -> f64 {
        assert_eq!(features.len(), self.dim(), "feature dimension mismatch");
        dot_aug(&self.weights[k], features)
    }

    /// The decision value `h(x) = min_k (w_k · x + b_k)`.
    ///
    /// # Panics
    /// If `features.len() != self.dim()`.
    pub fn decision_value(&self, features: &[f64]) -> f64 {
        assert_eq!(features.len(), self.dim(), "feature dimension mismatch");
        self.weights
            .iter()
            .map(|w| dot_aug(w, features))
            .fold(f64::INFINITY, f64::min)
    }

    /// Index of the hyperplane attaining the minimum, ties broken toward
    /// the smallest index.
    ///
    /// # Panics
    /// If `features.len() != self.dim()`.
    pub fn active_index(&self, features: &[f64]) -> usize {
        assert_eq!(features.len(), self.dim(), "feature dimension mismatch");
        let mut best = 0;
        let mut best_value = dot_aug(&self.weights[0], features);
        for (k, w) in self.weights.iter().enumerate().skip(1) {
            let value = dot_aug(w, features);
            if value < best_value {
                best = k;
                best_value = value;
            }
        }
        best
    }

    /// Predicted label, `sign(h(x))` with `sign(0) = +1`.
    ///
    /// # Panics
    /// If `features.len() != self.dim()`.
    pub fn classify(&self, features: &[f64]) -> Label {
        Label::from_sign(self.decision_value(features))
    }

    /// Assign every sample to its active hyperplane.
    ///
    /// # Panics
    /// If any sample's dimension differs from `self.dim()`.
    pub fn partition(&self, data: &[LabeledSample]) -> Partition {
        let assignment = data
            .iter()
            .map(|s| self.active_index(&s.features))
            .collect();
        Partition {
            assignment,
            k: self.k(),
        }
    }

    /// The training criterion: total violated margin,
    /// `E = -Σ_n y_n h(x_n)` over samples with `y_n h(x_n) < 0` (strictly).
    ///
    /// Always non-negative; zero exactly when no sample has a strictly
    /// negative margin. A zero-margin point contributes nothing here even
    /// though the trainers still treat it as a mistake.
    pub fn criterion(&self, data: &[LabeledSample]) -> f64 {
        let mut total = 0.0;
        for sample in data {
            let margin = sample.label.sign() * self.decision_value(&sample.features);
            if margin < 0.0 {
                total -= margin;
            }
        }
        total
    }
}

/// The assignment of samples to hyperplanes induced by a model: sample `n`
/// belongs to set `S_k` for `k = active_index(x_n)`.
///
/// The sets are pairwise disjoint and cover the dataset by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    assignment: Vec<usize>,
    k: usize,
}

impl Partition {
    /// Per-sample hyperplane index (0-based), in dataset order.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Number of hyperplanes this partition was computed against.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// `|S_k|` for every k.
    pub fn set_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &a in &self.assignment {
            sizes[a] += 1;
        }
        sizes
    }

    /// Indices of the samples assigned to hyperplane `k`, in dataset order.
    pub fn members_of(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(move |(_, &a)| a == k)
            .map(|(i, _)| i)
    }
}
