//! Online trainer: a mistake-driven perceptron generalized to min-of-K
//! affine models.
//!
//! Each sample is routed to the facet achieving the minimum value (ties to
//! the least index); if the sign of that value disagrees with the label,
//! only that facet's weights receive a perceptron update.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::model::{Label, LabeledSample, PolyhedralModel};
use crate::rng::{initial_weights, seeded_stream};

/// Configuration for [`train_online`].
#[derive(Debug, Clone, PartialEq)]
pub struct OnlineConfig {
    /// Number of facets (affine pieces) in the model.
    pub k: usize,
    /// Maximum passes over the data. A pass with zero mistakes ends
    /// training early (the model would never change again under the same
    /// visiting order).
    pub passes: usize,
    /// Update magnitude (the perceptron learning rate).
    pub step: f64,
    /// Seed for the random initial weights (and the shuffles, if enabled).
    pub seed: u64,
    /// Reshuffle the visiting order before every pass. Off by default:
    /// fixed order makes runs easier to compare and keeps the zero-mistake
    /// early stop exact.
    pub shuffle_each_pass: bool,
}

impl OnlineConfig {
    /// Defaults: `passes = 300`, `step = 1`, `seed = 0`, no shuffling.
    pub fn new(k: usize) -> OnlineConfig {
        OnlineConfig {
            k,
            passes: 300,
            step: 1.0,
            seed: 0,
            shuffle_each_pass: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if self.passes == 0 {
            return Err(Error::InvalidConfig("passes must be at least 1".into()));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::InvalidConfig("step must be positive".into()));
        }
        Ok(())
    }
}

/// Per-pass mistake counts from an online training run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MistakeCurve {
    counts: Vec<usize>,
}

impl MistakeCurve {
    /// Mistake count of each completed pass, in order.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Whether the final pass made zero mistakes (the run converged).
    pub fn is_converged(&self) -> bool {
        self.counts.last() == Some(&0)
    }
}

/// What a single online step did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OnlineStep {
    /// Whether the active facet's weights were updated.
    pub updated: bool,
    /// The 0-based index of the facet that handled the sample.
    pub active: usize,
}

/// Process one sample: route it to the active (argmin, least-index-on-tie)
/// facet, and if the predicted sign disagrees with the label, move that
/// facet by `step * y * x_aug`.
///
/// The mistake test is prediction mismatch: a zero decision value predicts
/// `+1`, so a positive sample sitting exactly on the boundary is correct
/// and triggers no update.
///
/// # Panics
/// If the sample's dimension differs from the model's.
pub fn online_step(model: &mut PolyhedralModel, sample: &LabeledSample, step: f64) -> OnlineStep {
    let r = model.active_index(&sample.features);
    let value = model.facet_value(r, &sample.features);
    let predicted = Label::from_sign(value);
    if predicted == sample.label {
        return OnlineStep {
            updated: false,
            active: r,
        };
    }
    let c = step * sample.label.sign();
    let dim = sample.features.len();
    let w = &mut model.weights_mut()[r];
    for (wi, &xi) in w.iter_mut().zip(&sample.features) {
        *wi += c * xi;
    }
    w[dim] += c;
    OnlineStep {
        updated: true,
        active: r,
    }
}

/// Train a `cfg.k`-facet model on `data` with mistake-driven updates.
///
/// Weights start at small random values drawn from `cfg.seed`. Returns the
/// final model and the per-pass mistake curve. Training ends after
/// `cfg.passes` passes, or earlier at the first pass with zero mistakes.
///
/// # Errors
/// On empty data, inconsistent dimensions, or invalid configuration.
pub fn train_online(
    data: &[LabeledSample],
    cfg: &OnlineConfig,
) -> Result<(PolyhedralModel, MistakeCurve)> {
    let first = data.first().ok_or(Error::EmptyDataset)?;
    let dim = first.dim();
    for s in data {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: s.dim(),
            });
        }
    }
    cfg.validate()?;

    let mut model = PolyhedralModel::from_weights(initial_weights(dim, cfg.k, cfg.seed))?;
    // Stream 1 keeps shuffle draws independent of the initial weights
    // (stream 0), so toggling the shuffle never changes the start point.
    let mut shuffle_rng = seeded_stream(cfg.seed, 1);
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut curve = MistakeCurve::default();
    for _ in 0..cfg.passes {
        if cfg.shuffle_each_pass {
            order.shuffle(&mut shuffle_rng);
        }
        let mut mistakes = 0;
        for &i in &order {
            if online_step(&mut model, &data[i], cfg.step).updated {
                mistakes += 1;
            }
        }
        curve.counts.push(mistakes);
        if mistakes == 0 {
            break;
        }
    }
    Ok((model, curve))
}
