//! Batch trainer: alternate between assigning samples to facets and running
//! perceptron-style gradient steps on each facet's subproblem.
//!
//! Each outer iteration freezes the argmin partition of the data, then takes
//! `inner_steps` gradient steps per facet against that partition (mistake
//! sets are recomputed between steps as the weights move). Training stops
//! when the sum of per-facet gradient norms, measured at the frozen
//! partition before any update, falls below `gamma`.

use crate::error::{Error, Result};
use crate::model::{dot_aug, LabeledSample, Partition, PolyhedralModel};
use crate::rng::initial_weights;

/// Configuration for [`train_batch`].
#[derive(Debug, Clone, PartialEq)]
pub struct BatchConfig {
    /// Number of facets (affine pieces) in the model.
    pub k: usize,
    /// Gradient step size.
    pub eta: f64,
    /// Stop when the sum of per-facet gradient L2 norms drops below this.
    /// Scale-dependent: it is compared against unnormalized gradient sums,
    /// so small datasets or small feature scales warrant smaller values.
    pub gamma: f64,
    /// Hard cap on outer iterations.
    pub max_outer_iters: usize,
    /// Gradient steps per facet within one frozen partition.
    pub inner_steps: usize,
    /// Seed for the random initial weights.
    pub seed: u64,
}

impl BatchConfig {
    /// Defaults: `eta = 0.1`, `gamma = 50`, `max_outer_iters = 1000`,
    /// `inner_steps = 20`, `seed = 0`.
    pub fn new(k: usize) -> BatchConfig {
        BatchConfig {
            k,
            eta: 0.1,
            gamma: 50.0,
            max_outer_iters: 1000,
            inner_steps: 20,
            seed: 0,
        }
    }

    fn validate(&self, data_dim: usize) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(Error::InvalidConfig("eta must be positive".into()));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::InvalidConfig("gamma must be non-negative".into()));
        }
        if self.max_outer_iters == 0 || self.inner_steps == 0 {
            return Err(Error::InvalidConfig(
                "max_outer_iters and inner_steps must be at least 1".into(),
            ));
        }
        if data_dim == 0 {
            return Err(Error::InvalidSample(
                "samples must have dimension >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// One outer iteration's measurements, taken at the frozen partition before
/// that iteration's weight updates.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    /// Polyhedral criterion (sum of violation magnitudes) at iteration start.
    pub criterion: f64,
    /// Sum over facets of the L2 norm of the per-set gradient.
    pub gradient_norm_sum: f64,
    /// Partition cell sizes, facet by facet.
    pub set_sizes: Vec<usize>,
}

/// Per-iteration history of a batch training run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BatchTrace {
    records: Vec<TraceRecord>,
}

impl BatchTrace {
    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Criterion values in iteration order.
    pub fn criteria(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.criterion).collect()
    }
}

/// Gradient of the criterion restricted to facet `k` under the given frozen
/// partition: `-sum y_n x_aug_n` over samples assigned to `k` whose margin
/// against facet `k` is a mistake (`y_n * (w_k . x_aug_n) <= 0`).
///
/// # Panics
/// If `k >= partition.k()` or the partition length differs from `data`.
pub fn per_set_gradient(
    model: &PolyhedralModel,
    partition: &Partition,
    data: &[LabeledSample],
    k: usize,
) -> Vec<f64> {
    assert!(k < partition.k(), "facet index out of range");
    assert_eq!(
        partition.len(),
        data.len(),
        "partition/data length mismatch"
    );
    let w = &model.weights()[k];
    let dim = model.dim();
    // Accumulate sum of y * x_aug in data order, then negate: keeps the
    // floating-point evaluation order fixed for reproducibility.
    let mut acc = vec![0.0f64; dim + 1];
    for (sample, &cell) in data.iter().zip(partition.assignment()) {
        if cell != k {
            continue;
        }
        let y = sample.label.sign();
        if y * dot_aug(w, &sample.features) <= 0.0 {
            for (a, &x) in acc.iter_mut().zip(&sample.features) {
                *a += y * x;
            }
            acc[dim] += y;
        }
    }
    for a in &mut acc {
        *a = -*a;
    }
    acc
}

fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Stop-test measurements at the current weights: frozen partition,
/// per-facet gradients there, and the trace record summarizing both.
fn measure(
    model: &PolyhedralModel,
    data: &[LabeledSample],
    k: usize,
) -> (Partition, Vec<Vec<f64>>, TraceRecord) {
    let partition = model.partition(data);
    let gradients: Vec<Vec<f64>> = (0..k)
        .map(|j| per_set_gradient(model, &partition, data, j))
        .collect();
    let record = TraceRecord {
        criterion: model.criterion(data),
        gradient_norm_sum: gradients.iter().map(|g| l2_norm(g)).sum(),
        set_sizes: partition.set_sizes(),
    };
    (partition, gradients, record)
}

/// Run one outer iteration's inner updates against a frozen partition.
/// The first step per facet reuses the gradient measured for the stop test;
/// later steps recompute it as that facet's weights move.
fn apply_inner_steps(
    model: &mut PolyhedralModel,
    partition: &Partition,
    data: &[LabeledSample],
    cfg: &BatchConfig,
    first_gradients: &[Vec<f64>],
) {
    for (k, first) in first_gradients.iter().enumerate() {
        for step in 0..cfg.inner_steps {
            let recomputed;
            let g = if step == 0 {
                first
            } else {
                recomputed = per_set_gradient(model, partition, data, k);
                &recomputed
            };
            let w = &mut model.weights_mut()[k];
            for (wi, gi) in w.iter_mut().zip(g) {
                *wi -= cfg.eta * gi;
            }
        }
    }
}

/// One outer iteration from an explicit starting model: freeze the argmin
/// partition, apply the inner gradient steps, and return the updated model
/// together with the gradient-norm sum measured before the updates.
///
/// # Errors
/// On empty data, dimension mismatches, or invalid configuration.
pub fn batch_step(
    model: &PolyhedralModel,
    data: &[LabeledSample],
    cfg: &BatchConfig,
) -> Result<(PolyhedralModel, f64)> {
    validate_data(data)?;
    cfg.validate(data[0].dim())?;
    if model.k() != cfg.k {
        return Err(Error::InvalidConfig(format!(
            "model has {} facets but config says {}",
            model.k(),
            cfg.k
        )));
    }
    if model.dim() != data[0].dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            got: data[0].dim(),
        });
    }
    let mut next = model.clone();
    let (partition, gradients, record) = measure(&next, data, cfg.k);
    apply_inner_steps(&mut next, &partition, data, cfg, &gradients);
    Ok((next, record.gradient_norm_sum))
}

fn validate_data(data: &[LabeledSample]) -> Result<()> {
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
    Ok(())
}

/// Train a `cfg.k`-facet model on `data` by alternating minimization.
///
/// Weights start at small random values drawn from `cfg.seed`. Returns the
/// final model and one [`TraceRecord`] per completed outer iteration,
/// including the final measurement-only iteration at which the stopping
/// rule fired.
///
/// # Errors
/// On empty data, inconsistent dimensions, or invalid configuration.
pub fn train_batch(
    data: &[LabeledSample],
    cfg: &BatchConfig,
) -> Result<(PolyhedralModel, BatchTrace)> {
    validate_data(data)?;
    let dim = data[0].dim();
    cfg.validate(dim)?;

    let mut model = PolyhedralModel::from_weights(initial_weights(dim, cfg.k, cfg.seed))?;
    let mut trace = BatchTrace::default();
    for _ in 0..cfg.max_outer_iters {
        // Measure first, so the stop test sees the pre-update state; the
        // updates run only when the test fails, making the last record a
        // measurement-only iteration when the rule fires.
        let (partition, gradients, record) = measure(&model, data, cfg.k);
        let gradient_norm_sum = record.gradient_norm_sum;
        trace.records.push(record);
        if gradient_norm_sum < cfg.gamma {
            break;
        }
        apply_inner_steps(&mut model, &partition, data, cfg, &gradients);
    }
    Ok((model, trace))
}
