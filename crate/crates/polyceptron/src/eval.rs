//! Evaluation harness: accuracy, repeated stratified k-fold
//! cross-validation, and mistake-curve export.

use std::fmt;
use std::fs;
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::batch::{train_batch, BatchConfig};
use crate::error::{Error, Result};
use crate::model::{Label, LabeledSample, PolyhedralModel};
use crate::online::{train_online, MistakeCurve, OnlineConfig};
use crate::rng::seeded_stream;

/// Which trainer cross-validation should run, with its configuration.
///
/// The config's own `seed` field is ignored by [`k_fold_cv`]: every
/// training run gets a seed derived from the harness seed, so the whole
/// experiment is reproducible from one number.
#[derive(Debug, Clone, PartialEq)]
pub enum Trainer {
    Batch(BatchConfig),
    Online(OnlineConfig),
}

impl Trainer {
    fn train(&self, data: &[LabeledSample], seed: u64) -> Result<PolyhedralModel> {
        match self {
            Trainer::Batch(cfg) => {
                let mut cfg = cfg.clone();
                cfg.seed = seed;
                train_batch(data, &cfg).map(|(model, _)| model)
            }
            Trainer::Online(cfg) => {
                let mut cfg = cfg.clone();
                cfg.seed = seed;
                train_online(data, &cfg).map(|(model, _)| model)
            }
        }
    }
}

impl fmt::Display for Trainer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trainer::Batch(c) => write!(
                f,
                "batch k={} eta={} gamma={} max_outer_iters={} inner_steps={}",
                c.k, c.eta, c.gamma, c.max_outer_iters, c.inner_steps
            ),
            Trainer::Online(c) => write!(
                f,
                "online k={} passes={} step={} shuffle_each_pass={}",
                c.k, c.passes, c.step, c.shuffle_each_pass
            ),
        }
    }
}

/// Results of one repeated cross-validation experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub folds: usize,
    pub repeats: usize,
    /// The harness seed everything else was derived from.
    pub seed: u64,
    /// `accuracies[repeat][fold]`, each in `[0, 1]`.
    pub accuracies: Vec<Vec<f64>>,
    /// Wall-clock seconds of each training call, `[repeat][fold]`.
    pub train_seconds: Vec<Vec<f64>>,
    /// Human-readable echo of the trainer configuration.
    pub config: String,
    /// When the experiment ran (seconds since the Unix epoch). Excluded
    /// from any output comparison; everything else is deterministic.
    pub unix_timestamp: u64,
}

impl CvReport {
    /// Mean accuracy of each repeat, in repeat order.
    pub fn repeat_means(&self) -> Vec<f64> {
        self.accuracies
            .iter()
            .map(|fold_accs| fold_accs.iter().sum::<f64>() / fold_accs.len() as f64)
            .collect()
    }

    /// Arithmetic mean of the per-repeat means.
    pub fn mean_accuracy(&self) -> f64 {
        let means = self.repeat_means();
        means.iter().sum::<f64>() / means.len() as f64
    }

    /// Sample standard deviation (ddof = 1) over the per-repeat means;
    /// `0` when there is a single repeat.
    pub fn std_over_repeats(&self) -> f64 {
        sample_std(&self.repeat_means())
    }

    /// Mean wall-clock seconds per training call.
    pub fn mean_train_seconds(&self) -> f64 {
        let all: Vec<f64> = self.train_seconds.iter().flatten().copied().collect();
        all.iter().sum::<f64>() / all.len() as f64
    }

    /// Sample standard deviation of wall-clock seconds per training call.
    pub fn std_train_seconds(&self) -> f64 {
        let all: Vec<f64> = self.train_seconds.iter().flatten().copied().collect();
        sample_std(&all)
    }

    /// Write the flat key-value text report.
    pub fn write_report(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        out.push_str(&format!("folds {}\n", self.folds));
        out.push_str(&format!("repeats {}\n", self.repeats));
        out.push_str(&format!("seed {}\n", self.seed));
        out.push_str(&format!("config {}\n", self.config));
        out.push_str(&format!("mean_accuracy {:.6}\n", self.mean_accuracy()));
        out.push_str(&format!("std_accuracy {:.6}\n", self.std_over_repeats()));
        out.push_str(&format!(
            "mean_train_seconds {:.6}\n",
            self.mean_train_seconds()
        ));
        out.push_str(&format!(
            "std_train_seconds {:.6}\n",
            self.std_train_seconds()
        ));
        out.push_str(&format!("unix_timestamp {}\n", self.unix_timestamp));
        fs::write(path, out)?;
        Ok(())
    }

    /// Write the per-fold accuracies as CSV with 1-based repeat and fold
    /// indices: `repeat,fold,accuracy`.
    pub fn write_fold_csv(&self, path: &Path) -> Result<()> {
        let mut out = String::from("repeat,fold,accuracy\n");
        for (r, fold_accs) in self.accuracies.iter().enumerate() {
            for (f, acc) in fold_accs.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", r + 1, f + 1, acc));
            }
        }
        fs::write(path, out)?;
        Ok(())
    }
}

fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var =
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64;
    var.sqrt()
}

/// Fraction of samples the model classifies correctly.
///
/// # Errors
/// [`Error::EmptyDataset`] on empty data.
pub fn accuracy(model: &PolyhedralModel, data: &[LabeledSample]) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let correct = data
        .iter()
        .filter(|s| model.classify(&s.features) == s.label)
        .count();
    Ok(correct as f64 / data.len() as f64)
}

/// Split sample indices into `folds` stratified folds: shuffle each class's
/// indices with `rng`, then deal them round-robin. Per-fold class counts
/// differ by at most 1 from perfect proportion.
fn stratified_folds(
    data: &[LabeledSample],
    folds: usize,
    rng: &mut impl Rng,
) -> Result<Vec<Vec<usize>>> {
    let mut fold_sets: Vec<Vec<usize>> = vec![Vec::new(); folds];
    for label in [Label::Positive, Label::Negative] {
        let mut class_indices: Vec<usize> = data
            .iter()
            .enumerate()
            .filter(|(_, s)| s.label == label)
            .map(|(i, _)| i)
            .collect();
        if class_indices.is_empty() {
            continue;
        }
        class_indices.shuffle(rng);
        for (i, idx) in class_indices.iter().enumerate() {
            fold_sets[i % folds].push(*idx);
        }
        // Present classes must reach at least two folds, or the training
        // split complementary to their only fold would miss them entirely.
        let occupied = fold_sets
            .iter()
            .filter(|f| f.iter().any(|&i| data[i].label == label));
        if occupied.count() < 2 {
            return Err(Error::Stratification(format!(
                "class {} has too few samples to appear in every training \
                 split ({} sample(s) across {} folds)",
                label.to_int(),
                class_indices.len(),
                folds
            )));
        }
    }
    if let Some(empty) = fold_sets.iter().position(|f| f.is_empty()) {
        return Err(Error::Stratification(format!(
            "fold {} received no samples; use fewer folds",
            empty + 1
        )));
    }
    Ok(fold_sets)
}

/// Repeated stratified k-fold cross-validation.
///
/// For each repeat, the data is re-split with a repeat-specific derived
/// seed; for each fold, the trainer runs on the other `folds - 1` folds
/// with its own derived seed and is scored on the held-out fold. All
/// derived seeds come from `seed` alone, so identical inputs reproduce the
/// report exactly (timestamp aside).
///
/// # Errors
/// Invalid fold/repeat counts, datasets smaller than the fold count, a
/// class so rare it vanishes from some training split, or any trainer
/// error.
pub fn k_fold_cv(
    data: &[LabeledSample],
    trainer: &Trainer,
    folds: usize,
    repeats: usize,
    seed: u64,
) -> Result<CvReport> {
    if folds < 2 {
        return Err(Error::InvalidConfig("folds must be at least 2".into()));
    }
    if repeats == 0 {
        return Err(Error::InvalidConfig("repeats must be at least 1".into()));
    }
    if data.len() < folds {
        return Err(Error::InvalidConfig(format!(
            "need at least as many samples as folds ({} < {})",
            data.len(),
            folds
        )));
    }

    // One trainer seed per (repeat, fold), drawn up front from a dedicated
    // stream so fold runs could execute in any order (or in parallel)
    // without changing results.
    let mut seed_rng = seeded_stream(seed, 2);
    let train_seeds: Vec<Vec<u64>> = (0..repeats)
        .map(|_| (0..folds).map(|_| seed_rng.gen()).collect())
        .collect();

    let mut accuracies = Vec::with_capacity(repeats);
    let mut train_seconds = Vec::with_capacity(repeats);
    for (r, repeat_seeds) in train_seeds.iter().enumerate() {
        let mut shuffle_rng = seeded_stream(seed, 100 + r as u64);
        let fold_sets = stratified_folds(data, folds, &mut shuffle_rng)?;
        let mut fold_accs = Vec::with_capacity(folds);
        let mut fold_secs = Vec::with_capacity(folds);
        for f in 0..folds {
            let train_data: Vec<LabeledSample> = fold_sets
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != f)
                .flat_map(|(_, fold)| fold.iter().map(|&i| data[i].clone()))
                .collect();
            let test_data: Vec<LabeledSample> =
                fold_sets[f].iter().map(|&i| data[i].clone()).collect();
            let started = Instant::now();
            let model = trainer.train(&train_data, repeat_seeds[f])?;
            fold_secs.push(started.elapsed().as_secs_f64());
            fold_accs.push(accuracy(&model, &test_data)?);
        }
        accuracies.push(fold_accs);
        train_seconds.push(fold_secs);
    }

    Ok(CvReport {
        folds,
        repeats,
        seed,
        accuracies,
        train_seconds,
        config: trainer.to_string(),
        unix_timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    })
}

/// Write a mistake curve as two-column CSV rows `pass_index,mistakes`,
/// with `pass_index` starting at 1. One row per pass, no header.
///
/// # Errors
/// [`Error::InvalidConfig`] for an empty curve; IO errors pass through.
pub fn mistake_curve_export(curve: &MistakeCurve, path: &Path) -> Result<()> {
    if curve.is_empty() {
        return Err(Error::InvalidConfig(
            "refusing to export an empty mistake curve".into(),
        ));
    }
    let mut out = String::new();
    for (i, count) in curve.counts().iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, count));
    }
    fs::write(path, out)?;
    Ok(())
}
