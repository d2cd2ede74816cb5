//! Polyhedral classifiers: models of the form `sign(min_k (w_k . x + b_k))`,
//! i.e. the positive class is an intersection of `K` halfspaces.
//!
//! The crate provides:
//!
//! - [`PolyhedralModel`]: the min-of-K affine decision function, with the
//!   boundary convention `sign(0) = +1`.
//! - [`train_batch`]: alternating minimization — freeze the argmin
//!   partition of the data, run perceptron-style gradient steps per facet,
//!   repeat until the gradient norms vanish.
//! - [`train_online`]: a mistake-driven perceptron that updates only the
//!   facet achieving the minimum on each sample.
//! - [`is_polyhedrally_separable`]: a brute-force oracle for tiny
//!   instances, enumerating assignments of negative samples to facets.
//! - [`gen_dataset1`] / [`gen_dataset2`] / [`gen_random_polyhedron`]:
//!   seeded synthetic data, labeled by known halfspace intersections.
//! - [`k_fold_cv`]: repeated stratified cross-validation with
//!   reproducible derived seeds, plus text/CSV reporting.
//! - [`io`]: plain-text dataset, model, and prediction file formats.
//!
//! Start with the `examples/` directory: each major capability has a
//! runnable example (`cargo run --example train_batch`, etc.). The same
//! operations are scriptable through the `polyceptron` binary.
//!
//! # Example
//!
//! ```
//! use polyceptron::{gen_dataset1, train_batch, accuracy, BatchConfig};
//!
//! let data = gen_dataset1(1000, 0);
//! let cfg = BatchConfig::new(3);
//! let (model, trace) = train_batch(&data, &cfg).unwrap();
//! assert!(accuracy(&model, &data).unwrap() > 0.8);
//! assert!(!trace.is_empty());
//! ```

pub mod batch;
pub mod datagen;
pub mod error;
pub mod eval;
pub mod io;
pub mod model;
pub mod online;
pub mod oracle;
mod rng;

pub use batch::{batch_step, per_set_gradient, train_batch, BatchConfig, BatchTrace, TraceRecord};
pub use datagen::{
    dataset1_halfspaces, dataset2_halfspaces, gen_dataset1, gen_dataset2, gen_random_polyhedron,
    label_by_polyhedron, Halfspace, HalfspaceSet,
};
pub use error::{Error, Result};
pub use eval::{accuracy, k_fold_cv, mistake_curve_export, CvReport, Trainer};
pub use model::{augment, AugmentedVector, Label, LabeledSample, Partition, PolyhedralModel};
pub use online::{online_step, train_online, MistakeCurve, OnlineConfig, OnlineStep};
pub use oracle::{is_linearly_separable, is_polyhedrally_separable, SeparabilityWitness};
pub use rng::initial_weights;
