//! Brute-force polyhedral-separability oracle.
//!
//! A dataset is polyhedrally separable with `k` facets when some min-of-k
//! affine model classifies it perfectly. Only negatives need assigning:
//! every facet must be non-negative on every positive sample (the min over
//! facets has to be), while each negative sample only needs one facet that
//! is negative on it. The oracle therefore enumerates all `k^m` assignments
//! of the `m` negatives to facets, and solves each facet's induced linear
//! subproblem — all positives versus that facet's negatives — with a
//! capped perceptron.
//!
//! Designed for tiny instances (tests, ground truth for the trainers): the
//! enumeration is exponential in the number of negatives and refuses to
//! start past 10^7 assignments.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{dot_aug, Label, LabeledSample, PolyhedralModel};

/// Outcome of a separability query.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityWitness {
    /// Whether a perfect `k`-facet model was found.
    pub separable: bool,
    /// The separating model, when one was found.
    pub model: Option<PolyhedralModel>,
    /// For each negative sample (by its index in the input data), the
    /// 1-based facet certifying it, when a model was found.
    pub assignment: Option<BTreeMap<usize, usize>>,
    /// True when at least one linear subproblem hit the perceptron's update
    /// cap, so its feasibility is unknown and was treated as "not
    /// separable". A `separable = false` result with this flag set is
    /// inconclusive rather than a proof.
    pub cap_exhausted: bool,
}

/// Test whether a single affine function can be non-negative on all of
/// `positives` and strictly negative on all of `negatives`, by running a
/// perceptron (from zero weights, unit steps, on augmented vectors) until
/// a clean pass or until `cap` updates have been spent.
///
/// Returns the found augmented weight vector `[w, b]` on success. The
/// strictness on negatives uses a tolerance scaled to the data
/// (`1e-9 * max_n ||x_aug_n||`), so "negative" means `<= -eps`.
///
/// # Panics
/// If both slices are empty or dimensions are inconsistent.
pub fn is_linearly_separable(
    positives: &[Vec<f64>],
    negatives: &[Vec<f64>],
    cap: usize,
) -> (bool, Option<Vec<f64>>) {
    assert!(
        !(positives.is_empty() && negatives.is_empty()),
        "need at least one point"
    );
    let dim = positives
        .first()
        .or_else(|| negatives.first())
        .unwrap()
        .len();
    for x in positives.iter().chain(negatives) {
        assert_eq!(x.len(), dim, "inconsistent point dimensions");
    }

    let max_aug_norm = positives
        .iter()
        .chain(negatives)
        .map(|x| (x.iter().map(|v| v * v).sum::<f64>() + 1.0).sqrt())
        .fold(0.0f64, f64::max);
    let eps = 1e-9 * max_aug_norm;

    let mut w = vec![0.0f64; dim + 1];
    let mut updates = 0;
    loop {
        let mut clean = true;
        for x in positives {
            // Requirement: w . x_aug >= 0.
            if dot_aug(&w, x) < 0.0 {
                if updates >= cap {
                    return (false, None);
                }
                for (wi, &xi) in w.iter_mut().zip(x) {
                    *wi += xi;
                }
                w[dim] += 1.0;
                updates += 1;
                clean = false;
            }
        }
        for x in negatives {
            // Requirement: w . x_aug <= -eps (strictly negative).
            if dot_aug(&w, x) > -eps {
                if updates >= cap {
                    return (false, None);
                }
                for (wi, &xi) in w.iter_mut().zip(x) {
                    *wi -= xi;
                }
                w[dim] -= 1.0;
                updates += 1;
                clean = false;
            }
        }
        if clean {
            return (true, Some(w));
        }
    }
}

/// Search all assignments of negative samples to `k` facets for a perfect
/// min-of-`k` affine classifier.
///
/// Enumeration is lexicographic over assignment vectors (last negative
/// varies fastest), so results are reproducible. Each candidate assignment
/// is checked facet by facet and abandoned at the first infeasible facet.
/// `cap` bounds the perceptron updates spent on any single facet
/// subproblem.
///
/// # Errors
/// - [`Error::EmptyDataset`] for empty data.
/// - [`Error::DimensionMismatch`] for inconsistent sample dimensions.
/// - [`Error::InvalidConfig`] for `k = 0` or `cap = 0`.
/// - [`Error::EnumerationBudget`] when `k^m > 10^7` for `m` negatives.
pub fn is_polyhedrally_separable(
    data: &[LabeledSample],
    k: usize,
    cap: usize,
) -> Result<SeparabilityWitness> {
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
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    if cap == 0 {
        return Err(Error::InvalidConfig("cap must be at least 1".into()));
    }

    let positives: Vec<Vec<f64>> = data
        .iter()
        .filter(|s| s.label == Label::Positive)
        .map(|s| s.features.clone())
        .collect();
    let negative_indices: Vec<usize> = data
        .iter()
        .enumerate()
        .filter(|(_, s)| s.label == Label::Negative)
        .map(|(i, _)| i)
        .collect();
    let m = negative_indices.len();

    if (k as f64).powi(m as i32) > 1e7 {
        return Err(Error::EnumerationBudget { k, negatives: m });
    }

    // With no negatives, a single all-zero facet is non-negative everywhere
    // (min value 0, sign +1). Still run the subproblem solver so `cap`
    // semantics stay uniform.
    let mut assignment = vec![0usize; m];
    let mut cap_exhausted = false;
    loop {
        if let Some(facets) = try_assignment(
            data,
            &positives,
            &negative_indices,
            &assignment,
            k,
            cap,
            &mut cap_exhausted,
        ) {
            let model = PolyhedralModel::from_weights(facets)?;
            debug_assert!(data.iter().all(|s| model.classify(&s.features) == s.label));
            let map = negative_indices
                .iter()
                .zip(&assignment)
                .map(|(&i, &f)| (i, f + 1))
                .collect();
            return Ok(SeparabilityWitness {
                separable: true,
                model: Some(model),
                assignment: Some(map),
                cap_exhausted: false,
            });
        }
        // Lexicographic increment: bump the last position, carrying left.
        let mut pos = m;
        loop {
            if pos == 0 {
                return Ok(SeparabilityWitness {
                    separable: false,
                    model: None,
                    assignment: None,
                    cap_exhausted,
                });
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < k {
                break;
            }
            assignment[pos] = 0;
        }
    }
}

/// Solve the `k` facet subproblems induced by one assignment. Returns the
/// facet weights on success; on the first infeasible facet, records
/// whether the failure was a cap exhaustion and gives up on the
/// assignment.
fn try_assignment(
    data: &[LabeledSample],
    positives: &[Vec<f64>],
    negative_indices: &[usize],
    assignment: &[usize],
    k: usize,
    cap: usize,
    cap_exhausted: &mut bool,
) -> Option<Vec<Vec<f64>>> {
    let dim = data[0].dim();
    let mut facets = Vec::with_capacity(k);
    for facet in 0..k {
        let negs: Vec<Vec<f64>> = negative_indices
            .iter()
            .zip(assignment)
            .filter(|(_, &a)| a == facet)
            .map(|(&i, _)| data[i].features.clone())
            .collect();
        if positives.is_empty() && negs.is_empty() {
            // Unconstrained facet (all-negative data, nothing assigned
            // here): the zero function satisfies both empty requirement
            // sets and never drags the min below another facet's witness.
            facets.push(vec![0.0; dim + 1]);
            continue;
        }
        let (ok, w) = is_linearly_separable(positives, &negs, cap);
        if !ok {
            // The perceptron only fails by exhausting its cap, so an
            // infeasible facet always means "unknown, treated as not
            // separable" for this assignment.
            *cap_exhausted = true;
            return None;
        }
        facets.push(w.expect("successful subproblem returns weights"));
    }
    Some(facets)
}
