//! Seeded generators for polyhedrally separable synthetic datasets.
//!
//! Two fixed benchmark generators (`gen_dataset1`, `gen_dataset2`) sample
//! uniformly from a hypercube and label each point by a hard-coded
//! intersection of halfspaces, and `gen_random_polyhedron` builds random
//! instances with a controllable separation margin for tests.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::model::{Label, LabeledSample, PolyhedralModel};
use crate::rng::seeded_stream;

/// One halfspace `normal · x + offset >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// An intersection of halfspaces: the generating polyhedron for a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfspaceSet {
    halfspaces: Vec<Halfspace>,
}

impl HalfspaceSet {
    /// Build a set, requiring at least one halfspace, consistent dimensions,
    /// and finite coefficients.
    pub fn new(halfspaces: Vec<Halfspace>) -> Result<HalfspaceSet> {
        if halfspaces.is_empty() {
            return Err(Error::InvalidConfig(
                "a halfspace set needs at least one halfspace".into(),
            ));
        }
        let dim = halfspaces[0].normal.len();
        for hs in &halfspaces {
            if hs.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: hs.normal.len(),
                });
            }
            if !hs.offset.is_finite() || hs.normal.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig(
                    "halfspace coefficients must be finite".into(),
                ));
            }
        }
        Ok(HalfspaceSet { halfspaces })
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn dim(&self) -> usize {
        self.halfspaces[0].normal.len()
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        false // enforced non-empty at construction
    }

    /// `min_j (normal_j · x + offset_j)`: positive inside the polyhedron.
    pub fn margin_of(&self, x: &[f64]) -> f64 {
        self.halfspaces
            .iter()
            .map(|hs| hs.normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + hs.offset)
            .fold(f64::INFINITY, f64::min)
    }

    /// View the generating polyhedron as a classifier. It achieves accuracy
    /// 1.0 on any dataset it labeled.
    pub fn to_model(&self) -> PolyhedralModel {
        let weights = self
            .halfspaces
            .iter()
            .map(|hs| {
                let mut w = hs.normal.clone();
                w.push(hs.offset);
                w
            })
            .collect();
        PolyhedralModel::from_weights(weights).expect("validated at construction")
    }
}

/// Label points by the polyhedron: `+1` iff every halfspace is satisfied
/// (`normal · x + offset >= 0` for all), else `-1`.
///
/// # Panics
/// If any point's dimension differs from the halfspaces'.
pub fn label_by_polyhedron(hs: &HalfspaceSet, points: &[Vec<f64>]) -> Vec<LabeledSample> {
    points
        .iter()
        .map(|x| {
            assert_eq!(x.len(), hs.dim(), "point dimension mismatch");
            let label = if hs.margin_of(x) >= 0.0 {
                Label::Positive
            } else {
                Label::Negative
            };
            LabeledSample {
                features: x.clone(),
                label,
            }
        })
        .collect()
}

/// The three halfspaces of the 10-dimensional benchmark generator.
pub fn dataset1_halfspaces() -> HalfspaceSet {
    let all_ones = vec![1.0; 10];
    let alternating: Vec<f64> = (0..10)
        .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    let odd_positions: Vec<f64> = (0..10)
        .map(|i| if i % 2 == 0 { 1.0 } else { 0.0 })
        .collect();
    HalfspaceSet::new(vec![
        Halfspace {
            normal: all_ones,
            offset: 1.0,
        },
        Halfspace {
            normal: alternating,
            offset: 1.0,
        },
        Halfspace {
            normal: odd_positions,
            offset: 0.5,
        },
    ])
    .expect("static coefficients are valid")
}

/// The four halfspaces of the 20-dimensional benchmark generator.
pub fn dataset2_halfspaces() -> HalfspaceSet {
    #[rustfmt::skip]
    let rows: [(&[f64], f64); 4] = [
        (&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 8.0, 8.0,
           20.0, 8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0, 1.0], 20.0),
        (&[-1.0, 2.0, -3.0, 4.0, -5.0, 6.0, -7.0, 8.0, -9.0, 15.0,
           -11.0, 10.0, -9.0, 8.0, -7.0, 6.0, -5.0, 4.0, -3.0, 2.0], 15.0),
        (&[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 2.0, 0.0, 8.0,
           0.0, 2.0, 3.0, 0.0, 3.0, 3.0, 0.0, 4.0, 0.0, 4.0], 8.0),
        (&[1.0, -1.0, 0.0, 0.0, 2.0, -2.0, 0.0, 0.0, 6.0, -3.0,
           0.0, 0.0, 4.0, -4.0, 0.0, 0.0, 5.0, -5.0, 0.0, 0.0], 6.0),
    ];
    HalfspaceSet::new(
        rows.iter()
            .map(|(normal, offset)| Halfspace {
                normal: normal.to_vec(),
                offset: *offset,
            })
            .collect(),
    )
    .expect("static coefficients are valid")
}

fn uniform_cube_points(dim: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = seeded_stream(seed, 0);
    (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect())
        .collect()
}

/// `n` points uniform on `[-1, 1]^10`, labeled by [`dataset1_halfspaces`].
///
/// Deterministic in `(n, seed)`.
///
/// # Panics
/// If `n == 0`.
pub fn gen_dataset1(n: usize, seed: u64) -> Vec<LabeledSample> {
    assert!(n >= 1, "need at least one sample");
    let hs = dataset1_halfspaces();
    label_by_polyhedron(&hs, &uniform_cube_points(hs.dim(), n, seed))
}

/// `n` points uniform on `[-1, 1]^20`, labeled by [`dataset2_halfspaces`].
///
/// Deterministic in `(n, seed)`.
///
/// # Panics
/// If `n == 0`.
pub fn gen_dataset2(n: usize, seed: u64) -> Vec<LabeledSample> {
    assert!(n >= 1, "need at least one sample");
    let hs = dataset2_halfspaces();
    label_by_polyhedron(&hs, &uniform_cube_points(hs.dim(), n, seed))
}

/// A random polyhedron with a non-empty interior, plus `n` uniform points
/// labeled by it.
///
/// The `k` halfspaces are positioned so one random interior point satisfies
/// all of them with positive slack. Points with `|margin_of(x)| < margin`
/// are discarded and resampled, so `margin > 0` yields strictly separable
/// instances; `margin = 0` discards nothing.
///
/// # Errors
/// [`Error::Generation`] if `100 * n` consecutive draws fail the margin
/// test (degenerate polyhedron for the requested margin).
pub fn gen_random_polyhedron(
    dim: usize,
    k: usize,
    n: usize,
    margin: f64,
    seed: u64,
) -> Result<(HalfspaceSet, Vec<LabeledSample>)> {
    assert!(dim >= 1 && k >= 1 && n >= 1, "dim, k, n must be positive");
    assert!(
        margin >= 0.0 && margin.is_finite(),
        "margin must be non-negative"
    );
    let mut rng = seeded_stream(seed, 0);

    // Interior point, then unit normals with enough offset to keep the
    // point inside at depth 0.1..0.7.
    let interior: Vec<f64> = (0..dim).map(|_| rng.gen_range(-0.5..=0.5)).collect();
    let halfspaces: Vec<Halfspace> = (0..k)
        .map(|_| {
            let mut normal: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let norm = normal.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-12);
            for v in &mut normal {
                *v /= norm;
            }
            let depth = rng.gen_range(0.1..=0.7);
            let dot: f64 = normal.iter().zip(&interior).map(|(a, b)| a * b).sum();
            Halfspace {
                normal,
                offset: depth - dot,
            }
        })
        .collect();
    let hs = HalfspaceSet::new(halfspaces)?;

    let budget = 100 * n;
    let mut attempts = 0;
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        if attempts >= budget {
            return Err(Error::Generation { attempts });
        }
        attempts += 1;
        let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if hs.margin_of(&x).abs() < margin {
            continue;
        }
        points.push(x);
    }
    let labeled = label_by_polyhedron(&hs, &points);
    Ok((hs, labeled))
}
