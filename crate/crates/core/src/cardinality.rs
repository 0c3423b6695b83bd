//! Laws of the cardinality of random representatives.
//!
//! The cardinality of a representative of `X` is a sum of independent
//! Bernoulli variables with parameters `μ_X(e)` (a Poisson binomial law). Both
//! distributions here are built incrementally, one element at a time.

use serde::Serialize;

use crate::error::Result;
use crate::sets::{check_same_universe, FuzzySet};

/// `p[j] = Pr(|representative| = j)` for `j = 0..=m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CardinalityDistribution {
    probabilities: Vec<f64>,
}

impl CardinalityDistribution {
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Size of the underlying universe (`len - 1` of the probability vector).
    pub fn universe_size(&self) -> usize {
        self.probabilities.len() - 1
    }

    pub fn get(&self, cardinality: usize) -> f64 {
        self.probabilities.get(cardinality).copied().unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(j, p)| j as f64 * p)
            .sum()
    }

    /// `Σ_j p[j] · q(j)`; `q` must have one entry per cardinality.
    pub fn expectation(&self, q: &[f64]) -> f64 {
        debug_assert_eq!(q.len(), self.probabilities.len());
        self.probabilities.iter().zip(q).map(|(p, v)| p * v).sum()
    }
}

/// Poisson binomial law of `|representative_X|`, in `O(m²)` time.
pub fn cardinality_distribution(x: &FuzzySet) -> CardinalityDistribution {
    let m = x.len();
    let mut p = vec![0.0; m + 1];
    p[0] = 1.0;
    for (k, &g) in x.grades().iter().enumerate() {
        // After k elements only p[0..=k] is populated; walk down so that
        // p[j - 1] still holds the previous step's value.
        p[k + 1] = p[k] * g;
        for j in (1..=k).rev() {
            p[j] = p[j] * (1.0 - g) + p[j - 1] * g;
        }
        p[0] *= 1.0 - g;
    }
    CardinalityDistribution { probabilities: p }
}

/// Joint law of `(|Y₁ ∩ Y₂|, |Y₁|)` for independent representatives
/// `Y₁` of `X₁` and `Y₂` of `X₂`. Stored densely as an `(m+1)²` matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointCardinalityDistribution {
    size: usize,
    // row-major: index = intersection * (size + 1) + first
    probabilities: Vec<f64>,
}

impl JointCardinalityDistribution {
    pub fn universe_size(&self) -> usize {
        self.size
    }

    /// `Pr(|Y₁∩Y₂| = intersection ∧ |Y₁| = first)`.
    pub fn get(&self, intersection: usize, first: usize) -> f64 {
        if intersection > self.size || first > self.size {
            return 0.0;
        }
        self.probabilities[intersection * (self.size + 1) + first]
    }

    pub fn total_mass(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Law of `|Y₁|`.
    pub fn first_marginal(&self) -> CardinalityDistribution {
        let n = self.size + 1;
        CardinalityDistribution {
            probabilities: (0..n)
                .map(|c1| (0..n).map(|ci| self.get(ci, c1)).sum())
                .collect(),
        }
    }

    /// Law of `|Y₁ ∩ Y₂|`.
    pub fn intersection_marginal(&self) -> CardinalityDistribution {
        let n = self.size + 1;
        CardinalityDistribution {
            probabilities: self.probabilities.chunks(n).map(|row| row.iter().sum()).collect(),
        }
    }

    /// Nonzero cells as `(intersection, first, probability)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.size + 1;
        self.probabilities
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0.0)
            .map(move |(idx, &p)| (idx / n, idx % n, p))
    }
}

/// Joint cardinality law in `O(m³)` time.
///
/// Per element, the pair of memberships falls in one of four cases: in both
/// (`μ₁μ₂`), in `Y₁` only (`μ₁(1-μ₂)`), or outside `Y₁` (`1-μ₁`, which
/// leaves both counters unchanged).
pub fn joint_cardinality_distribution(
    x1: &FuzzySet,
    x2: &FuzzySet,
) -> Result<JointCardinalityDistribution> {
    check_same_universe(x1.len(), x2.len())?;
    let m = x1.len();
    let n = m + 1;
    let mut q = vec![0.0; n * n];
    q[0] = 1.0;
    for (k, (&g1, &g2)) in x1.grades().iter().zip(x2.grades()).enumerate() {
        let both = g1 * g2;
        let first_only = g1 * (1.0 - g2);
        let outside = 1.0 - g1;
        // Populated region before this step: ci <= c1 <= k.
        for c1 in (0..=k + 1).rev() {
            for ci in (0..=c1).rev() {
                let mut v = 0.0;
                if c1 <= k {
                    v += q[ci * n + c1] * outside;
                }
                if c1 >= 1 && ci < c1 {
                    v += q[ci * n + c1 - 1] * first_only;
                }
                if c1 >= 1 && ci >= 1 {
                    v += q[(ci - 1) * n + c1 - 1] * both;
                }
                q[ci * n + c1] = v;
            }
        }
    }
    Ok(JointCardinalityDistribution {
        size: m,
        probabilities: q,
    })
}
