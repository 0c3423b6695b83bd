//! Large-universe applications: quantification over sampled signals and over
//! populations described by samples of a distribution.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evaluate::{eval_limit, eval_unary_dp, AUTO_UNARY_DP_MAX};
use crate::number::FuzzyNumber;
use crate::quantifier::SemiFuzzyQuantifier;
use crate::sets::FuzzySet;

/// Signal values on the uniform grid `tᵢ = t₀ + i·h`, `h = (t₁ - t₀) / m`,
/// `i = 0..m` (left endpoints of the `m` cells).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledSignal {
    t0: f64,
    t1: f64,
    samples: Vec<f64>,
}

impl SampledSignal {
    pub fn new(t0: f64, t1: f64, samples: Vec<f64>) -> Result<Self> {
        if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
            return Err(Error::InvalidSignal(format!(
                "time bounds must be finite with t0 < t1, got [{t0}, {t1}]"
            )));
        }
        if samples.is_empty() {
            return Err(Error::EmptyInput("signal samples"));
        }
        if let Some(v) = samples.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal(format!("non-finite sample {v}")));
        }
        Ok(SampledSignal { t0, t1, samples })
    }

    /// Samples `f` at the left endpoints of `m` equal cells of `[t0, t1]`.
    pub fn from_fn(t0: f64, t1: f64, m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let h = (t1 - t0) / m as f64;
        SampledSignal::new(t0, t1, (0..m).map(|i| f(t0 + i as f64 * h)).collect())
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn step(&self) -> f64 {
        (self.t1 - self.t0) / self.samples.len() as f64
    }

    /// Value at time `t` by linear interpolation between grid points, held
    /// constant past the last sample.
    pub fn at(&self, t: f64) -> f64 {
        let pos = ((t - self.t0) / self.step()).max(0.0);
        let i = pos.floor() as usize;
        let last = self.samples.len() - 1;
        if i >= last {
            return self.samples[last];
        }
        let frac = pos - i as f64;
        self.samples[i] * (1.0 - frac) + self.samples[i + 1] * frac
    }

    /// The signal on a grid of `m` cells. Returns a copy when `m` equals the
    /// current sample count.
    pub fn resample(&self, m: usize) -> Result<SampledSignal> {
        if m == 0 {
            return Err(Error::EmptyInput("grid"));
        }
        if m == self.samples.len() {
            return Ok(self.clone());
        }
        let h = (self.t1 - self.t0) / m as f64;
        SampledSignal::new(
            self.t0,
            self.t1,
            (0..m).map(|i| self.at(self.t0 + i as f64 * h)).collect(),
        )
    }

    /// Applies a label to every sample, giving a fuzzy set over the grid.
    pub fn fuzzify(&self, label: &FuzzyNumber) -> Result<FuzzySet> {
        fuzzify(&self.samples, label)
    }
}

fn fuzzify(values: &[f64], label: &FuzzyNumber) -> Result<FuzzySet> {
    let grades = values.iter().map(|&v| label.eval(v)).collect::<Result<Vec<_>>>()?;
    FuzzySet::new(grades)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TemporalResult {
    /// Exact value on the grid; `None` when the grid exceeds the DP bound.
    pub dp_value: Option<f64>,
    pub limit_value: f64,
    pub grid: usize,
}

/// Evaluates "Q of the time, the signal is `label`" on a grid of `grid` cells.
pub fn temporal_quantify(
    signal: &SampledSignal,
    label: &FuzzyNumber,
    quantifier: &FuzzyNumber,
    grid: usize,
) -> Result<TemporalResult> {
    let x = signal.resample(grid)?.fuzzify(label)?;
    let q = SemiFuzzyQuantifier::unary_proportional(quantifier.clone(), grid)?;
    let limit_value = eval_limit(&q, &[&x])?.value;
    let dp_value = if grid <= AUTO_UNARY_DP_MAX {
        Some(eval_unary_dp(&q, &x)?)
    } else {
        None
    };
    Ok(TemporalResult {
        dp_value,
        limit_value,
        grid,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PopulationResult {
    pub limit_value: f64,
    /// Mean label value over the samples: an estimate of `∫ p(x) label(x) dx`.
    pub fuzzy_event_probability: f64,
    pub samples: usize,
}

/// Evaluates "Q of the population is `label`" from samples of the
/// population distribution.
pub fn population_quantify(
    samples: &[f64],
    label: &FuzzyNumber,
    quantifier: &FuzzyNumber,
) -> Result<PopulationResult> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("population samples"));
    }
    if !quantifier.is_continuous() {
        return Err(Error::DiscontinuousNumber(quantifier.to_string()));
    }
    let x = fuzzify(samples, label)?;
    let p = x.mean().ok_or(Error::EmptyUniverse)?;
    Ok(PopulationResult {
        limit_value: quantifier.value(p),
        fuzzy_event_probability: p,
        samples: samples.len(),
    })
}
