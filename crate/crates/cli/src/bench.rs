//! Cross-validation of the exact evaluator against the DP and limit
//! evaluators on seeded random instances.

use std::time::Instant;

use probquant::{
    eval_binary_proportional_dp, eval_exact, eval_limit, eval_unary_dp, FuzzyNumber, FuzzySet,
    SemiFuzzyQuantifier,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::failure::Failure;

/// Exact evaluation is timed only up to this many kernel-call bits.
const EXACT_BITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub m_min: usize,
    pub m_max: usize,
    pub trials: usize,
    pub seed: u64,
}

/// One CSV row. `max_abs_diff` is measured against the exact evaluator on
/// the same instances and is empty when exact evaluation was skipped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub m: usize,
    pub evaluator: &'static str,
    pub mean_elapsed: f64,
    pub max_abs_diff: Option<f64>,
}

/// Parses `A:B` (inclusive) or a single size `A`.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("range `{s}` must satisfy 1 <= A <= B"));
    }
    Ok((lo, hi))
}

fn random_set(rng: &mut ChaCha8Rng, m: usize) -> FuzzySet {
    FuzzySet::new((0..m).map(|_| rng.random()).collect()).expect("uniform grades lie in [0, 1)")
}

fn random_step(rng: &mut ChaCha8Rng) -> FuzzyNumber {
    let alpha: f64 = rng.random_range(0.0..0.6);
    let gamma = alpha + rng.random_range(0.1..0.4);
    FuzzyNumber::smooth_step(alpha, gamma).expect("alpha < gamma")
}

struct Series {
    evaluator: &'static str,
    elapsed: f64,
    max_diff: Option<f64>,
}

impl Series {
    fn new(evaluator: &'static str) -> Self {
        Series {
            evaluator,
            elapsed: 0.0,
            max_diff: None,
        }
    }

    fn add(&mut self, elapsed: f64, diff: Option<f64>) {
        self.elapsed += elapsed;
        if let Some(d) = diff {
            self.max_diff = Some(self.max_diff.map_or(d, |cur: f64| cur.max(d)));
        }
    }

    fn row(self, m: usize, trials: usize, has_reference: bool) -> BenchRow {
        BenchRow {
            m,
            evaluator: self.evaluator,
            mean_elapsed: self.elapsed / trials as f64,
            max_abs_diff: if has_reference { self.max_diff.or(Some(0.0)) } else { None },
        }
    }
}

fn timed<T>(f: impl FnOnce() -> probquant::Result<T>) -> Result<(T, f64), Failure> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_secs_f64()))
}

pub fn run(config: &BenchConfig) -> Result<Vec<BenchRow>, Failure> {
    if config.trials == 0 {
        return Err(Failure::parse("--trials must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::new();
    for m in config.m_min..=config.m_max {
        let unary_exact = m <= EXACT_BITS;
        let binary_exact = 2 * m <= EXACT_BITS;
        let mut series = [
            Series::new("exact_unary"),
            Series::new("unary_dp"),
            Series::new("limit_unary"),
            Series::new("exact_binary_proportional"),
            Series::new("binary_proportional_dp"),
            Series::new("limit_binary_proportional"),
        ];
        for _ in 0..config.trials {
            let x1 = random_set(&mut rng, m);
            let x2 = random_set(&mut rng, m);

            let q = SemiFuzzyQuantifier::unary_proportional(random_step(&mut rng), m)?;
            let exact = if unary_exact {
                let (v, t) = timed(|| eval_exact(&q, &[&x1]))?;
                series[0].add(t, None);
                Some(v)
            } else {
                None
            };
            let (dp, t) = timed(|| eval_unary_dp(&q, &x1))?;
            series[1].add(t, exact.map(|e| (dp - e).abs()));
            let (lim, t) = timed(|| eval_limit(&q, &[&x1]))?;
            series[2].add(t, exact.map(|e| (lim.value - e).abs()));

            let q2 = SemiFuzzyQuantifier::binary_proportional(random_step(&mut rng), 1.0, m)?;
            let exact = if binary_exact {
                let (v, t) = timed(|| eval_exact(&q2, &[&x1, &x2]))?;
                series[3].add(t, None);
                Some(v)
            } else {
                None
            };
            let (dp, t) = timed(|| eval_binary_proportional_dp(&q2, &x1, &x2))?;
            series[4].add(t, exact.map(|e| (dp - e).abs()));
            let (lim, t) = timed(|| eval_limit(&q2, &[&x1, &x2]))?;
            series[5].add(t, exact.map(|e| (lim.value - e).abs()));
        }
        for (i, s) in series.into_iter().enumerate() {
            let (has_exact, has_reference) = if i < 3 {
                (unary_exact, unary_exact && i > 0)
            } else {
                (binary_exact, binary_exact && i > 3)
            };
            if (i == 0 || i == 3) && !has_exact {
                continue;
            }
            rows.push(s.row(m, config.trials, has_reference));
        }
    }
    Ok(rows)
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Failure::other(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
