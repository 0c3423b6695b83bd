//! Evaluation of a semi-fuzzy quantifier on fuzzy arguments.
//!
//! The value is the expectation of the quantifier over independent crisp
//! representatives of the arguments:
//!
//! ```text
//! Σ_{Y₁..Yₙ ⊆ E} m_{X₁}(Y₁) ··· m_{Xₙ}(Yₙ) · Q(Y₁, .., Yₙ)
//! ```
//!
//! [`eval_exact`] computes the sum directly (`2^(n·m)` kernel calls). The
//! dynamic-programming evaluators reduce quantitative kernels to
//! cardinality laws and run in polynomial time. [`eval_limit`] is the `O(m)`
//! large-universe approximation for proportional kernels.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cardinality::{cardinality_distribution, joint_cardinality_distribution};
use crate::error::{Error, Result};
use crate::number::FuzzyNumber;
use crate::quantifier::{Kernel, SemiFuzzyQuantifier};
use crate::sets::{check_same_universe, mass_table, CrispSet, FuzzySet};

/// Exact evaluation is refused above `2^24` kernel calls.
pub const MAX_EXACT_BITS: usize = 24;

/// Largest universe for which `auto` routes unary kernels to the `O(m²)` DP.
pub const AUTO_UNARY_DP_MAX: usize = 20_000;

/// Largest universe for which `auto` routes binary kernels to the `O(m³)` DP.
pub const AUTO_BINARY_DP_MAX: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[default]
    Auto,
    Exact,
    Dp,
    Limit,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "exact" => Ok(Strategy::Exact),
            "dp" => Ok(Strategy::Dp),
            "limit" => Ok(Strategy::Limit),
            other => Err(format!("unknown strategy `{other}` (expected auto, exact, dp or limit)")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::Exact => "exact",
            Strategy::Dp => "dp",
            Strategy::Limit => "limit",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluator {
    Exact,
    UnaryDp,
    BinaryProportionalDp,
    BinaryAbsoluteDp,
    Limit,
}

impl fmt::Display for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Evaluator::Exact => "exact",
            Evaluator::UnaryDp => "unary_dp",
            Evaluator::BinaryProportionalDp => "binary_proportional_dp",
            Evaluator::BinaryAbsoluteDp => "binary_absolute_dp",
            Evaluator::Limit => "limit",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalRecord {
    pub value: f64,
    pub evaluator: Evaluator,
    #[serde(serialize_with = "serialize_seconds")]
    pub elapsed: Duration,
    pub warning: Option<String>,
}

fn serialize_seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

/// Result of the limit approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate {
    pub value: f64,
    /// Set when a binary proportional kernel met an all-zero first argument
    /// and the empty-set value was returned.
    pub empty_fallback: bool,
}

fn check_args(q: &SemiFuzzyQuantifier, args: &[&FuzzySet]) -> Result<()> {
    if args.len() != q.arity() {
        return Err(Error::ArityMismatch {
            expected: q.arity(),
            found: args.len(),
        });
    }
    for x in args {
        check_same_universe(q.universe_size(), x.len())?;
    }
    Ok(())
}

#[inline]
fn unit_clamp(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Exact evaluation, single-threaded.
pub fn eval_exact(q: &SemiFuzzyQuantifier, args: &[&FuzzySet]) -> Result<f64> {
    eval_exact_with_threads(q, args, 1)
}

/// Exact evaluation with the outer sum split over `threads` contiguous ranges
/// of the first argument's representatives.
///
/// Each range is summed sequentially and the partial sums are added in range
/// order, so the result depends on `threads` but is reproducible for a given
/// value.
pub fn eval_exact_with_threads(
    q: &SemiFuzzyQuantifier,
    args: &[&FuzzySet],
    threads: usize,
) -> Result<f64> {
    check_args(q, args)?;
    let m = q.universe_size();
    let bits = q.arity() * m;
    if bits > MAX_EXACT_BITS {
        return Err(Error::SizeGuard {
            bits,
            limit: MAX_EXACT_BITS,
        });
    }
    if q.arity() == 0 {
        return check_kernel_value(q.value(&[]));
    }

    // Representatives with zero mass contribute nothing; drop them up front.
    let supports: Vec<Vec<(u64, f64)>> = args
        .iter()
        .map(|x| {
            mass_table(x).map(|table| {
                table
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, w)| w != 0.0)
                    .map(|(bits, w)| (bits as u64, w))
                    .collect()
            })
        })
        .collect::<Result<_>>()?;

    let first = &supports[0];
    let threads = threads.clamp(1, first.len().max(1));
    let chunk = first.len().div_ceil(threads).max(1);
    let partials: Vec<Result<f64>> = if threads == 1 {
        vec![sum_range(q, &supports, first)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = first
                .chunks(chunk)
                .map(|range| scope.spawn(|| sum_range(q, &supports, range)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("exact evaluation worker panicked"))
                .collect()
        })
    };
    let mut total = 0.0;
    for partial in partials {
        total += partial?;
    }
    Ok(unit_clamp(total))
}

fn sum_range(
    q: &SemiFuzzyQuantifier,
    supports: &[Vec<(u64, f64)>],
    first_range: &[(u64, f64)],
) -> Result<f64> {
    let m = q.universe_size();
    let n = supports.len();
    let mut buf = vec![CrispSet::raw(0, m); n];
    let mut total = 0.0;
    let mut bad = None;
    for &(bits, w) in first_range {
        buf[0] = CrispSet::raw(bits, m);
        total += w * nested_sum(q, supports, 1, &mut buf, &mut bad);
    }
    match bad {
        Some(value) => Err(Error::InvalidQuantifierValue { value }),
        None => Ok(total),
    }
}

fn nested_sum(
    q: &SemiFuzzyQuantifier,
    supports: &[Vec<(u64, f64)>],
    level: usize,
    buf: &mut [CrispSet],
    bad: &mut Option<f64>,
) -> f64 {
    let m = q.universe_size();
    if level == supports.len() {
        let v = q.value(buf);
        if !(0.0..=1.0).contains(&v) {
            *bad = Some(v);
        }
        return v;
    }
    let mut total = 0.0;
    for &(bits, w) in &supports[level] {
        buf[level] = CrispSet::raw(bits, m);
        total += w * nested_sum(q, supports, level + 1, buf, bad);
    }
    total
}

fn check_kernel_value(v: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(Error::InvalidQuantifierValue { value: v })
    }
}

/// `Σ_j Pr(|Y| = j) · q(j)` for a unary quantitative kernel.
pub fn eval_unary_dp(q: &SemiFuzzyQuantifier, x: &FuzzySet) -> Result<f64> {
    let Kernel::UnaryQuantitative { table, .. } = q.kernel() else {
        return Err(Error::KernelMismatch {
            evaluator: "unary_dp",
            kernel: q.kernel().kind(),
        });
    };
    check_same_universe(q.universe_size(), x.len())?;
    Ok(unit_clamp(cardinality_distribution(x).expectation(table)))
}

/// Binary proportional kernel evaluated over the joint law of
/// `(|Y₁∩Y₂|, |Y₁|)`.
pub fn eval_binary_proportional_dp(
    q: &SemiFuzzyQuantifier,
    x1: &FuzzySet,
    x2: &FuzzySet,
) -> Result<f64> {
    let Kernel::BinaryProportional { number, empty_case } = q.kernel() else {
        return Err(Error::KernelMismatch {
            evaluator: "binary_proportional_dp",
            kernel: q.kernel().kind(),
        });
    };
    check_same_universe(q.universe_size(), x1.len())?;
    let joint = joint_cardinality_distribution(x1, x2)?;
    let m = joint.universe_size();
    let mut total = joint.get(0, 0) * empty_case;
    for first in 1..=m {
        let denom = first as f64;
        for meet in 0..=first {
            let p = joint.get(meet, first);
            if p != 0.0 {
                total += p * number.value(meet as f64 / denom);
            }
        }
    }
    Ok(unit_clamp(total))
}

/// Binary absolute kernel: `|Y₁∩Y₂|` is the cardinality of a representative
/// of the product intersection `X₁ ⊓ X₂`.
pub fn eval_binary_absolute_dp(
    q: &SemiFuzzyQuantifier,
    x1: &FuzzySet,
    x2: &FuzzySet,
) -> Result<f64> {
    let Kernel::BinaryAbsolute { number } = q.kernel() else {
        return Err(Error::KernelMismatch {
            evaluator: "binary_absolute_dp",
            kernel: q.kernel().kind(),
        });
    };
    check_same_universe(q.universe_size(), x1.len())?;
    let meet = x1.product_intersection(x2)?;
    let law = cardinality_distribution(&meet);
    let total = law
        .probabilities()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != 0.0)
        .map(|(c, p)| p * number.value(c as f64))
        .sum();
    Ok(unit_clamp(total))
}

fn continuous(number: &FuzzyNumber) -> Result<&FuzzyNumber> {
    if number.is_continuous() {
        Ok(number)
    } else {
        Err(Error::DiscontinuousNumber(number.to_string()))
    }
}

/// Large-universe approximation for proportional kernels: the number applied
/// to the mean grade (unary) or to `Σμ_{X₁⊓X₂} / Σμ_{X₁}` (binary).
pub fn eval_limit(q: &SemiFuzzyQuantifier, args: &[&FuzzySet]) -> Result<LimitEstimate> {
    check_args(q, args)?;
    match q.kernel() {
        Kernel::UnaryQuantitative {
            proportional: Some(number),
            ..
        } => {
            let number = continuous(number)?;
            let mean = args[0].mean().ok_or(Error::EmptyUniverse)?;
            Ok(LimitEstimate {
                value: number.value(mean),
                empty_fallback: false,
            })
        }
        Kernel::BinaryProportional { number, empty_case } => {
            let number = continuous(number)?;
            if q.universe_size() == 0 {
                return Err(Error::EmptyUniverse);
            }
            let (x1, x2) = (args[0], args[1]);
            let first: f64 = x1.sigma_count();
            if first == 0.0 {
                return Ok(LimitEstimate {
                    value: *empty_case,
                    empty_fallback: true,
                });
            }
            let meet: f64 = x1
                .grades()
                .iter()
                .zip(x2.grades())
                .map(|(a, b)| a * b)
                .sum();
            Ok(LimitEstimate {
                value: number.value(meet / first),
                empty_fallback: false,
            })
        }
        other => Err(Error::KernelMismatch {
            evaluator: "limit",
            kernel: other.kind(),
        }),
    }
}

fn limit_applies(q: &SemiFuzzyQuantifier) -> bool {
    match q.kernel() {
        Kernel::UnaryQuantitative {
            proportional: Some(n),
            ..
        }
        | Kernel::BinaryProportional { number: n, .. } => n.is_continuous(),
        _ => false,
    }
}

fn run_dp(q: &SemiFuzzyQuantifier, args: &[&FuzzySet]) -> Result<(f64, Evaluator)> {
    check_args(q, args)?;
    match q.kernel() {
        Kernel::UnaryQuantitative { .. } => Ok((eval_unary_dp(q, args[0])?, Evaluator::UnaryDp)),
        Kernel::BinaryProportional { .. } => Ok((
            eval_binary_proportional_dp(q, args[0], args[1])?,
            Evaluator::BinaryProportionalDp,
        )),
        Kernel::BinaryAbsolute { .. } => Ok((
            eval_binary_absolute_dp(q, args[0], args[1])?,
            Evaluator::BinaryAbsoluteDp,
        )),
        other => Err(Error::KernelMismatch {
            evaluator: "dp",
            kernel: other.kind(),
        }),
    }
}

fn dp_bound(q: &SemiFuzzyQuantifier) -> Option<usize> {
    match q.kernel() {
        Kernel::UnaryQuantitative { .. } | Kernel::BinaryAbsolute { .. } => Some(AUTO_UNARY_DP_MAX),
        Kernel::BinaryProportional { .. } => Some(AUTO_BINARY_DP_MAX),
        _ => None,
    }
}

/// Evaluates with the requested strategy and records which evaluator ran.
///
/// `Auto` prefers the DP when the kernel is quantitative and the universe is
/// within the DP bound, then the exact evaluator within its size guard, then
/// the limit approximation (flagged with a warning).
pub fn evaluate(q: &SemiFuzzyQuantifier, args: &[&FuzzySet], strategy: Strategy) -> Result<EvalRecord> {
    evaluate_with_threads(q, args, strategy, 1)
}

pub fn evaluate_with_threads(
    q: &SemiFuzzyQuantifier,
    args: &[&FuzzySet],
    strategy: Strategy,
    threads: usize,
) -> Result<EvalRecord> {
    check_args(q, args)?;
    let start = Instant::now();
    let m = q.universe_size();
    let exact_fits = q.arity() * m <= MAX_EXACT_BITS;
    let (value, evaluator, warning) = match strategy {
        Strategy::Exact => (eval_exact_with_threads(q, args, threads)?, Evaluator::Exact, None),
        Strategy::Dp => {
            let (v, e) = run_dp(q, args)?;
            (v, e, None)
        }
        Strategy::Limit => {
            let est = eval_limit(q, args)?;
            (est.value, Evaluator::Limit, limit_warning(&est))
        }
        Strategy::Auto => match dp_bound(q) {
            Some(bound) if m <= bound => {
                let (v, e) = run_dp(q, args)?;
                (v, e, None)
            }
            _ if exact_fits => (eval_exact_with_threads(q, args, threads)?, Evaluator::Exact, None),
            _ if limit_applies(q) => {
                let est = eval_limit(q, args)?;
                let note = format!(
                    "limit approximation used: universe of {m} elements exceeds the exact and DP bounds"
                );
                let warning = match limit_warning(&est) {
                    Some(w) => format!("{note}; {w}"),
                    None => note,
                };
                (est.value, Evaluator::Limit, Some(warning))
            }
            Some(_) => {
                let (v, e) = run_dp(q, args)?;
                (v, e, Some(format!("DP on a universe of {m} elements may be slow")))
            }
            None => {
                return Err(Error::NoApplicableEvaluator(format!(
                    "{} kernel with arity {} on {m} elements exceeds the exact size guard",
                    q.kernel().kind(),
                    q.arity()
                )))
            }
        },
    };
    Ok(EvalRecord {
        value,
        evaluator,
        elapsed: start.elapsed(),
        warning,
    })
}

fn limit_warning(est: &LimitEstimate) -> Option<String> {
    est.empty_fallback
        .then(|| "first argument has zero total grade; returned the empty-set value".to_string())
}

/// A semi-fuzzy quantifier lifted to fuzzy arguments, together with the
/// strategy used to evaluate it.
#[derive(Debug, Clone)]
pub struct FuzzyQuantifier {
    quantifier: SemiFuzzyQuantifier,
    strategy: Strategy,
}

impl FuzzyQuantifier {
    pub fn new(quantifier: SemiFuzzyQuantifier, strategy: Strategy) -> Self {
        FuzzyQuantifier {
            quantifier,
            strategy,
        }
    }

    pub fn quantifier(&self) -> &SemiFuzzyQuantifier {
        &self.quantifier
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn arity(&self) -> usize {
        self.quantifier.arity()
    }

    pub fn eval(&self, args: &[&FuzzySet]) -> Result<f64> {
        Ok(self.eval_record(args)?.value)
    }

    pub fn eval_record(&self, args: &[&FuzzySet]) -> Result<EvalRecord> {
        evaluate(&self.quantifier, args, self.strategy)
    }

    /// The underlying semi-fuzzy quantifier: this fuzzy quantifier restricted
    /// to crisp arguments. Evaluation errors surface as NaN.
    pub fn underlying(&self) -> Result<SemiFuzzyQuantifier> {
        let this = self.clone();
        SemiFuzzyQuantifier::from_fn(
            format!("U({})", self.quantifier.name()),
            self.arity(),
            self.quantifier.universe_size(),
            move |args| {
                let sets: Vec<FuzzySet> = args.iter().map(FuzzySet::from_crisp).collect();
                let refs: Vec<&FuzzySet> = sets.iter().collect();
                this.eval(&refs).unwrap_or(f64::NAN)
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(g: &[f64]) -> FuzzySet {
        FuzzySet::new(g.to_vec()).unwrap()
    }

    fn nearly_all(m: usize) -> SemiFuzzyQuantifier {
        let number = FuzzyNumber::sampled(vec![(0.5, 0.0), (1.0, 1.0)]).unwrap();
        SemiFuzzyQuantifier::binary_proportional(number, 1.0, m).unwrap()
    }

    #[test]
    fn nearly_all_workers_example() {
        let x1 = fs(&[0.8, 0.9, 1.0, 0.2]);
        let x2 = fs(&[1.0, 0.8, 0.3, 0.1]);
        let q = nearly_all(4);
        let exact = eval_exact(&q, &[&x1, &x2]).unwrap();
        // enumerated independently over all 256 representative pairs
        assert!((exact - 0.345_925_333_333_333_3).abs() < 1e-12);
        assert!((exact - 0.346).abs() < 5e-4);
        let dp = eval_binary_proportional_dp(&q, &x1, &x2).unwrap();
        assert!((dp - exact).abs() < 1e-12);
    }

    #[test]
    fn unary_examples() {
        let x = fs(&[0.8, 0.2, 0.6]);
        let exists = SemiFuzzyQuantifier::exists(3);
        let forall = SemiFuzzyQuantifier::forall(3);
        let identity = SemiFuzzyQuantifier::identity(3).unwrap();
        assert!((eval_unary_dp(&exists, &x).unwrap() - 0.936).abs() < 1e-12);
        assert!((eval_unary_dp(&forall, &x).unwrap() - 0.096).abs() < 1e-12);
        assert!((eval_unary_dp(&identity, &x).unwrap() - 1.6 / 3.0).abs() < 1e-12);
        assert!((eval_exact(&identity, &[&x]).unwrap() - 1.6 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn crisp_inputs_give_kernel_value() {
        let q = nearly_all(4);
        let y1 = CrispSet::from_indices(4, [0, 1, 2]).unwrap();
        let y2 = CrispSet::from_indices(4, [0, 1]).unwrap();
        let (x1, x2) = (FuzzySet::from_crisp(&y1), FuzzySet::from_crisp(&y2));
        let expected = q.value(&[y1, y2]);
        assert_eq!(eval_exact(&q, &[&x1, &x2]).unwrap(), expected);
        assert_eq!(eval_binary_proportional_dp(&q, &x1, &x2).unwrap(), expected);
        assert_eq!(eval_limit(&q, &[&x1, &x2]).unwrap().value, expected);
    }

    #[test]
    fn zero_first_argument_gives_empty_case() {
        let q = nearly_all(3);
        let x1 = fs(&[0.0; 3]);
        let x2 = fs(&[0.4, 0.5, 0.6]);
        assert_eq!(eval_binary_proportional_dp(&q, &x1, &x2).unwrap(), 1.0);
        let est = eval_limit(&q, &[&x1, &x2]).unwrap();
        assert!(est.empty_fallback);
        assert_eq!(est.value, 1.0);
    }

    #[test]
    fn kernel_mismatch() {
        let x = fs(&[0.5, 0.5]);
        let q = SemiFuzzyQuantifier::some(2).unwrap();
        assert!(matches!(eval_unary_dp(&q, &x), Err(Error::KernelMismatch { .. })));
        assert!(matches!(
            eval_binary_proportional_dp(&q, &x, &x),
            Err(Error::KernelMismatch { .. })
        ));
        let p = SemiFuzzyQuantifier::projection(0, 2).unwrap();
        assert!(matches!(evaluate(&p, &[&x], Strategy::Dp), Err(Error::KernelMismatch { .. })));
    }

    #[test]
    fn limit_rejects_crisp_steps() {
        let x = fs(&[0.5, 0.5]);
        let q = SemiFuzzyQuantifier::exists(2);
        assert!(matches!(eval_limit(&q, &[&x]), Err(Error::DiscontinuousNumber(_))));
    }

    #[test]
    fn limit_at_the_mean() {
        let s = FuzzyNumber::smooth_step(0.3, 0.6).unwrap();
        for m in [1, 7, 50] {
            let q = SemiFuzzyQuantifier::unary_proportional(s.clone(), m).unwrap();
            let x = FuzzySet::constant(m, 0.5).unwrap();
            assert!((eval_limit(&q, &[&x]).unwrap().value - 7.0 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn size_guard() {
        let q = SemiFuzzyQuantifier::constant(1, 25, 0.5).unwrap();
        let x = FuzzySet::constant(25, 0.5).unwrap();
        assert_eq!(
            eval_exact(&q, &[&x]),
            Err(Error::SizeGuard { bits: 25, limit: 24 })
        );
        let q2 = SemiFuzzyQuantifier::constant(1, 24, 0.5).unwrap();
        let x2 = FuzzySet::constant(24, 0.5).unwrap();
        assert!((eval_exact(&q2, &[&x2]).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn dispatcher_routing() {
        let x = fs(&[0.3, 0.6, 0.9]);
        let exists = SemiFuzzyQuantifier::exists(3);
        let r = evaluate(&exists, &[&x], Strategy::Auto).unwrap();
        assert_eq!(r.evaluator, Evaluator::UnaryDp);
        let r = evaluate(&exists, &[&x], Strategy::Exact).unwrap();
        assert_eq!(r.evaluator, Evaluator::Exact);

        let proj = SemiFuzzyQuantifier::projection(1, 3).unwrap();
        let r = evaluate(&proj, &[&x], Strategy::Auto).unwrap();
        assert_eq!(r.evaluator, Evaluator::Exact);
        assert!((r.value - 0.6).abs() < 1e-12);

        let big = SemiFuzzyQuantifier::constant(1, 25, 0.5).unwrap();
        let xb = FuzzySet::constant(25, 0.5).unwrap();
        assert!(matches!(
            evaluate(&big, &[&xb], Strategy::Auto),
            Err(Error::NoApplicableEvaluator(_))
        ));

        let s = FuzzyNumber::smooth_step(0.3, 0.6).unwrap();
        let q = SemiFuzzyQuantifier::binary_proportional(s, 1.0, 1500).unwrap();
        let x1 = FuzzySet::constant(1500, 0.5).unwrap();
        let r = evaluate(&q, &[&x1, &x1], Strategy::Auto).unwrap();
        assert_eq!(r.evaluator, Evaluator::Limit);
        assert!(r.warning.is_some());

        let some = SemiFuzzyQuantifier::some(3).unwrap();
        let r = evaluate(&some, &[&x, &x], Strategy::Auto).unwrap();
        assert_eq!(r.evaluator, Evaluator::BinaryAbsoluteDp);
    }

    #[test]
    fn threaded_exact_matches_sequential() {
        let q = nearly_all(6);
        let x1 = fs(&[0.8, 0.9, 0.35, 0.2, 0.55, 0.7]);
        let x2 = fs(&[1.0, 0.8, 0.3, 0.1, 0.65, 0.05]);
        let seq = eval_exact(&q, &[&x1, &x2]).unwrap();
        for threads in [2, 3, 8] {
            let par = eval_exact_with_threads(&q, &[&x1, &x2], threads).unwrap();
            assert!((par - seq).abs() < 1e-14);
            assert_eq!(par, eval_exact_with_threads(&q, &[&x1, &x2], threads).unwrap());
        }
    }

    #[test]
    fn underlying_quantifier_reproduces_kernel() {
        let q = SemiFuzzyQuantifier::all(3).unwrap();
        let fq = FuzzyQuantifier::new(q.clone(), Strategy::Exact);
        let u = fq.underlying().unwrap();
        for args in q.crisp_tuples().unwrap() {
            assert_eq!(u.value(&args), q.value(&args));
        }
    }

    #[test]
    fn nullary_quantifier() {
        let q = SemiFuzzyQuantifier::constant(0, 3, 0.25).unwrap();
        assert_eq!(eval_exact(&q, &[]).unwrap(), 0.25);
    }

    #[test]
    fn rejects_out_of_range_kernel() {
        let q = SemiFuzzyQuantifier::from_fn("bad", 1, 2, |a| a[0].cardinality() as f64).unwrap();
        let x = fs(&[0.5, 0.5]);
        assert!(matches!(eval_exact(&q, &[&x]), Err(Error::InvalidQuantifierValue { .. })));
    }
}
