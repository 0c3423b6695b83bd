//! Executable checks of the determiner-fuzzification axioms (Z-1 to Z-6) and
//! the further coherence properties of the probabilistic model, with the
//! exact evaluator as ground truth.
//!
//! Checks enumerate crisp tuples exhaustively where that is the statement,
//! and otherwise probe random fuzzy arguments drawn from a seeded generator
//! with grades on the grid `{0, 0.05, .., 1}`.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    dual, external_negation, extension_principle, fuzzy_arg_insertion, intersection_arg,
    internal_negation, precompose, union_arg, TruthFunction,
};
use crate::error::Result;
use crate::evaluate::{eval_exact, eval_limit, evaluate, Strategy};
use crate::number::FuzzyNumber;
use crate::quantifier::{Kernel, SemiFuzzyQuantifier};
use crate::sets::{CrispSet, FuzzySet};

const MAX_WITNESSES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub max_violation: f64,
    pub tolerance: f64,
    pub instances: usize,
    /// Instances whose violation exceeded the tolerance (at most five).
    pub witnesses: Vec<String>,
    /// Reason the check did not run.
    pub skipped: Option<String>,
}

impl CheckReport {
    fn skip(name: &str, reason: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: true,
            max_violation: 0.0,
            tolerance: 0.0,
            instances: 0,
            witnesses: Vec::new(),
            skipped: Some(reason.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckConfig {
    /// Universe size for exhaustive and probe-based checks.
    pub universe_size: usize,
    /// Largest universe drawn by the averaging and partition checks.
    pub averaging_universe_max: usize,
    /// Random probes per check (per quantifier where applicable).
    pub probes: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            universe_size: 4,
            averaging_universe_max: 10,
            probes: 50,
            seed: 0,
            tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    /// The six axioms Z-1 to Z-6.
    Z,
    /// The further properties (negations, monotonicity, continuity,
    /// insertion, averaging, partition, induced operators).
    P,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "all" => Ok(Suite::All),
            "Z" | "z" => Ok(Suite::Z),
            "P" | "p" => Ok(Suite::P),
            other => Err(format!("unknown suite `{other}` (expected all, Z or P)")),
        }
    }
}

pub fn run_suite(config: &CheckConfig, suite: Suite) -> Vec<CheckReport> {
    let z: [fn(&CheckConfig) -> CheckReport; 6] = [
        check_z1_correct_generalization,
        check_z2_projection,
        check_z3_dualisation,
        check_z4_internal_joins,
        check_z5_monotonicity,
        check_z6_functional_application,
    ];
    let p: [fn(&CheckConfig) -> CheckReport; 8] = [
        check_external_negation,
        check_internal_negation,
        check_quantifier_monotonicity,
        check_continuity_bounds,
        check_fuzzy_arg_insertion,
        check_identity_averaging,
        check_ruspini_probabilistic,
        check_induced_operators,
    ];
    let checks: Vec<_> = match suite {
        Suite::All => z.iter().chain(p.iter()).collect(),
        Suite::Z => z.iter().collect(),
        Suite::P => p.iter().collect(),
    };
    checks.into_iter().map(|check| check(config)).collect()
}

/// Running maximum of violations with the first few offending instances.
struct Tally {
    name: String,
    tolerance: f64,
    max_violation: f64,
    instances: usize,
    witnesses: Vec<String>,
}

impl Tally {
    fn new(name: &str, tolerance: f64) -> Self {
        Tally {
            name: name.to_string(),
            tolerance,
            max_violation: 0.0,
            instances: 0,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, violation: f64, witness: impl FnOnce() -> String) {
        self.instances += 1;
        // NaN counts as an unbounded violation
        let violation = if violation.is_nan() { f64::INFINITY } else { violation };
        if violation > self.max_violation {
            self.max_violation = violation;
        }
        if violation > self.tolerance && self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(format!("{} (violation {violation:.3e})", witness()));
        }
    }

    fn record_result(&mut self, outcome: Result<f64>, witness: impl FnOnce() -> String) {
        match outcome {
            Ok(v) => self.record(v, witness),
            Err(e) => {
                let w = witness();
                self.record(f64::INFINITY, || format!("{w}: {e}"));
            }
        }
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            passed: self.max_violation <= self.tolerance,
            name: self.name,
            max_violation: self.max_violation,
            tolerance: self.tolerance,
            instances: self.instances,
            witnesses: self.witnesses,
            skipped: None,
        }
    }
}

fn rng_for(config: &CheckConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_grade(rng: &mut impl Rng) -> f64 {
    rng.random_range(0..=20u32) as f64 / 20.0
}

fn random_set(rng: &mut impl Rng, m: usize) -> FuzzySet {
    FuzzySet::new((0..m).map(|_| random_grade(rng)).collect()).expect("grid grades are valid")
}

fn random_sets(rng: &mut impl Rng, m: usize, n: usize) -> Vec<FuzzySet> {
    (0..n).map(|_| random_set(rng, m)).collect()
}

fn refs(sets: &[FuzzySet]) -> Vec<&FuzzySet> {
    sets.iter().collect()
}

fn show(sets: &[FuzzySet]) -> String {
    sets.iter().map(|s| format!("{:?}", s.grades())).collect::<Vec<_>>().join(", ")
}

fn random_table(rng: &mut impl Rng, name: &str, arity: usize, m: usize) -> Result<SemiFuzzyQuantifier> {
    let table = (0..1usize << (arity * m)).map(|_| random_grade(rng)).collect();
    SemiFuzzyQuantifier::from_table(name, arity, m, table)
}

fn nearly_all(m: usize) -> Result<SemiFuzzyQuantifier> {
    let number = FuzzyNumber::sampled(vec![(0.5, 0.0), (1.0, 1.0)])?;
    Ok(SemiFuzzyQuantifier::binary_proportional(number, 1.0, m)?.with_name("nearly all"))
}

/// The built-in quantifiers on a universe of `m ≥ 1` elements, plus seeded
/// random tables of arity 1 and 2.
pub fn sample_quantifiers(m: usize, seed: u64) -> Result<Vec<SemiFuzzyQuantifier>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut qs = vec![
        SemiFuzzyQuantifier::exists(m),
        SemiFuzzyQuantifier::forall(m),
        SemiFuzzyQuantifier::identity(m)?,
        SemiFuzzyQuantifier::unary_proportional(FuzzyNumber::smooth_step(0.3, 0.6)?, m)?
            .with_name("about half or more"),
        SemiFuzzyQuantifier::some(m)?,
        SemiFuzzyQuantifier::all(m)?,
        SemiFuzzyQuantifier::no(m)?,
        nearly_all(m)?,
        SemiFuzzyQuantifier::binary_absolute(FuzzyNumber::trapezoid(0.0, 1.0, 2.0, 3.0)?, m)?
            .with_name("about one or two"),
        SemiFuzzyQuantifier::projection(0, m)?,
    ];
    qs.extend(SemiFuzzyQuantifier::ruspini_partition(m)?);
    if 2 * m <= 12 {
        qs.push(random_table(&mut rng, "random unary table", 1, m)?);
        qs.push(random_table(&mut rng, "random binary table", 2, m)?);
    }
    Ok(qs)
}

fn fixture(config: &CheckConfig, name: &str) -> std::result::Result<Vec<SemiFuzzyQuantifier>, CheckReport> {
    if config.universe_size == 0 {
        return Err(CheckReport::skip(name, "empty universe"));
    }
    sample_quantifiers(config.universe_size, config.seed)
        .map_err(|e| CheckReport::skip(name, &format!("could not build quantifiers: {e}")))
}

/// Z-1: on crisp arguments every applicable evaluator returns the kernel value.
pub fn check_z1_correct_generalization(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "Z-1 correct generalization";
    let qs = match fixture(config, NAME) {
        Ok(qs) => qs,
        Err(r) => return r,
    };
    let mut tally = Tally::new(NAME, config.tolerance);
    for q in &qs {
        let Ok(tuples) = q.crisp_tuples() else { continue };
        for args in tuples {
            let expected = q.value(&args);
            let sets: Vec<FuzzySet> = args.iter().map(FuzzySet::from_crisp).collect();
            let witness = || format!("{} on {}", q.name(), show(&sets));
            tally.record_result(eval_exact(q, &refs(&sets)).map(|v| (v - expected).abs()), witness);
            if !q.kernel().is_general() {
                let dp = evaluate(q, &refs(&sets), Strategy::Dp);
                tally.record_result(dp.map(|r| (r.value - expected).abs()), || {
                    format!("dp: {}", witness())
                });
            }
            if let Ok(est) = eval_limit(q, &refs(&sets)) {
                tally.record((est.value - expected).abs(), || format!("limit: {}", witness()));
            }
        }
    }
    tally.finish()
}

/// Z-2: `F(π_e)(X) = μ_X(e)`.
pub fn check_z2_projection(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "Z-2 projection";
    let m = config.universe_size;
    if m == 0 {
        return CheckReport::skip(NAME, "empty universe");
    }
    let mut rng = rng_for(config, 2);
    let mut tally = Tally::new(NAME, config.tolerance);
    for e in 0..m {
        let q = SemiFuzzyQuantifier::projection(e, m).expect("element in range");
        for _ in 0..config.probes {
            let x = random_set(&mut rng, m);
            tally.record_result(eval_exact(&q, &[&x]).map(|v| (v - x.grade(e)).abs()), || {
                format!("e{} on {:?}", e + 1, x.grades())
            });
        }
    }
    tally.finish()
}

/// Z-3: `F(Q□)(X₁..Xₙ) = 1 - F(Q)(X₁, .., ¬Xₙ)` evaluated externally.
pub fn check_z3_dualisation(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "Z-3 dualisation";
    let qs = match fixture(config, NAME) {
        Ok(qs) => qs,
        Err(r) => return r,
    };
    let mut rng = rng_for(config, 3);
    let mut tally = Tally::new(NAME, config.tolerance);
    for q in &qs {
        let Ok(d) = dual(q) else { continue };
        let n = q.arity();
        for _ in 0..config.probes {
            let xs = random_sets(&mut rng, config.universe_size, n);
            let mut negated = xs.clone();
            negated[n - 1] = negated[n - 1].complement();
            let outcome = eval_exact(&d, &refs(&xs))
                .and_then(|lhs| Ok((lhs - (1.0 - eval_exact(q, &refs(&negated))?)).abs()));
            tally.record_result(outcome, || format!("{} on {}", q.name(), show(&xs)));
        }
    }
    tally.finish()
}

/// Z-4 with the induced connectives: product for meets, probabilistic sum
/// for joins.
pub fn check_z4_internal_joins(config: &CheckConfig) -> CheckReport {
    check_internal_joins_with(
        config,
        "Z-4 internal joins",
        |a, b| a * b,
        |a, b| a + b - a * b,
    )
}

/// Z-4 with arbitrary connectives on the right-hand side. Only the induced
/// pair passes; this is used to confirm the check discriminates.
pub fn check_internal_joins_with(
    config: &CheckConfig,
    name: &str,
    meet: fn(f64, f64) -> f64,
    join: fn(f64, f64) -> f64,
) -> CheckReport {
    let qs = match fixture(config, name) {
        Ok(qs) => qs,
        Err(r) => return r,
    };
    let mut rng = rng_for(config, 4);
    let mut tally = Tally::new(name, config.tolerance);
    for q in &qs {
        let n = q.arity();
        if n == 0 {
            continue;
        }
        let lifted: [(&str, _, fn(f64, f64) -> f64); 2] = [
            ("∪", union_arg(q), join),
            ("∩", intersection_arg(q), meet),
        ];
        for (symbol, merged, op) in lifted {
            let Ok(merged) = merged else { continue };
            for _ in 0..config.probes {
                let xs = random_sets(&mut rng, config.universe_size, n + 1);
                let mut combined = xs[..n].to_vec();
                combined[n - 1] = xs[n - 1].zip_with(&xs[n], op).expect("same universe");
                let outcome = eval_exact(&merged, &refs(&xs))
                    .and_then(|lhs| Ok((lhs - eval_exact(q, &refs(&combined))?).abs()));
                tally.record_result(outcome, || format!("{}{symbol} on {}", q.name(), show(&xs)));
            }
        }
    }
    tally.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Monotonicity {
    Nondecreasing,
    Nonincreasing,
    Constant,
}

/// Monotonicity of `q` in its last argument over all crisp tuples.
fn last_arg_monotonicity(q: &SemiFuzzyQuantifier) -> Option<Monotonicity> {
    let n = q.arity();
    let m = q.universe_size();
    if n == 0 {
        return None;
    }
    let (mut up, mut down) = (true, true);
    for args in q.crisp_tuples().ok()? {
        let base = q.value(&args);
        for e in 0..m {
            if args[n - 1].contains(e) {
                continue;
            }
            let mut grown = args.clone();
            grown[n - 1] = grown[n - 1].union(&CrispSet::from_indices(m, [e]).ok()?);
            let v = q.value(&grown);
            up &= v >= base;
            down &= v <= base;
        }
    }
    match (up, down) {
        (true, true) => Some(Monotonicity::Constant),
        (true, false) => Some(Monotonicity::Nondecreasing),
        (false, true) => Some(Monotonicity::Nonincreasing),
        (false, false) => None,
    }
}

/// Z-5: a quantifier monotone in its last argument on crisp sets stays
/// monotone in that argument on fuzzy sets.
pub fn check_z5_monotonicity(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "Z-5 monotonicity in the last argument";
    let qs = match fixture(config, NAME) {
        Ok(qs) => qs,
        Err(r) => return r,
    };
    let mut rng = rng_for(config, 5);
    let mut tally = Tally::new(NAME, config.tolerance);
    let m = config.universe_size;
    for q in &qs {
        let Some(direction) = last_arg_monotonicity(q) else { continue };
        let n = q.arity();
        for _ in 0..config.probes {
            let xs = random_sets(&mut rng, m, n);
            let mut grown = xs.clone();
            let raised: Vec<f64> = xs[n - 1]
                .grades()
                .iter()
                .map(|&g| (g + random_grade(&mut rng)).min(1.0))
                .collect();
            grown[n - 1] = FuzzySet::new(raised).expect("grades clamped to [0, 1]");
            let outcome = eval_exact(q, &refs(&xs)).and_then(|low| {
                let high = eval_exact(q, &refs(&grown))?;
                Ok(match direction {
                    Monotonicity::Nondecreasing => (low - high).max(0.0),
                    Monotonicity::Nonincreasing => (high - low).max(0.0),
                    Monotonicity::Constant => (high - low).abs(),
                })
            });
            tally.record_result(outcome, || {
                format!("{} ({direction:?}) on {} grown to {:?}", q.name(), show(&xs), grown[n - 1].grades())
            });
        }
    }
    tally.finish()
}

fn all_maps(source: usize, target: usize) -> Vec<Vec<usize>> {
    let count = target.pow(source as u32);
    (0..count)
        .map(|mut k| {
            (0..source)
                .map(|_| {
                    let t = k % target;
                    k /= target;
                    t
                })
                .collect()
        })
        .collect()
}

/// Z-6: `F(Q ∘ ×f̂ᵢ) = F(Q) ∘ ×f̂ᵢ` where the right-hand images use the
/// probabilistic extension principle; all maps between universes of at most
/// three elements.
pub fn check_z6_functional_application(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "Z-6 functional application";
    let max = config.universe_size.min(3);
    if max == 0 {
        return CheckReport::skip(NAME, "empty universe");
    }
    let mut rng = rng_for(config, 6);
    let mut tally = Tally::new(NAME, config.tolerance);
    for target in 1..=max {
        let Ok(qs) = sample_quantifiers(target, config.seed) else { continue };
        for source in 1..=max {
            let maps = all_maps(source, target);
            for f in &maps {
                for q in &qs {
                    let n = q.arity();
                    // once with f on every argument, once with f on one argument
                    // and random maps elsewhere
                    let fixed = vec![f.clone(); n];
                    let mut mixed: Vec<Vec<usize>> =
                        (0..n).map(|_| maps.choose(&mut rng).expect("maps exist").clone()).collect();
                    if n > 0 {
                        let i = rng.random_range(0..n);
                        mixed[i] = f.clone();
                    }
                    for chosen in [fixed, mixed] {
                        let xs = random_sets(&mut rng, source, n);
                        let outcome = functional_application_gap(q, &chosen, source, &xs);
                        tally.record_result(outcome, || {
                            format!("{} with maps {chosen:?} on {}", q.name(), show(&xs))
                        });
                    }
                }
            }
        }
    }
    tally.finish()
}

fn functional_application_gap(
    q: &SemiFuzzyQuantifier,
    maps: &[Vec<usize>],
    source: usize,
    xs: &[FuzzySet],
) -> Result<f64> {
    let composed = precompose(q, maps, source)?;
    let lhs = eval_exact(&composed, &refs(xs))?;
    let images = xs
        .iter()
        .zip(maps)
        .map(|(x, f)| extension_principle(f, q.universe_size(), x))
        .collect::<Result<Vec<_>>>()?;
    Ok((lhs - eval_exact(q, &refs(&images))?).abs())
}

/// `F(¬Q) = 1 - F(Q)`.
pub fn check_external_negation(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "external negation";
    let qs = match fixture(config, NAME) {
        Ok(qs) => qs,
        Err(r) => return r,
    };
    let mut rng = rng_for(config, 7);
    let mut tally = Tally::new(NAME, config.tolerance);
    for q in &qs {
        let Ok(neg) = external_negation(q) else { continue };
        for _ in 0..config.probes {
            let xs = random_sets(&mut rng, config.universe_size, q.arity());
            let outcome = eval_exact(&neg, &refs(&xs))
                .and_then(|lhs| Ok((lhs - (1.0 - eval_exact(q, &refs(&xs))?)).abs()));
            tally.record_result(outcome, || format!("{} on {}", q.name(), show(&xs)));
        }
    }
    tally.finish()
}

/// `F(Q¬)(X₁..Xₙ) = F(Q)(X₁, .., ¬Xₙ)`.
pub fn check_internal_negation(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "internal negation";
    let qs = match fixture(config, NAME) {
        Ok(qs) => qs,
        Err(r) => return r,
    };
    let mut rng = rng_for(config, 8);
    let mut tally = Tally::new(NAME, config.tolerance);
    for q in &qs {
        let Ok(neg) = internal_negation(q) else { continue };
        let n = q.arity();
        for _ in 0..config.probes {
            let xs = random_sets(&mut rng, config.universe_size, n);
            let mut negated = xs.clone();
            negated[n - 1] = negated[n - 1].complement();
            let outcome = eval_exact(&neg, &refs(&xs))
                .and_then(|lhs| Ok((lhs - eval_exact(q, &refs(&negated))?).abs()));
            tally.record_result(outcome, || format!("{} on {}", q.name(), show(&xs)));
        }
    }
    tally.finish()
}

/// `Q ≤ Q'` pointwise implies `F(Q) ≤ F(Q')`, on the smooth-step pair
/// `S_{0.5,0.7} ≤ S_{0.3,0.5}` and on random ordered tables.
pub fn check_quantifier_monotonicity(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "quantifier monotonicity";
    let m = config.universe_size;
    if m == 0 {
        return CheckReport::skip(NAME, "empty universe");
    }
    let mut rng = rng_for(config, 9);
    let mut tally = Tally::new(NAME, config.tolerance);
    let mut pairs = Vec::new();
    let build = || -> Result<Vec<(SemiFuzzyQuantifier, SemiFuzzyQuantifier)>> {
        let low = FuzzyNumber::smooth_step(0.5, 0.7)?;
        let high = FuzzyNumber::smooth_step(0.3, 0.5)?;
        Ok(vec![
            (
                SemiFuzzyQuantifier::unary_proportional(low.clone(), m)?,
                SemiFuzzyQuantifier::unary_proportional(high.clone(), m)?,
            ),
            (
                SemiFuzzyQuantifier::binary_proportional(low, 1.0, m)?,
                SemiFuzzyQuantifier::binary_proportional(high, 1.0, m)?,
            ),
        ])
    };
    match build() {
        Ok(p) => pairs.extend(p),
        Err(e) => return CheckReport::skip(NAME, &e.to_string()),
    }
    if 2 * m <= 12 {
        let size = 1usize << (2 * m);
        let low: Vec<f64> = (0..size).map(|_| random_grade(&mut rng)).collect();
        let high: Vec<f64> = low.iter().map(|&v| (v + random_grade(&mut rng)).min(1.0)).collect();
        if let (Ok(a), Ok(b)) = (
            SemiFuzzyQuantifier::from_table("random lower table", 2, m, low),
            SemiFuzzyQuantifier::from_table("random upper table", 2, m, high),
        ) {
            pairs.push((a, b));
        }
    }
    for (low, high) in &pairs {
        for _ in 0..config.probes {
            let xs = random_sets(&mut rng, m, low.arity());
            let outcome = eval_exact(low, &refs(&xs))
                .and_then(|a| Ok((a - eval_exact(high, &refs(&xs))?).max(0.0)));
            tally.record_result(outcome, || {
                format!("{} vs {} on {}", low.name(), high.name(), show(&xs))
            });
        }
    }
    tally.finish()
}

/// Lipschitz bounds of the multilinear form:
/// `|F(Q)(X) - F(Q)(X')| ≤ n·m·d(X, X')` and `|F(Q)(X) - F(Q')(X)| ≤ d(Q, Q')`.
pub fn check_continuity_bounds(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "argument and quantifier continuity";
    let qs = match fixture(config, NAME) {
        Ok(qs) => qs,
        Err(r) => return r,
    };
    let m = config.universe_size;
    let mut rng = rng_for(config, 11);
    let mut tally = Tally::new(NAME, config.tolerance);
    for q in &qs {
        let n = q.arity();
        for _ in 0..config.probes {
            let xs = random_sets(&mut rng, m, n);
            // small perturbation of every grade, kept in [0, 1]
            let ys: Vec<FuzzySet> = xs
                .iter()
                .map(|x| {
                    let g = x
                        .grades()
                        .iter()
                        .map(|&g| (g + rng.random_range(-2..=2i32) as f64 / 20.0).clamp(0.0, 1.0))
                        .collect();
                    FuzzySet::new(g).expect("clamped grades")
                })
                .collect();
            let d = xs
                .iter()
                .zip(&ys)
                .map(|(x, y)| x.distance(y).expect("same universe"))
                .fold(0.0, f64::max);
            let bound = (n * m) as f64 * d;
            let outcome = eval_exact(q, &refs(&xs))
                .and_then(|a| Ok(((a - eval_exact(q, &refs(&ys))?).abs() - bound).max(0.0)));
            tally.record_result(outcome, || {
                format!("arg: {} on {} vs {}", q.name(), show(&xs), show(&ys))
            });
        }
        if n * m <= 12 {
            let Ok(table) = q.materialize() else { continue };
            let Kernel::Table(values) = table.kernel() else { continue };
            let shifted: Vec<f64> = values
                .iter()
                .map(|&v| (v + rng.random_range(-2..=2i32) as f64 / 20.0).clamp(0.0, 1.0))
                .collect();
            let d_q = values
                .iter()
                .zip(&shifted)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let Ok(other) = SemiFuzzyQuantifier::from_table("perturbed", n, m, shifted) else { continue };
            for _ in 0..config.probes {
                let xs = random_sets(&mut rng, m, n);
                let outcome = eval_exact(q, &refs(&xs))
                    .and_then(|a| Ok(((a - eval_exact(&other, &refs(&xs))?).abs() - d_q).max(0.0)));
                tally.record_result(outcome, || format!("quantifier: {} on {}", q.name(), show(&xs)));
            }
        }
    }
    tally.finish()
}

/// `F(Q <~ A)(X₁..Xₙ₋₁) = F(Q)(X₁, .., Xₙ₋₁, A)`.
pub fn check_fuzzy_arg_insertion(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "fuzzy argument insertion";
    let qs = match fixture(config, NAME) {
        Ok(qs) => qs,
        Err(r) => return r,
    };
    let m = config.universe_size;
    let mut rng = rng_for(config, 13);
    let mut tally = Tally::new(NAME, config.tolerance);
    for q in &qs {
        let n = q.arity();
        if n == 0 {
            continue;
        }
        for _ in 0..config.probes {
            let xs = random_sets(&mut rng, m, n);
            let outcome = fuzzy_arg_insertion(q, &xs[n - 1]).and_then(|inserted| {
                let lhs = eval_exact(&inserted, &refs(&xs[..n - 1]))?;
                Ok((lhs - eval_exact(q, &refs(&xs))?).abs())
            });
            tally.record_result(outcome, || format!("{} on {}", q.name(), show(&xs)));
        }
    }
    tally.finish()
}

/// `F(identity)(X)` equals the mean grade, on universes of 1 to
/// `averaging_universe_max` elements. Tolerance `1e-12`.
pub fn check_identity_averaging(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "identity averaging";
    if config.averaging_universe_max == 0 {
        return CheckReport::skip(NAME, "empty universe");
    }
    let mut rng = rng_for(config, 14);
    let mut tally = Tally::new(NAME, config.tolerance.min(1e-12));
    for _ in 0..config.probes {
        let m = rng.random_range(1..=config.averaging_universe_max);
        let x = random_set(&mut rng, m);
        let outcome = SemiFuzzyQuantifier::identity(m)
            .and_then(|q| eval_exact(&q, &[&x]))
            .map(|v| (v - x.mean().expect("non-empty")).abs());
        tally.record_result(outcome, || format!("{:?}", x.grades()));
    }
    tally.finish()
}

/// The three quantifiers of a Ruspini partition evaluate to values summing
/// to one on any fuzzy arguments.
pub fn check_ruspini_probabilistic(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "Ruspini partition sums to one";
    if config.averaging_universe_max == 0 {
        return CheckReport::skip(NAME, "empty universe");
    }
    let mut rng = rng_for(config, 15);
    let mut tally = Tally::new(NAME, config.tolerance);
    for _ in 0..config.probes {
        let m = rng.random_range(1..=config.averaging_universe_max);
        let xs = random_sets(&mut rng, m, 2);
        let outcome = SemiFuzzyQuantifier::ruspini_partition(m).and_then(|triple| {
            let mut total = 0.0;
            for q in &triple {
                total += eval_exact(q, &refs(&xs))?;
            }
            Ok((total - 1.0).abs())
        });
        tally.record_result(outcome, || show(&xs));
    }
    tally.finish()
}

/// Induced negation, conjunction, disjunction and implication on the grid
/// `{0, 0.1, .., 1}²` against their closed forms. Tolerance `1e-12`.
pub fn check_induced_operators(config: &CheckConfig) -> CheckReport {
    const NAME: &str = "induced truth functions";
    let mut tally = Tally::new(NAME, config.tolerance.min(1e-12));
    let binary: [(&str, TruthFunction, fn(f64, f64) -> f64); 3] = [
        ("and", TruthFunction::and(), |a, b| a * b),
        ("or", TruthFunction::or(), |a, b| a + b - a * b),
        ("implies", TruthFunction::implies(), |a, b| 1.0 - a + a * b),
    ];
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    for &x1 in &grid {
        let outcome = TruthFunction::negation()
            .induced(&[x1])
            .map(|v| (v - (1.0 - x1)).abs());
        tally.record_result(outcome, || format!("not({x1})"));
        for &x2 in &grid {
            for (label, f, closed) in &binary {
                let outcome = f.induced(&[x1, x2]).map(|v| (v - closed(x1, x2)).abs());
                tally.record_result(outcome, || format!("{label}({x1}, {x2})"));
            }
        }
    }
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CheckConfig {
        CheckConfig {
            universe_size: 2,
            averaging_universe_max: 4,
            probes: 5,
            ..CheckConfig::default()
        }
    }

    #[test]
    fn small_suite_passes() {
        for report in run_suite(&small(), Suite::All) {
            assert!(report.passed, "{report:?}");
            assert!(report.skipped.is_none());
            assert!(report.instances > 0, "{}", report.name);
        }
    }

    #[test]
    fn min_meet_is_detected() {
        let r = check_internal_joins_with(&small(), "min/max", f64::min, f64::max);
        assert!(!r.passed);
        assert!(r.max_violation >= 1e-3);
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn empty_universe_is_skipped() {
        let config = CheckConfig {
            universe_size: 0,
            averaging_universe_max: 0,
            ..CheckConfig::default()
        };
        for report in run_suite(&config, Suite::All) {
            if report.name != "induced truth functions" {
                assert!(report.skipped.is_some(), "{}", report.name);
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(run_suite(&small(), Suite::Z), run_suite(&small(), Suite::Z));
    }

    #[test]
    fn monotonicity_detection() {
        let all = SemiFuzzyQuantifier::all(2).unwrap();
        assert_eq!(last_arg_monotonicity(&all), Some(Monotonicity::Nondecreasing));
        let no = SemiFuzzyQuantifier::no(2).unwrap();
        assert_eq!(last_arg_monotonicity(&no), Some(Monotonicity::Nonincreasing));
        let c = SemiFuzzyQuantifier::constant(1, 2, 0.3).unwrap();
        assert_eq!(last_arg_monotonicity(&c), Some(Monotonicity::Constant));
    }

    #[test]
    fn maps_enumeration() {
        assert_eq!(all_maps(2, 3).len(), 9);
        assert_eq!(all_maps(3, 1), vec![vec![0, 0, 0]]);
    }
}
