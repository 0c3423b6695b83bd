//! Library side of the `probquant` command: problem-file schema and the
//! subcommand implementations, which return their output as text.

pub mod bench;
pub mod failure;
pub mod problem;

use std::fmt::Write as _;
use std::path::Path;

use probquant::asymptotics::{population_quantify, temporal_quantify};
use probquant::axioms::{run_suite, CheckConfig, CheckReport, Suite};
use probquant::{evaluate_with_threads, EvalRecord, Strategy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Uniform};
use serde::Serialize;

use failure::Failure;
use problem::{proportional_number, read_json, PopulationProblem, Problem, SamplerSpec, TemporalProblem};

#[derive(Debug, Clone, Serialize)]
pub struct EvaluationOutput {
    pub quantifier: String,
    pub arguments: Vec<String>,
    pub strategy: Strategy,
    #[serde(flatten)]
    pub record: EvalRecord,
}

/// Evaluates a parsed problem. `strategy` overrides the file's strategy.
pub fn evaluate_problem(
    problem: &Problem,
    strategy: Option<Strategy>,
    threads: usize,
) -> Result<EvaluationOutput, Failure> {
    let instance = problem.build()?;
    let strategy = strategy.unwrap_or(instance.strategy);
    let args: Vec<_> = instance.arguments.iter().collect();
    let record = evaluate_with_threads(&instance.quantifier, &args, strategy, threads)?;
    Ok(EvaluationOutput {
        quantifier: instance.quantifier.name().to_string(),
        arguments: problem.arguments.clone(),
        strategy,
        record,
    })
}

pub fn cmd_evaluate(
    path: &Path,
    strategy: Option<Strategy>,
    json: bool,
    threads: usize,
) -> Result<String, Failure> {
    let problem: Problem = read_json(path)?;
    let out = evaluate_problem(&problem, strategy, threads)?;
    if json {
        return to_json(&out);
    }
    let mut s = String::new();
    let r = &out.record;
    writeln!(s, "value: {:.6}", r.value).unwrap();
    writeln!(s, "evaluator: {}", r.evaluator).unwrap();
    writeln!(s, "elapsed: {:.6} s", r.elapsed.as_secs_f64()).unwrap();
    if let Some(w) = &r.warning {
        writeln!(s, "warning: {w}").unwrap();
    }
    Ok(s)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::other(e.to_string()))
}

/// Runs the axiom suite. The flag is true when every check passed.
pub fn cmd_check(suite: Suite, config: &CheckConfig, json: bool) -> Result<(String, bool), Failure> {
    let reports = run_suite(config, suite);
    let passed = reports.iter().all(|r| r.passed);
    if json {
        return Ok((to_json(&reports)?, passed));
    }
    let mut s = String::new();
    for r in &reports {
        writeln!(s, "{}", summary_line(r)).unwrap();
        for w in &r.witnesses {
            writeln!(s, "    witness: {w}").unwrap();
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    writeln!(s, "{} checks, {failed} failed", reports.len()).unwrap();
    Ok((s, passed))
}

fn summary_line(r: &CheckReport) -> String {
    match &r.skipped {
        Some(reason) => format!("SKIP  {}: {reason}", r.name),
        None => format!(
            "{}  {}: max violation {:.3e} over {} instances (tolerance {:.0e})",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.max_violation,
            r.instances,
            r.tolerance
        ),
    }
}

pub fn cmd_temporal(path: &Path, json: bool) -> Result<String, Failure> {
    let problem: TemporalProblem = read_json(path)?;
    let signal = problem.signal.build()?;
    let label = problem.label.build("label")?;
    let q = proportional_number(&problem.quantifier)?;
    let grid = problem.grid.unwrap_or(signal.samples().len());
    let r = temporal_quantify(&signal, &label, &q, grid)?;
    if json {
        return to_json(&r);
    }
    let mut s = String::new();
    match r.dp_value {
        Some(v) => writeln!(s, "dp_value: {v:.6}").unwrap(),
        None => writeln!(s, "dp_value: skipped (grid of {grid} exceeds the DP bound)").unwrap(),
    }
    writeln!(s, "limit_value: {:.6}", r.limit_value).unwrap();
    writeln!(s, "grid: {}", r.grid).unwrap();
    Ok(s)
}

fn draw_samples(sampler: &SamplerSpec) -> Result<Vec<f64>, Failure> {
    let bad = |e: &dyn std::fmt::Display| Failure::parse(format!("sampler: {e}"));
    match *sampler {
        SamplerSpec::Normal {
            mean,
            std_dev,
            count,
            seed,
        } => {
            let d = Normal::new(mean, std_dev).map_err(|e| bad(&e))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..count).map(|_| d.sample(&mut rng)).collect())
        }
        SamplerSpec::Uniform {
            low,
            high,
            count,
            seed,
        } => {
            let d = Uniform::new(low, high).map_err(|e| bad(&e))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..count).map(|_| d.sample(&mut rng)).collect())
        }
    }
}

pub fn cmd_population(path: &Path, json: bool) -> Result<String, Failure> {
    let problem: PopulationProblem = read_json(path)?;
    let samples = match (&problem.samples, &problem.sampler) {
        (Some(s), None) => s.clone(),
        (None, Some(sampler)) => draw_samples(sampler)?,
        _ => return Err(Failure::parse("exactly one of `samples` and `sampler` is required")),
    };
    let label = problem.label.build("label")?;
    let q = proportional_number(&problem.quantifier)?;
    let r = population_quantify(&samples, &label, &q)?;
    if json {
        return to_json(&r);
    }
    Ok(format!(
        "limit_value: {:.6}\nfuzzy_event_probability: {:.6}\nsamples: {}\n",
        r.limit_value, r.fuzzy_event_probability, r.samples
    ))
}
