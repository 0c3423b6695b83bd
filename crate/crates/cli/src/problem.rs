//! JSON problem files and their conversion to library objects.

use std::collections::BTreeMap;
use std::path::Path;

use probquant::asymptotics::SampledSignal;
use probquant::{FuzzyNumber, FuzzySet, SemiFuzzyQuantifier, Strategy, Universe};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::failure::Failure;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub universe: UniverseSpec,
    pub sets: BTreeMap<String, Vec<f64>>,
    pub quantifier: QuantifierSpec,
    pub arguments: Vec<String>,
    #[serde(default)]
    pub strategy: Strategy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseSpec {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantifierKind {
    UnaryQuantitative,
    BinaryProportional,
    BinaryAbsolute,
    Table,
}

/// How a unary fuzzy number reads the cardinality: `|Y| / m` or `|Y|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    #[default]
    Proportional,
    Absolute,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantifierSpec {
    pub kind: QuantifierKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzzy_number: Option<NumberSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<Measure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empty_case: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableSpec>,
}

/// Kernel values. For `unary_quantitative` these are `q(0), .., q(m)`; for
/// `table` they are indexed by the concatenated argument bitmasks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity: Option<usize>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    T,
    S,
    #[serde(rename = "exists")]
    Exists,
    #[serde(rename = "forall")]
    Forall,
    #[serde(rename = "constant")]
    Constant,
    #[serde(rename = "at_least")]
    AtLeast,
    #[serde(rename = "at_most")]
    AtMost,
    #[serde(rename = "sampled")]
    Sampled,
}

/// A fuzzy number. `T` takes `[a, b, c, d]` where `a` or `d` may be `null`
/// for an open shoulder; `S` takes `[alpha, gamma]`; `sampled` takes a flat
/// list of `x, y` knot pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumberSpec {
    pub shape: Shape,
    #[serde(default)]
    pub params: Vec<Option<f64>>,
}

/// Reads and deserializes a JSON file, reporting the field path on failure.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|f| Failure::parse(format!("{}: {}", path.display(), f.message)))
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, Failure> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Failure::parse(inner.to_string())
        } else {
            Failure::parse(format!("{path}: {inner}"))
        }
    })
}

fn field_error(path: impl AsRef<str>, e: impl std::fmt::Display) -> Failure {
    Failure::parse(format!("{}: {e}", path.as_ref()))
}

fn param(spec: &NumberSpec, path: &str, i: usize) -> Result<f64, Failure> {
    match spec.params.get(i) {
        Some(Some(v)) => Ok(*v),
        Some(None) => Err(field_error(format!("{path}.params[{i}]"), "must be a number")),
        None => Err(field_error(
            format!("{path}.params"),
            format!("shape {:?} needs at least {} parameters", spec.shape, i + 1),
        )),
    }
}

fn expect_params(spec: &NumberSpec, path: &str, count: usize) -> Result<(), Failure> {
    if spec.params.len() != count {
        return Err(field_error(
            format!("{path}.params"),
            format!("expected {count} parameters, found {}", spec.params.len()),
        ));
    }
    Ok(())
}

impl NumberSpec {
    pub fn build(&self, path: &str) -> Result<FuzzyNumber, Failure> {
        let built = match self.shape {
            Shape::T => {
                expect_params(self, path, 4)?;
                let p = &self.params;
                FuzzyNumber::trapezoid_open(p[0], param(self, path, 1)?, param(self, path, 2)?, p[3])
            }
            Shape::S => {
                expect_params(self, path, 2)?;
                FuzzyNumber::smooth_step(param(self, path, 0)?, param(self, path, 1)?)
            }
            Shape::Exists => {
                expect_params(self, path, 0)?;
                Ok(FuzzyNumber::Exists)
            }
            Shape::Forall => {
                expect_params(self, path, 0)?;
                Ok(FuzzyNumber::Forall)
            }
            Shape::Constant => {
                expect_params(self, path, 1)?;
                FuzzyNumber::constant(param(self, path, 0)?)
            }
            Shape::AtLeast => {
                expect_params(self, path, 1)?;
                FuzzyNumber::at_least(param(self, path, 0)?)
            }
            Shape::AtMost => {
                expect_params(self, path, 1)?;
                FuzzyNumber::at_most(param(self, path, 0)?)
            }
            Shape::Sampled => {
                if self.params.len() % 2 != 0 {
                    return Err(field_error(format!("{path}.params"), "expected x, y pairs"));
                }
                let knots = (0..self.params.len() / 2)
                    .map(|k| Ok((param(self, path, 2 * k)?, param(self, path, 2 * k + 1)?)))
                    .collect::<Result<Vec<_>, Failure>>()?;
                FuzzyNumber::sampled(knots)
            }
        };
        built.map_err(|e| field_error(path, e))
    }
}

impl QuantifierSpec {
    fn number(&self) -> Result<FuzzyNumber, Failure> {
        self.fuzzy_number
            .as_ref()
            .ok_or_else(|| field_error("quantifier.fuzzy_number", "required for this kind"))?
            .build("quantifier.fuzzy_number")
    }

    /// Builds the quantifier on a universe of `m` elements; `arguments` is the
    /// number of arguments the problem supplies (the default table arity).
    pub fn build(&self, m: usize, arguments: usize) -> Result<SemiFuzzyQuantifier, Failure> {
        let q = match self.kind {
            QuantifierKind::UnaryQuantitative => match (&self.table, self.measure.unwrap_or_default()) {
                (Some(table), _) => SemiFuzzyQuantifier::unary_quantitative("q", table.values.clone())
                    .map_err(|e| field_error("quantifier.table.values", e))?,
                (None, Measure::Proportional) => {
                    SemiFuzzyQuantifier::unary_proportional(self.number()?, m)
                        .map_err(|e| field_error("quantifier", e))?
                }
                (None, Measure::Absolute) => {
                    let number = self.number()?;
                    let values = (0..=m).map(|j| number.value(j as f64)).collect();
                    SemiFuzzyQuantifier::unary_quantitative("q", values)
                        .map_err(|e| field_error("quantifier", e))?
                }
            },
            QuantifierKind::BinaryProportional => {
                SemiFuzzyQuantifier::binary_proportional(self.number()?, self.empty_case.unwrap_or(1.0), m)
                    .map_err(|e| field_error("quantifier", e))?
            }
            QuantifierKind::BinaryAbsolute => SemiFuzzyQuantifier::binary_absolute(self.number()?, m)
                .map_err(|e| field_error("quantifier", e))?,
            QuantifierKind::Table => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| field_error("quantifier.table", "required for kind `table`"))?;
                let arity = table.arity.unwrap_or(arguments);
                SemiFuzzyQuantifier::from_table("q", arity, m, table.values.clone()).map_err(|e| match e {
                    probquant::Error::SizeGuard { .. } => Failure::from(e),
                    other => field_error("quantifier.table", other),
                })?
            }
        };
        if let QuantifierKind::UnaryQuantitative = self.kind {
            if q.universe_size() != m {
                return Err(field_error(
                    "quantifier.table.values",
                    format!("expected {} values for a universe of {m}", m + 1),
                ));
            }
        }
        let name = self.name.clone().unwrap_or_else(|| self.default_name());
        Ok(q.with_name(name))
    }

    fn default_name(&self) -> String {
        match self.kind {
            QuantifierKind::UnaryQuantitative => "unary quantitative",
            QuantifierKind::BinaryProportional => "binary proportional",
            QuantifierKind::BinaryAbsolute => "binary absolute",
            QuantifierKind::Table => "table",
        }
        .to_string()
    }
}

/// A problem with its library objects built and validated.
#[derive(Debug, Clone)]
pub struct Instance {
    pub universe: Universe,
    pub quantifier: SemiFuzzyQuantifier,
    pub arguments: Vec<FuzzySet>,
    pub strategy: Strategy,
}

impl Problem {
    pub fn build(&self) -> Result<Instance, Failure> {
        let m = self.universe.size;
        let universe = match &self.universe.labels {
            Some(labels) => {
                let u = Universe::with_labels(labels.iter().cloned())
                    .map_err(|e| field_error("universe.labels", e))?;
                if u.size() != m {
                    return Err(field_error(
                        "universe.labels",
                        format!("{} labels for a universe of size {m}", u.size()),
                    ));
                }
                u
            }
            None => Universe::new(m),
        };
        let mut sets = BTreeMap::new();
        for (name, grades) in &self.sets {
            let set = universe
                .fuzzy_set(grades.clone())
                .map_err(|e| match e {
                    probquant::Error::InvalidGrade { index, value } => field_error(
                        format!("sets.{name}[{index}]"),
                        format!("grade {value} is outside [0, 1]"),
                    ),
                    other => field_error(format!("sets.{name}"), other),
                })?;
            sets.insert(name.as_str(), set);
        }
        let arguments = self
            .arguments
            .iter()
            .enumerate()
            .map(|(i, name)| {
                sets.get(name.as_str())
                    .cloned()
                    .ok_or_else(|| field_error(format!("arguments[{i}]"), format!("unknown set `{name}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let quantifier = self.quantifier.build(m, arguments.len())?;
        if quantifier.arity() != arguments.len() {
            return Err(field_error(
                "arguments",
                format!(
                    "quantifier takes {} arguments, {} given",
                    quantifier.arity(),
                    arguments.len()
                ),
            ));
        }
        Ok(Instance {
            universe,
            quantifier,
            arguments,
            strategy: self.strategy,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalSpec {
    pub t0: f64,
    pub t1: f64,
    pub samples: Vec<f64>,
}

impl SignalSpec {
    pub fn build(&self) -> Result<SampledSignal, Failure> {
        SampledSignal::new(self.t0, self.t1, self.samples.clone()).map_err(|e| field_error("signal", e))
    }
}

/// "Q of the time, the signal is `label`". `quantifier` must be a
/// proportional unary quantifier; `grid` defaults to the sample count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemporalProblem {
    pub signal: SignalSpec,
    pub label: NumberSpec,
    pub quantifier: QuantifierSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "distribution", rename_all = "snake_case", deny_unknown_fields)]
pub enum SamplerSpec {
    Normal {
        mean: f64,
        std_dev: f64,
        count: usize,
        #[serde(default)]
        seed: u64,
    },
    Uniform {
        low: f64,
        high: f64,
        count: usize,
        #[serde(default)]
        seed: u64,
    },
}

/// "Q of the population is `label`", from explicit samples or from a seeded
/// sampler.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PopulationProblem {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<SamplerSpec>,
    pub label: NumberSpec,
    pub quantifier: QuantifierSpec,
}

/// The proportional fuzzy number of a unary quantifier spec.
pub fn proportional_number(spec: &QuantifierSpec) -> Result<FuzzyNumber, Failure> {
    if spec.kind != QuantifierKind::UnaryQuantitative
        || spec.table.is_some()
        || spec.measure.unwrap_or_default() != Measure::Proportional
    {
        return Err(field_error(
            "quantifier",
            "expected a proportional unary_quantitative quantifier with a fuzzy_number",
        ));
    }
    spec.number()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_trapezoid_params() {
        let spec: NumberSpec = parse_json(r#"{"shape": "T", "params": [null, 0, 0.2, 0.4]}"#).unwrap();
        let n = spec.build("n").unwrap();
        assert_eq!(n.value(-5.0), 1.0);
        assert!((n.value(0.3) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn wrong_param_count_names_the_field() {
        let spec: NumberSpec = parse_json(r#"{"shape": "S", "params": [0.5]}"#).unwrap();
        let err = spec.build("quantifier.fuzzy_number").unwrap_err();
        assert!(err.message.contains("quantifier.fuzzy_number.params"), "{}", err.message);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse_json::<UniverseSpec>(r#"{"size": 3, "colour": 1}"#).unwrap_err();
        assert_eq!(err.code, 2);
    }
}
