//! Semi-fuzzy quantifiers: maps from tuples of crisp sets to `[0, 1]`.
//!
//! The kernel tag records structure the evaluators can exploit. A general
//! kernel (table or callback) only admits the exponential exact evaluator;
//! quantitative kernels also admit the polynomial evaluators.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::number::FuzzyNumber;
use crate::sets::{check_same_universe, CrispSet, MAX_CRISP_UNIVERSE};

/// Largest `arity * universe_size` for which a kernel is materialized as a
/// full table.
pub const MAX_TABLE_BITS: usize = 20;

pub type KernelFn = dyn Fn(&[CrispSet]) -> f64 + Send + Sync;

#[derive(Clone)]
pub enum Kernel {
    /// Explicit values indexed by the concatenated argument bitmasks
    /// (argument `i` occupies bits `i*m .. (i+1)*m`).
    Table(Arc<[f64]>),
    Callback(Arc<KernelFn>),
    /// `q(|Y|)`, with `m + 1` entries. When built from a proportional fuzzy
    /// number the number is kept for the limit evaluator.
    UnaryQuantitative {
        table: Arc<[f64]>,
        proportional: Option<FuzzyNumber>,
    },
    /// `number(|Y₁∩Y₂| / |Y₁|)`, or `empty_case` when `Y₁ = ∅`.
    BinaryProportional { number: FuzzyNumber, empty_case: f64 },
    /// `number(|Y₁∩Y₂|)`.
    BinaryAbsolute { number: FuzzyNumber },
}

impl Kernel {
    pub fn kind(&self) -> &'static str {
        match self {
            Kernel::Table(_) => "table",
            Kernel::Callback(_) => "callback",
            Kernel::UnaryQuantitative { .. } => "unary_quantitative",
            Kernel::BinaryProportional { .. } => "binary_proportional",
            Kernel::BinaryAbsolute { .. } => "binary_absolute",
        }
    }

    pub fn is_general(&self) -> bool {
        matches!(self, Kernel::Table(_) | Kernel::Callback(_))
    }
}

#[derive(Clone)]
pub struct SemiFuzzyQuantifier {
    name: String,
    arity: usize,
    universe_size: usize,
    kernel: Kernel,
}

impl fmt::Debug for SemiFuzzyQuantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemiFuzzyQuantifier")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("universe_size", &self.universe_size)
            .field("kernel", &self.kernel.kind())
            .finish()
    }
}

fn check_unit(value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::InvalidQuantifierValue { value })
    }
}

impl SemiFuzzyQuantifier {
    /// A quantifier given by an arbitrary function of the crisp arguments.
    pub fn from_fn<F>(name: impl Into<String>, arity: usize, universe_size: usize, f: F) -> Result<Self>
    where
        F: Fn(&[CrispSet]) -> f64 + Send + Sync + 'static,
    {
        check_crisp_universe(universe_size)?;
        Ok(SemiFuzzyQuantifier {
            name: name.into(),
            arity,
            universe_size,
            kernel: Kernel::Callback(Arc::new(f)),
        })
    }

    /// A quantifier given by its full table of `2^(arity*m)` values.
    pub fn from_table(
        name: impl Into<String>,
        arity: usize,
        universe_size: usize,
        table: Vec<f64>,
    ) -> Result<Self> {
        let bits = arity * universe_size;
        if bits > MAX_TABLE_BITS {
            return Err(Error::SizeGuard {
                bits,
                limit: MAX_TABLE_BITS,
            });
        }
        if table.len() != 1usize << bits {
            return Err(Error::TableSize {
                expected: 1 << bits,
                found: table.len(),
            });
        }
        for &v in &table {
            check_unit(v)?;
        }
        Ok(SemiFuzzyQuantifier {
            name: name.into(),
            arity,
            universe_size,
            kernel: Kernel::Table(table.into()),
        })
    }

    /// Unary quantitative quantifier `Q(Y) = q(|Y|)`; the universe size is
    /// `q.len() - 1`.
    pub fn unary_quantitative(name: impl Into<String>, q: Vec<f64>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::TableSize {
                expected: 1,
                found: 0,
            });
        }
        for &v in &q {
            check_unit(v)?;
        }
        Ok(SemiFuzzyQuantifier {
            name: name.into(),
            arity: 1,
            universe_size: q.len() - 1,
            kernel: Kernel::UnaryQuantitative {
                table: q.into(),
                proportional: None,
            },
        })
    }

    /// `Q(Y) = number(|Y| / m)`.
    pub fn unary_proportional(number: FuzzyNumber, universe_size: usize) -> Result<Self> {
        if universe_size == 0 {
            return Err(Error::EmptyUniverse);
        }
        let m = universe_size as f64;
        let table = (0..=universe_size)
            .map(|j| check_unit(number.eval(j as f64 / m)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(SemiFuzzyQuantifier {
            name: format!("unary {number}"),
            arity: 1,
            universe_size,
            kernel: Kernel::UnaryQuantitative {
                table: table.into(),
                proportional: Some(number),
            },
        })
    }

    /// `∃(Y) = [Y ≠ ∅]`.
    pub fn exists(universe_size: usize) -> Self {
        let q = (0..=universe_size).map(|j| if j > 0 { 1.0 } else { 0.0 });
        SemiFuzzyQuantifier::quantitative_with("exists", q.collect(), Some(FuzzyNumber::Exists))
    }

    /// `∀(Y) = [Y = E]`.
    pub fn forall(universe_size: usize) -> Self {
        let q = (0..=universe_size).map(|j| if j == universe_size { 1.0 } else { 0.0 });
        SemiFuzzyQuantifier::quantitative_with("forall", q.collect(), Some(FuzzyNumber::Forall))
    }

    /// `identity(Y) = |Y| / |E|`; undefined on the empty universe.
    pub fn identity(universe_size: usize) -> Result<Self> {
        if universe_size == 0 {
            return Err(Error::EmptyUniverse);
        }
        let m = universe_size as f64;
        let q = (0..=universe_size).map(|j| j as f64 / m).collect();
        let line = FuzzyNumber::trapezoid_open(Some(0.0), 1.0, 1.0, None)?;
        Ok(SemiFuzzyQuantifier::quantitative_with("identity", q, Some(line)))
    }

    fn quantitative_with(name: &str, q: Vec<f64>, proportional: Option<FuzzyNumber>) -> Self {
        SemiFuzzyQuantifier {
            name: name.into(),
            arity: 1,
            universe_size: q.len() - 1,
            kernel: Kernel::UnaryQuantitative {
                table: q.into(),
                proportional,
            },
        }
    }

    pub fn binary_proportional(
        number: FuzzyNumber,
        empty_case: f64,
        universe_size: usize,
    ) -> Result<Self> {
        check_unit(empty_case)?;
        Ok(SemiFuzzyQuantifier {
            name: format!("proportional {number}"),
            arity: 2,
            universe_size,
            kernel: Kernel::BinaryProportional { number, empty_case },
        })
    }

    pub fn binary_absolute(number: FuzzyNumber, universe_size: usize) -> Result<Self> {
        Ok(SemiFuzzyQuantifier {
            name: format!("absolute {number}"),
            arity: 2,
            universe_size,
            kernel: Kernel::BinaryAbsolute { number },
        })
    }

    /// `some(Y₁,Y₂) = [Y₁ ∩ Y₂ ≠ ∅]`.
    pub fn some(universe_size: usize) -> Result<Self> {
        Ok(SemiFuzzyQuantifier::binary_absolute(FuzzyNumber::AtLeast(1.0), universe_size)?
            .with_name("some"))
    }

    /// `all(Y₁,Y₂) = [Y₁ ⊆ Y₂]`, as the proportion `|Y₁∩Y₂|/|Y₁| = 1`.
    pub fn all(universe_size: usize) -> Result<Self> {
        Ok(
            SemiFuzzyQuantifier::binary_proportional(FuzzyNumber::Forall, 1.0, universe_size)?
                .with_name("all"),
        )
    }

    /// `no(Y₁,Y₂) = [Y₁ ∩ Y₂ = ∅]`.
    pub fn no(universe_size: usize) -> Result<Self> {
        Ok(SemiFuzzyQuantifier::binary_absolute(FuzzyNumber::AtMost(0.0), universe_size)?
            .with_name("no"))
    }

    /// `π_e(Y) = χ_Y(e)`.
    pub fn projection(element: usize, universe_size: usize) -> Result<Self> {
        if element >= universe_size {
            return Err(Error::IndexOutOfRange {
                index: element,
                size: universe_size,
            });
        }
        SemiFuzzyQuantifier::from_fn(format!("projection e{}", element + 1), 1, universe_size, move |args| {
            if args[0].contains(element) {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn constant(arity: usize, universe_size: usize, value: f64) -> Result<Self> {
        check_unit(value)?;
        SemiFuzzyQuantifier::from_fn(format!("constant {value}"), arity, universe_size, move |_| value)
    }

    /// The three-label partition "at most about 20%", "about between 20% and
    /// 80%", "at least about 80%", each giving 1/3 on an empty first argument.
    pub fn ruspini_partition(universe_size: usize) -> Result<[SemiFuzzyQuantifier; 3]> {
        let third = 1.0 / 3.0;
        let low = FuzzyNumber::trapezoid_open(None, 0.0, 0.2, Some(0.4))?;
        let mid = FuzzyNumber::trapezoid(0.2, 0.4, 0.6, 0.8)?;
        let high = FuzzyNumber::trapezoid_open(Some(0.6), 0.8, 1.0, None)?;
        Ok([
            SemiFuzzyQuantifier::binary_proportional(low, third, universe_size)?
                .with_name("at most about 20%"),
            SemiFuzzyQuantifier::binary_proportional(mid, third, universe_size)?
                .with_name("about between 20% and 80%"),
            SemiFuzzyQuantifier::binary_proportional(high, third, universe_size)?
                .with_name("at least about 80%"),
        ])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    /// Checked evaluation on a crisp tuple.
    pub fn eval(&self, args: &[CrispSet]) -> Result<f64> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        for arg in args {
            check_same_universe(self.universe_size, arg.len())?;
        }
        check_unit(self.value(args))
    }

    /// Evaluation without argument checks; arguments must match the arity
    /// and universe.
    #[inline]
    pub fn value(&self, args: &[CrispSet]) -> f64 {
        match &self.kernel {
            Kernel::Table(table) => table[table_index(args, self.universe_size)],
            Kernel::Callback(f) => f(args),
            Kernel::UnaryQuantitative { table, .. } => table[args[0].cardinality()],
            Kernel::BinaryProportional { number, empty_case } => {
                let first = args[0].cardinality();
                if first == 0 {
                    *empty_case
                } else {
                    let meet = args[0].intersection(&args[1]).cardinality();
                    number.value(meet as f64 / first as f64)
                }
            }
            Kernel::BinaryAbsolute { number } => {
                number.value(args[0].intersection(&args[1]).cardinality() as f64)
            }
        }
    }

    /// Value at the tuple encoded by `index` (argument `i` in bits
    /// `i*m .. (i+1)*m`).
    pub fn value_at_index(&self, index: u64) -> f64 {
        let m = self.universe_size;
        let mask = crate::sets::full_mask(m);
        let args: Vec<CrispSet> = (0..self.arity)
            .map(|i| CrispSet::raw(if m == 0 { 0 } else { (index >> (i * m)) & mask }, m))
            .collect();
        self.value(&args)
    }

    /// Replaces a general kernel by its full table when `arity * m` is at most
    /// [`MAX_TABLE_BITS`]. Quantitative kernels are returned unchanged.
    pub fn materialize(&self) -> Result<SemiFuzzyQuantifier> {
        if !matches!(self.kernel, Kernel::Callback(_)) {
            return Ok(self.clone());
        }
        let bits = self.arity * self.universe_size;
        if bits > MAX_TABLE_BITS {
            return Err(Error::SizeGuard {
                bits,
                limit: MAX_TABLE_BITS,
            });
        }
        let table = (0..1u64 << bits)
            .map(|idx| check_unit(self.value_at_index(idx)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SemiFuzzyQuantifier {
            name: self.name.clone(),
            arity: self.arity,
            universe_size: self.universe_size,
            kernel: Kernel::Table(table.into()),
        })
    }

    /// All crisp argument tuples, in table-index order. Requires
    /// `arity * m < 64`.
    pub fn crisp_tuples(&self) -> Result<impl Iterator<Item = Vec<CrispSet>> + '_> {
        let bits = self.arity * self.universe_size;
        if bits >= 63 {
            return Err(Error::SizeGuard { bits, limit: 62 });
        }
        let m = self.universe_size;
        let mask = crate::sets::full_mask(m);
        Ok((0..1u64 << bits).map(move |idx| {
            (0..self.arity)
                .map(|i| CrispSet::raw(if m == 0 { 0 } else { (idx >> (i * m)) & mask }, m))
                .collect()
        }))
    }
}

#[inline]
pub(crate) fn table_index(args: &[CrispSet], universe_size: usize) -> usize {
    args.iter()
        .enumerate()
        .fold(0usize, |acc, (i, a)| acc | (a.bits() as usize) << (i * universe_size))
}

fn check_crisp_universe(size: usize) -> Result<()> {
    if size > MAX_CRISP_UNIVERSE {
        Err(Error::UniverseTooLarge {
            size,
            max: MAX_CRISP_UNIVERSE,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crisp(bits: &[u8]) -> CrispSet {
        CrispSet::from_bools(&bits.iter().map(|&b| b == 1).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn unary_builtins() {
        let tbl = |q: &SemiFuzzyQuantifier| match q.kernel() {
            Kernel::UnaryQuantitative { table, .. } => table.to_vec(),
            _ => unreachable!(),
        };
        assert_eq!(tbl(&SemiFuzzyQuantifier::exists(3)), vec![0.0, 1.0, 1.0, 1.0]);
        assert_eq!(tbl(&SemiFuzzyQuantifier::forall(3)), vec![0.0, 0.0, 0.0, 1.0]);
        assert_eq!(
            tbl(&SemiFuzzyQuantifier::identity(4).unwrap()),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(SemiFuzzyQuantifier::identity(0).unwrap_err(), Error::EmptyUniverse);
    }

    #[test]
    fn at_least_about_eighty_percent_example() {
        let q = SemiFuzzyQuantifier::binary_proportional(
            FuzzyNumber::smooth_step(0.5, 0.8).unwrap(),
            1.0,
            8,
        )
        .unwrap();
        let y1 = crisp(&[1, 0, 1, 0, 1, 0, 1, 1]);
        let y2 = crisp(&[1, 0, 1, 0, 1, 0, 0, 0]);
        let v = q.eval(&[y1, y2]).unwrap();
        assert!((v - 2.0 / 9.0).abs() < 1e-12);
        assert_eq!(q.eval(&[CrispSet::empty(8).unwrap(), y2]).unwrap(), 1.0);
    }

    #[test]
    fn crisp_at_least_eighty_percent_example() {
        let q = SemiFuzzyQuantifier::binary_proportional(FuzzyNumber::AtLeast(0.8), 1.0, 8).unwrap();
        let y1 = crisp(&[1, 0, 1, 0, 1, 0, 1, 1]);
        let y2 = crisp(&[1, 0, 1, 0, 1, 0, 0, 0]);
        assert_eq!(q.eval(&[y1, y2]).unwrap(), 0.0);
    }

    #[test]
    fn ruspini_partition_sums_to_one() {
        let parts = SemiFuzzyQuantifier::ruspini_partition(4).unwrap();
        for args in parts[0].crisp_tuples().unwrap() {
            let sum: f64 = parts.iter().map(|q| q.eval(&args).unwrap()).sum();
            assert!((sum - 1.0).abs() <= 1e-12, "{args:?}");
            if args[0].is_empty() {
                for q in &parts {
                    assert!((q.value(&args) - 1.0 / 3.0).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn ruspini_at_one_half() {
        let parts = SemiFuzzyQuantifier::ruspini_partition(4).unwrap();
        let y1 = crisp(&[1, 1, 0, 0]);
        let y2 = crisp(&[1, 0, 0, 0]);
        let values: Vec<f64> = parts.iter().map(|q| q.value(&[y1, y2])).collect();
        assert_eq!(values, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn some_all_no() {
        let some = SemiFuzzyQuantifier::some(3).unwrap();
        let all = SemiFuzzyQuantifier::all(3).unwrap();
        let no = SemiFuzzyQuantifier::no(3).unwrap();
        for args in some.crisp_tuples().unwrap() {
            let (a, b) = (args[0], args[1]);
            assert_eq!(some.value(&args), (!a.intersection(&b).is_empty()) as u8 as f64);
            assert_eq!(all.value(&args), a.is_subset_of(&b) as u8 as f64);
            assert_eq!(no.value(&args), a.intersection(&b).is_empty() as u8 as f64);
        }
    }

    #[test]
    fn eval_checks_arguments() {
        let q = SemiFuzzyQuantifier::some(3).unwrap();
        let y = CrispSet::empty(3).unwrap();
        assert!(matches!(q.eval(&[y]), Err(Error::ArityMismatch { .. })));
        assert!(matches!(
            q.eval(&[y, CrispSet::empty(2).unwrap()]),
            Err(Error::UniverseMismatch { .. })
        ));
        let bad = SemiFuzzyQuantifier::from_fn("bad", 1, 2, |_| 1.5).unwrap();
        assert!(matches!(
            bad.eval(&[CrispSet::empty(2).unwrap()]),
            Err(Error::InvalidQuantifierValue { .. })
        ));
    }

    #[test]
    fn materialize_preserves_values() {
        let q = SemiFuzzyQuantifier::from_fn("card", 2, 3, |a| {
            (a[0].cardinality() + 2 * a[1].cardinality()) as f64 / 9.0
        })
        .unwrap();
        let t = q.materialize().unwrap();
        assert_eq!(t.kernel().kind(), "table");
        for args in q.crisp_tuples().unwrap() {
            assert_eq!(q.value(&args), t.value(&args));
        }
        let big = SemiFuzzyQuantifier::constant(3, 7, 0.5).unwrap();
        assert!(big.materialize().is_err());
    }

    #[test]
    fn table_constructor_validates() {
        assert!(SemiFuzzyQuantifier::from_table("t", 1, 2, vec![0.0; 3]).is_err());
        assert!(SemiFuzzyQuantifier::from_table("t", 1, 2, vec![0.0, 0.1, 2.0, 0.0]).is_err());
        let t = SemiFuzzyQuantifier::from_table("t", 1, 2, vec![0.0, 0.1, 0.2, 0.3]).unwrap();
        assert_eq!(t.value(&[CrispSet::full(2).unwrap()]), 0.3);
    }
}
