//! Constructions on quantifiers and sets that the coherence properties are
//! stated in terms of: negations, argument meets and joins, argument
//! permutation and insertion, functional precomposition, induced truth
//! functions and the extension principle.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::evaluate::eval_exact;
use crate::quantifier::{Kernel, SemiFuzzyQuantifier};
use crate::sets::{check_same_universe, mass_table, CrispSet, FuzzySet, MAX_MASS_TABLE_BITS};

fn require_arity(q: &SemiFuzzyQuantifier, min: usize) -> Result<()> {
    if q.arity() < min {
        Err(Error::ArityTooSmall {
            arity: q.arity(),
            min,
        })
    } else {
        Ok(())
    }
}

fn shared(q: &SemiFuzzyQuantifier) -> Arc<SemiFuzzyQuantifier> {
    Arc::new(q.clone())
}

/// `¬Q`: `1 - Q(Y₁, .., Yₙ)`.
pub fn external_negation(q: &SemiFuzzyQuantifier) -> Result<SemiFuzzyQuantifier> {
    let name = format!("¬{}", q.name());
    let (n, m) = (q.arity(), q.universe_size());
    match q.kernel() {
        Kernel::Table(t) => {
            let table: Vec<f64> = t.iter().map(|v| 1.0 - v).collect();
            SemiFuzzyQuantifier::from_table(name, n, m, table)
        }
        Kernel::UnaryQuantitative { table, .. } => {
            let table: Vec<f64> = table.iter().map(|v| 1.0 - v).collect();
            Ok(SemiFuzzyQuantifier::unary_quantitative(name, table)?)
        }
        _ => {
            let inner = shared(q);
            SemiFuzzyQuantifier::from_fn(name, n, m, move |args| 1.0 - inner.value(args))
        }
    }
}

/// `Q¬`: the last argument is replaced by its complement.
pub fn internal_negation(q: &SemiFuzzyQuantifier) -> Result<SemiFuzzyQuantifier> {
    require_arity(q, 1)?;
    let name = format!("{}¬", q.name());
    let (n, m) = (q.arity(), q.universe_size());
    if let Kernel::UnaryQuantitative { table, .. } = q.kernel() {
        let table: Vec<f64> = table.iter().rev().copied().collect();
        return SemiFuzzyQuantifier::unary_quantitative(name, table);
    }
    let inner = shared(q);
    SemiFuzzyQuantifier::from_fn(name, n, m, move |args| {
        let mut buf = args.to_vec();
        buf[n - 1] = buf[n - 1].complement();
        inner.value(&buf)
    })
}

/// `Q□ = ¬(Q¬)`.
pub fn dual(q: &SemiFuzzyQuantifier) -> Result<SemiFuzzyQuantifier> {
    Ok(external_negation(&internal_negation(q)?)?.with_name(format!("{}□", q.name())))
}

/// `Q∪(Y₁, .., Yₙ, Yₙ₊₁) = Q(Y₁, .., Yₙ ∪ Yₙ₊₁)`.
pub fn union_arg(q: &SemiFuzzyQuantifier) -> Result<SemiFuzzyQuantifier> {
    merge_last(q, format!("{}∪", q.name()), |a, b| a.union(b))
}

/// `Q∩(Y₁, .., Yₙ, Yₙ₊₁) = Q(Y₁, .., Yₙ ∩ Yₙ₊₁)`.
pub fn intersection_arg(q: &SemiFuzzyQuantifier) -> Result<SemiFuzzyQuantifier> {
    merge_last(q, format!("{}∩", q.name()), |a, b| a.intersection(b))
}

fn merge_last(
    q: &SemiFuzzyQuantifier,
    name: String,
    op: fn(&CrispSet, &CrispSet) -> CrispSet,
) -> Result<SemiFuzzyQuantifier> {
    require_arity(q, 1)?;
    let (n, m) = (q.arity(), q.universe_size());
    let inner = shared(q);
    SemiFuzzyQuantifier::from_fn(name, n + 1, m, move |args| {
        let mut buf = args[..n].to_vec();
        buf[n - 1] = op(&args[n - 1], &args[n]);
        inner.value(&buf)
    })
}

/// Swaps arguments `i` and `j` (zero-based).
pub fn transpose_args(q: &SemiFuzzyQuantifier, i: usize, j: usize) -> Result<SemiFuzzyQuantifier> {
    let n = q.arity();
    for position in [i, j] {
        if position >= n {
            return Err(Error::InvalidArgument { position, arity: n });
        }
    }
    let inner = shared(q);
    SemiFuzzyQuantifier::from_fn(
        format!("{}τ{}{}", q.name(), i + 1, j + 1),
        n,
        q.universe_size(),
        move |args| {
            let mut buf = args.to_vec();
            buf.swap(i, j);
            inner.value(&buf)
        },
    )
}

/// `Q'(Y₁, .., Yₙ₋₁) = Q(Y₁, .., Yₙ₋₁, A)` for a crisp `A`.
pub fn crisp_arg_insertion(q: &SemiFuzzyQuantifier, a: &CrispSet) -> Result<SemiFuzzyQuantifier> {
    require_arity(q, 1)?;
    check_same_universe(q.universe_size(), a.len())?;
    let (n, a) = (q.arity(), *a);
    let inner = shared(q);
    SemiFuzzyQuantifier::from_fn(
        format!("{}<{}", q.name(), a),
        n - 1,
        q.universe_size(),
        move |args| {
            let mut buf = args.to_vec();
            buf.push(a);
            inner.value(&buf)
        },
    )
}

/// `Q'(Y₁, .., Yₙ₋₁) = Σ_Z m_A(Z) · Q(Y₁, .., Yₙ₋₁, Z)`: the last argument is
/// averaged over the representatives of a fuzzy `A`.
pub fn fuzzy_arg_insertion(q: &SemiFuzzyQuantifier, a: &FuzzySet) -> Result<SemiFuzzyQuantifier> {
    require_arity(q, 1)?;
    let m = q.universe_size();
    check_same_universe(m, a.len())?;
    if m > MAX_MASS_TABLE_BITS {
        return Err(Error::SizeGuard {
            bits: m,
            limit: MAX_MASS_TABLE_BITS,
        });
    }
    let support: Vec<(CrispSet, f64)> = mass_table(a)?
        .into_iter()
        .enumerate()
        .filter(|&(_, w)| w != 0.0)
        .map(|(bits, w)| (CrispSet::raw(bits as u64, m), w))
        .collect();
    let n = q.arity();
    let inner = shared(q);
    SemiFuzzyQuantifier::from_fn(format!("{}<~", q.name()), n - 1, m, move |args| {
        let mut buf = args.to_vec();
        buf.push(CrispSet::raw(0, m));
        let total: f64 = support
            .iter()
            .map(|&(z, w)| {
                buf[n - 1] = z;
                w * inner.value(&buf)
            })
            .sum();
        total.clamp(0.0, 1.0)
    })
}

/// `Q'(Y₁, .., Yₙ) = Q(f₁(Y₁), .., fₙ(Yₙ))` where each `fᵢ` maps a universe of
/// `source_size` elements into the universe of `q`. The result lives on the
/// source universe.
pub fn precompose(
    q: &SemiFuzzyQuantifier,
    maps: &[Vec<usize>],
    source_size: usize,
) -> Result<SemiFuzzyQuantifier> {
    if maps.len() != q.arity() {
        return Err(Error::ArityMismatch {
            expected: q.arity(),
            found: maps.len(),
        });
    }
    let target = q.universe_size();
    for map in maps {
        check_map(map, source_size, target)?;
    }
    let maps: Vec<Vec<usize>> = maps.to_vec();
    let inner = shared(q);
    SemiFuzzyQuantifier::from_fn(
        format!("{}∘f", q.name()),
        q.arity(),
        source_size,
        move |args| {
            let images: Vec<CrispSet> = args
                .iter()
                .zip(&maps)
                .map(|(y, f)| image(y, f, target))
                .collect();
            inner.value(&images)
        },
    )
}

fn check_map(map: &[usize], source_size: usize, target_size: usize) -> Result<()> {
    check_same_universe(source_size, map.len())?;
    for &t in map {
        if t >= target_size {
            return Err(Error::IndexOutOfRange {
                index: t,
                size: target_size,
            });
        }
    }
    Ok(())
}

fn image(y: &CrispSet, map: &[usize], target_size: usize) -> CrispSet {
    let bits = y.indices().fold(0u64, |acc, e| acc | 1 << map[e]);
    CrispSet::raw(bits, target_size)
}

/// Image of a fuzzy set under `map`: `μ(e') = 1 - Π_{f(e)=e'} (1 - μ(e))`,
/// which is the membership probability of `e'` in the image of a
/// representative. Elements with empty preimage get grade 0.
pub fn extension_principle(map: &[usize], target_size: usize, x: &FuzzySet) -> Result<FuzzySet> {
    check_map(map, x.len(), target_size)?;
    let mut miss = vec![1.0; target_size];
    for (e, &g) in x.grades().iter().enumerate() {
        miss[map[e]] *= 1.0 - g;
    }
    FuzzySet::new(miss.into_iter().map(|p| 1.0 - p).collect())
}

/// A two-valued truth function `{0,1}ⁿ → {0,1}`. Row `k` of the table holds
/// `f(x₁, .., xₙ)` where bit `i` of `k` is `xᵢ₊₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthFunction {
    arity: usize,
    table: Vec<bool>,
}

/// Largest arity for which a truth function can be induced.
pub const MAX_TRUTH_FUNCTION_ARITY: usize = 20;

impl TruthFunction {
    pub fn new(arity: usize, table: Vec<bool>) -> Result<Self> {
        if arity > MAX_TRUTH_FUNCTION_ARITY {
            return Err(Error::ArityBound {
                arity,
                max: MAX_TRUTH_FUNCTION_ARITY,
            });
        }
        if table.len() != 1 << arity {
            return Err(Error::TableSize {
                expected: 1 << arity,
                found: table.len(),
            });
        }
        Ok(TruthFunction { arity, table })
    }

    pub fn from_fn(arity: usize, f: impl Fn(&[bool]) -> bool) -> Result<Self> {
        if arity > MAX_TRUTH_FUNCTION_ARITY {
            return Err(Error::ArityBound {
                arity,
                max: MAX_TRUTH_FUNCTION_ARITY,
            });
        }
        let table = (0..1usize << arity)
            .map(|k| {
                let xs: Vec<bool> = (0..arity).map(|i| k >> i & 1 == 1).collect();
                f(&xs)
            })
            .collect();
        Ok(TruthFunction { arity, table })
    }

    pub fn identity() -> Self {
        TruthFunction {
            arity: 1,
            table: vec![false, true],
        }
    }

    pub fn negation() -> Self {
        TruthFunction {
            arity: 1,
            table: vec![true, false],
        }
    }

    pub fn and() -> Self {
        TruthFunction {
            arity: 2,
            table: vec![false, false, false, true],
        }
    }

    pub fn or() -> Self {
        TruthFunction {
            arity: 2,
            table: vec![false, true, true, true],
        }
    }

    pub fn implies() -> Self {
        // rows: (x1, x2) = (0,0), (1,0), (0,1), (1,1)
        TruthFunction {
            arity: 2,
            table: vec![true, false, true, true],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn apply(&self, xs: &[bool]) -> bool {
        let k = xs.iter().enumerate().fold(0, |acc, (i, &x)| acc | (x as usize) << i);
        self.table[k]
    }

    /// The quantifier `Q(Y₁, .., Yₙ) = f(e ∈ Y₁, .., e ∈ Yₙ)` on the
    /// one-element universe `{e}`.
    pub fn as_quantifier(&self) -> Result<SemiFuzzyQuantifier> {
        let table = self.table.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        SemiFuzzyQuantifier::from_table("truth function", self.arity, 1, table)
    }

    /// The induced fuzzy truth function: the quantifier of
    /// [`as_quantifier`](Self::as_quantifier) evaluated on singleton fuzzy
    /// sets with grades `xs`.
    pub fn induced(&self, xs: &[f64]) -> Result<f64> {
        if xs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: xs.len(),
            });
        }
        let sets = xs
            .iter()
            .map(|&x| FuzzySet::new(vec![x]))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&FuzzySet> = sets.iter().collect();
        eval_exact(&self.as_quantifier()?, &refs)
    }
}
