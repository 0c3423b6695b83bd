//! Finite universes, fuzzy sets and crisp sets.
//!
//! A fuzzy set is read as a family of independent Bernoulli trials: the grade
//! of an element is the probability that the element belongs to a crisp
//! *representative* of the set. [`mass`] is the probability of one particular
//! representative.
//!
//! Empty universes are accepted. The only representative of a set on an empty
//! universe is the empty set, with mass 1.

use std::fmt;

use crate::error::{Error, Result};

/// Largest universe a [`CrispSet`] can describe (one bit per element).
pub const MAX_CRISP_UNIVERSE: usize = 64;

/// Largest universe for which a full table of representative masses
/// (`2^m` entries) is materialized.
pub const MAX_MASS_TABLE_BITS: usize = 24;

/// A finite base set `{0, .., size - 1}` with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Universe {
    pub fn new(size: usize) -> Self {
        Universe { size, labels: None }
    }

    /// Labels must be unique; the universe size is the number of labels.
    pub fn with_labels<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidLabels(format!("duplicate label `{label}`")));
            }
        }
        Ok(Universe {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of element `index`; falls back to `e{index+1}`.
    pub fn label(&self, index: usize) -> String {
        match &self.labels {
            Some(labels) if index < labels.len() => labels[index].clone(),
            _ => format!("e{}", index + 1),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Builds a fuzzy set on this universe, checking the number of grades.
    pub fn fuzzy_set(&self, grades: Vec<f64>) -> Result<FuzzySet> {
        if grades.len() != self.size {
            return Err(Error::UniverseMismatch {
                expected: self.size,
                found: grades.len(),
            });
        }
        FuzzySet::new(grades)
    }
}

/// Membership grades over the universe `{0, .., m - 1}`.
///
/// Every grade is a finite number in `[0, 1]`; construction rejects anything
/// else instead of clamping.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    grades: Vec<f64>,
}

impl FuzzySet {
    pub fn new(grades: Vec<f64>) -> Result<Self> {
        for (index, &value) in grades.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidGrade { index, value });
            }
        }
        Ok(FuzzySet { grades })
    }

    /// The set whose grades are all `value`.
    pub fn constant(size: usize, value: f64) -> Result<Self> {
        FuzzySet::new(vec![value; size])
    }

    /// The fuzzy set with the same members as `set` (grades 0 or 1).
    pub fn from_crisp(set: &CrispSet) -> Self {
        FuzzySet {
            grades: (0..set.len())
                .map(|i| if set.contains(i) { 1.0 } else { 0.0 })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grades(&self) -> &[f64] {
        &self.grades
    }

    pub fn grade(&self, index: usize) -> f64 {
        self.grades[index]
    }

    pub fn into_grades(self) -> Vec<f64> {
        self.grades
    }

    /// True when every grade is exactly 0 or 1.
    pub fn is_crisp(&self) -> bool {
        self.grades.iter().all(|&g| g == 0.0 || g == 1.0)
    }

    /// The crisp set of elements with grade 1, if the set is crisp.
    pub fn to_crisp(&self) -> Option<CrispSet> {
        if !self.is_crisp() {
            return None;
        }
        CrispSet::from_predicate(self.len(), |i| self.grades[i] == 1.0).ok()
    }

    /// Sum of the grades (the expected cardinality of a representative).
    pub fn sigma_count(&self) -> f64 {
        self.grades.iter().sum()
    }

    pub fn mean(&self) -> Option<f64> {
        if self.is_empty() {
            None
        } else {
            Some(self.sigma_count() / self.len() as f64)
        }
    }

    /// Standard negation `1 - x`.
    pub fn complement(&self) -> FuzzySet {
        FuzzySet {
            grades: self.grades.iter().map(|g| 1.0 - g).collect(),
        }
    }

    /// Elementwise combination of two sets on the same universe. The result is
    /// validated, so `op` must map `[0,1]^2` into `[0,1]`.
    pub fn zip_with(&self, other: &FuzzySet, op: impl Fn(f64, f64) -> f64) -> Result<FuzzySet> {
        check_same_universe(self.len(), other.len())?;
        FuzzySet::new(
            self.grades
                .iter()
                .zip(&other.grades)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        )
    }

    /// Intersection under the product t-norm.
    pub fn product_intersection(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Union under the probabilistic sum `a + b - ab`.
    pub fn probabilistic_union(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, |a, b| a + b - a * b)
    }

    /// Pointwise inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &FuzzySet) -> bool {
        self.len() == other.len() && self.grades.iter().zip(&other.grades).all(|(a, b)| a <= b)
    }

    /// Sup-distance between two sets on the same universe.
    pub fn distance(&self, other: &FuzzySet) -> Result<f64> {
        check_same_universe(self.len(), other.len())?;
        Ok(self
            .grades
            .iter()
            .zip(&other.grades)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.grades.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}/e{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// A subset of a universe of at most [`MAX_CRISP_UNIVERSE`] elements.
///
/// Bit `i` of the mask is the characteristic function at element `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrispSet {
    bits: u64,
    len: u8,
}

impl CrispSet {
    pub fn empty(len: usize) -> Result<Self> {
        CrispSet::from_bits(0, len)
    }

    pub fn full(len: usize) -> Result<Self> {
        check_crisp_len(len)?;
        Ok(CrispSet {
            bits: full_mask(len),
            len: len as u8,
        })
    }

    /// Bits above `len` must be clear.
    pub fn from_bits(bits: u64, len: usize) -> Result<Self> {
        check_crisp_len(len)?;
        if bits & !full_mask(len) != 0 {
            let index = 63 - bits.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, size: len });
        }
        Ok(CrispSet {
            bits,
            len: len as u8,
        })
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_crisp_len(len)?;
        let mut bits = 0u64;
        for index in indices {
            if index >= len {
                return Err(Error::IndexOutOfRange { index, size: len });
            }
            bits |= 1 << index;
        }
        Ok(CrispSet {
            bits,
            len: len as u8,
        })
    }

    /// Parses a characteristic vector such as `[1, 0, 1]`.
    pub fn from_bools(flags: &[bool]) -> Result<Self> {
        CrispSet::from_predicate(flags.len(), |i| flags[i])
    }

    pub fn from_predicate(len: usize, member: impl Fn(usize) -> bool) -> Result<Self> {
        CrispSet::from_indices(len, (0..len).filter(|&i| member(i)))
    }

    /// Unchecked constructor for hot loops; `bits` must fit in `len`.
    #[inline]
    pub(crate) fn raw(bits: u64, len: usize) -> Self {
        debug_assert!(len <= MAX_CRISP_UNIVERSE && bits & !full_mask(len) == 0);
        CrispSet {
            bits,
            len: len as u8,
        }
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// True when the universe is empty (not when the set is empty).
    pub fn universe_is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.len())
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        index < self.len() && self.bits >> index & 1 == 1
    }

    #[inline]
    pub fn cardinality(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn complement(&self) -> CrispSet {
        CrispSet {
            bits: !self.bits & full_mask(self.len()),
            len: self.len,
        }
    }

    #[inline]
    pub fn union(&self, other: &CrispSet) -> CrispSet {
        debug_assert_eq!(self.len, other.len);
        CrispSet {
            bits: self.bits | other.bits,
            len: self.len,
        }
    }

    #[inline]
    pub fn intersection(&self, other: &CrispSet) -> CrispSet {
        debug_assert_eq!(self.len, other.len);
        CrispSet {
            bits: self.bits & other.bits,
            len: self.len,
        }
    }

    #[inline]
    pub fn is_subset_of(&self, other: &CrispSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.contains(i))
    }

    /// Projection onto the sub-universe `indices` (re-indexed from 0).
    pub fn restrict(&self, indices: &[usize]) -> Result<CrispSet> {
        for &index in indices {
            if index >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index,
                    size: self.len(),
                });
            }
        }
        CrispSet::from_predicate(indices.len(), |k| self.contains(indices[k]))
    }

    /// All `2^len` subsets in increasing bitmask order.
    pub fn all(len: usize) -> Result<impl Iterator<Item = CrispSet>> {
        check_crisp_len(len)?;
        if len >= MAX_CRISP_UNIVERSE {
            return Err(Error::UniverseTooLarge {
                size: len,
                max: MAX_CRISP_UNIVERSE - 1,
            });
        }
        Ok((0..1u64 << len).map(move |bits| CrispSet::raw(bits, len)))
    }
}

impl fmt::Display for CrispSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "e{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[inline]
pub(crate) fn full_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn check_crisp_len(len: usize) -> Result<()> {
    if len > MAX_CRISP_UNIVERSE {
        Err(Error::UniverseTooLarge {
            size: len,
            max: MAX_CRISP_UNIVERSE,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_same_universe(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::UniverseMismatch { expected, found })
    }
}

/// Probability that `y` is the representative of `x`:
/// `∏_{e∈Y} μ(e) · ∏_{e∉Y} (1 - μ(e))`.
pub fn mass(x: &FuzzySet, y: &CrispSet) -> Result<f64> {
    check_same_universe(x.len(), y.len())?;
    Ok(mass_unchecked(x.grades(), y.bits()))
}

#[inline]
pub(crate) fn mass_unchecked(grades: &[f64], bits: u64) -> f64 {
    grades
        .iter()
        .enumerate()
        .map(|(i, &g)| if bits >> i & 1 == 1 { g } else { 1.0 - g })
        .product()
}

/// Masses of every representative of `x`, indexed by bitmask.
pub fn mass_table(x: &FuzzySet) -> Result<Vec<f64>> {
    if x.len() > MAX_MASS_TABLE_BITS {
        return Err(Error::SizeGuard {
            bits: x.len(),
            limit: MAX_MASS_TABLE_BITS,
        });
    }
    let mut table = vec![0.0; 1usize << x.len()];
    table[0] = 1.0;
    for (k, &g) in x.grades().iter().enumerate() {
        let half = 1usize << k;
        for subset in 0..half {
            let base = table[subset];
            table[subset | half] = base * g;
            table[subset] = base * (1.0 - g);
        }
    }
    Ok(table)
}

/// Projection of `x` onto the elements listed in `indices`, re-indexed from 0.
pub fn restrict(x: &FuzzySet, indices: &[usize]) -> Result<FuzzySet> {
    let grades = indices
        .iter()
        .map(|&index| {
            x.grades.get(index).copied().ok_or(Error::IndexOutOfRange {
                index,
                size: x.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzySet { grades })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x3() -> FuzzySet {
        FuzzySet::new(vec![0.8, 0.2, 0.6]).unwrap()
    }

    #[test]
    fn mass_of_worked_example() {
        let y = CrispSet::from_indices(3, [0, 2]).unwrap();
        assert!((mass(&x3(), &y).unwrap() - 0.384).abs() < 1e-12);
    }

    #[test]
    fn crisp_fuzzy_set_has_one_representative() {
        let y = CrispSet::from_indices(4, [1, 3]).unwrap();
        let x = FuzzySet::from_crisp(&y);
        for z in CrispSet::all(4).unwrap() {
            let expected = if z == y { 1.0 } else { 0.0 };
            assert_eq!(mass(&x, &z).unwrap(), expected);
        }
    }

    #[test]
    fn full_grade_excludes_empty_representative() {
        let x = FuzzySet::new(vec![1.0]).unwrap();
        assert_eq!(mass(&x, &CrispSet::empty(1).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn empty_universe_has_unit_mass() {
        let x = FuzzySet::new(vec![]).unwrap();
        assert_eq!(mass(&x, &CrispSet::empty(0).unwrap()).unwrap(), 1.0);
        assert_eq!(mass_table(&x).unwrap(), vec![1.0]);
    }

    #[test]
    fn rejects_bad_grades() {
        assert_eq!(
            FuzzySet::new(vec![0.5, 1.2]),
            Err(Error::InvalidGrade {
                index: 1,
                value: 1.2
            })
        );
        assert!(FuzzySet::new(vec![f64::NAN]).is_err());
        assert!(FuzzySet::new(vec![-0.0001]).is_err());
    }

    #[test]
    fn mass_rejects_universe_mismatch() {
        let y = CrispSet::empty(2).unwrap();
        assert_eq!(
            mass(&x3(), &y),
            Err(Error::UniverseMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn restrict_copies_selected_grades() {
        assert_eq!(restrict(&x3(), &[0, 2]).unwrap().grades(), &[0.8, 0.6]);
        let empty = restrict(&FuzzySet::new(vec![0.5]).unwrap(), &[]).unwrap();
        assert!(empty.is_empty());
        assert_eq!(mass(&empty, &CrispSet::empty(0).unwrap()).unwrap(), 1.0);
        assert_eq!(
            restrict(&x3(), &[3]),
            Err(Error::IndexOutOfRange { index: 3, size: 3 })
        );
    }

    #[test]
    fn mass_table_matches_direct_products() {
        let x = x3();
        let table = mass_table(&x).unwrap();
        for y in CrispSet::all(3).unwrap() {
            assert!((table[y.bits() as usize] - mass(&x, &y).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn universe_labels() {
        let u = Universe::with_labels(["ann", "bob"]).unwrap();
        assert_eq!(u.size(), 2);
        assert_eq!(u.index_of("bob"), Some(1));
        assert!(Universe::with_labels(["a", "a"]).is_err());
        assert!(u.fuzzy_set(vec![0.1]).is_err());
        assert_eq!(Universe::new(3).label(0), "e1");
    }

    #[test]
    fn crisp_set_operations() {
        let a = CrispSet::from_indices(4, [0, 1]).unwrap();
        let b = CrispSet::from_indices(4, [1, 2]).unwrap();
        assert_eq!(a.union(&b).cardinality(), 3);
        assert_eq!(a.intersection(&b).bits(), 0b0010);
        assert_eq!(a.complement().bits(), 0b1100);
        assert!(CrispSet::full(4).unwrap().is_full());
        assert!(CrispSet::from_bits(0b10000, 4).is_err());
        assert!(CrispSet::empty(65).is_err());
        assert_eq!(CrispSet::full(64).unwrap().cardinality(), 64);
        assert_eq!(a.restrict(&[1, 3]).unwrap().bits(), 0b01);
        assert_eq!(a.to_string(), "{e1,e2}");
    }
}
