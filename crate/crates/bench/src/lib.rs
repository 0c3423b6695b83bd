//! Seeded instances shared by the evaluator benchmarks.

use probquant::{FuzzyNumber, FuzzySet, SemiFuzzyQuantifier};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_set(rng: &mut ChaCha8Rng, m: usize) -> FuzzySet {
    FuzzySet::new((0..m).map(|_| rng.random()).collect()).expect("uniform grades lie in [0, 1)")
}

/// A proportional unary quantifier ("most") and one random argument.
pub fn unary_instance(m: usize, seed: u64) -> (SemiFuzzyQuantifier, FuzzySet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let most = FuzzyNumber::smooth_step(0.4, 0.7).expect("valid step");
    let q = SemiFuzzyQuantifier::unary_proportional(most, m).expect("non-empty universe");
    (q, random_set(&mut rng, m))
}

/// A binary proportional quantifier ("nearly all") and two random arguments.
pub fn binary_instance(m: usize, seed: u64) -> (SemiFuzzyQuantifier, FuzzySet, FuzzySet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nearly_all = FuzzyNumber::trapezoid_open(Some(0.5), 1.0, 1.0, None).expect("valid trapezoid");
    let q = SemiFuzzyQuantifier::binary_proportional(nearly_all, 1.0, m).expect("valid quantifier");
    let x1 = random_set(&mut rng, m);
    let x2 = random_set(&mut rng, m);
    (q, x1, x2)
}
