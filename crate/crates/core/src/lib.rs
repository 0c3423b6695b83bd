//! Probabilistic evaluation of fuzzy quantified sentences.
//!
//! A fuzzy argument set is read as a distribution over crisp sets: each
//! element enters a random representative independently with probability
//! equal to its grade. A semi-fuzzy quantifier (defined on crisp arguments)
//! is lifted to fuzzy arguments by taking its expectation under the product
//! of these distributions.
//!
//! ```
//! use probquant::{evaluate, FuzzyNumber, FuzzySet, SemiFuzzyQuantifier, Strategy};
//!
//! // "nearly all" as a proportional quantifier on a four-element universe
//! let nearly_all = FuzzyNumber::sampled(vec![(0.5, 0.0), (1.0, 1.0)]).unwrap();
//! let q = SemiFuzzyQuantifier::binary_proportional(nearly_all, 1.0, 4).unwrap();
//! let workers = FuzzySet::new(vec![0.8, 0.9, 1.0, 0.2]).unwrap();
//! let reliable = FuzzySet::new(vec![1.0, 0.8, 0.3, 0.1]).unwrap();
//! let r = evaluate(&q, &[&workers, &reliable], Strategy::Auto).unwrap();
//! assert!((r.value - 0.346).abs() < 5e-4);
//! ```

pub mod algebra;
pub mod asymptotics;
pub mod axioms;
pub mod cardinality;
pub mod error;
pub mod evaluate;
pub mod number;
pub mod quantifier;
pub mod sets;

pub use cardinality::{
    cardinality_distribution, joint_cardinality_distribution, CardinalityDistribution,
    JointCardinalityDistribution,
};
pub use error::{Error, Result};
pub use evaluate::{
    eval_binary_absolute_dp, eval_binary_proportional_dp, eval_exact, eval_exact_with_threads,
    eval_limit, eval_unary_dp, evaluate, evaluate_with_threads, EvalRecord, Evaluator,
    FuzzyQuantifier, LimitEstimate, Strategy,
};
pub use number::FuzzyNumber;
pub use quantifier::{Kernel, SemiFuzzyQuantifier};
pub use sets::{mass, mass_table, CrispSet, FuzzySet, Universe};
