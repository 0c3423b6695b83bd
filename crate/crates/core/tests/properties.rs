use probquant::algebra::{external_negation, internal_negation};
use probquant::{
    cardinality_distribution, eval_exact, eval_unary_dp, joint_cardinality_distribution,
    mass_table, FuzzySet, SemiFuzzyQuantifier,
};
use proptest::prelude::*;

fn grades(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(
        prop_oneof![1 => Just(0.0), 1 => Just(1.0), 6 => 0.0..=1.0f64],
        0..=max_len,
    )
}

fn pair(max_len: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1..=max_len).prop_flat_map(|m| {
        let g = prop::collection::vec(0.0..=1.0f64, m);
        (g.clone(), g)
    })
}

proptest! {
    #[test]
    fn masses_sum_to_one(g in grades(12)) {
        let x = FuzzySet::new(g).unwrap();
        let total: f64 = mass_table(&x).unwrap().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cardinality_law_is_a_distribution(g in grades(200)) {
        let x = FuzzySet::new(g).unwrap();
        let p = cardinality_distribution(&x);
        prop_assert!(p.probabilities().iter().all(|&v| v >= 0.0));
        prop_assert!((p.total_mass() - 1.0).abs() < 1e-9);
        // the mean of a Poisson binomial law is the sigma count
        prop_assert!((p.mean() - x.sigma_count()).abs() < 1e-9);
    }

    #[test]
    fn projection_marginal_law(g in grades(10), pick in any::<prop::sample::Index>()) {
        prop_assume!(!g.is_empty());
        let x = FuzzySet::new(g).unwrap();
        let e = pick.index(x.len());
        let table = mass_table(&x).unwrap();
        let p: f64 = table.iter().enumerate().filter(|(bits, _)| bits >> e & 1 == 1).map(|(_, w)| w).sum();
        prop_assert!((p - x.grade(e)).abs() < 1e-12);
    }

    #[test]
    fn negation_symmetry(g in grades(10), q in prop::collection::vec(0.0..=1.0f64, 11)) {
        let m = g.len();
        let x = FuzzySet::new(g).unwrap();
        let q = SemiFuzzyQuantifier::unary_quantitative("q", q[..=m].to_vec()).unwrap();
        let base = eval_unary_dp(&q, &x).unwrap();
        let ext = eval_unary_dp(&external_negation(&q).unwrap(), &x).unwrap();
        prop_assert!((ext - (1.0 - base)).abs() < 1e-12);
        let int = eval_unary_dp(&internal_negation(&q).unwrap(), &x).unwrap();
        let flipped = eval_unary_dp(&q, &x.complement()).unwrap();
        prop_assert!((int - flipped).abs() < 1e-12);
    }

    #[test]
    fn unary_dp_equals_exact(g in grades(12), q in prop::collection::vec(0.0..=1.0f64, 13)) {
        let m = g.len();
        let x = FuzzySet::new(g).unwrap();
        let q = SemiFuzzyQuantifier::unary_quantitative("q", q[..=m].to_vec()).unwrap();
        let dp = eval_unary_dp(&q, &x).unwrap();
        let exact = eval_exact(&q, &[&x]).unwrap();
        prop_assert!((dp - exact).abs() < 1e-9);
        prop_assert!((0.0..=1.0).contains(&dp));
    }

    #[test]
    fn joint_law_marginals((g1, g2) in pair(40)) {
        let x1 = FuzzySet::new(g1).unwrap();
        let x2 = FuzzySet::new(g2).unwrap();
        let q = joint_cardinality_distribution(&x1, &x2).unwrap();
        prop_assert!((q.total_mass() - 1.0).abs() < 1e-9);
        let first = q.first_marginal();
        let direct = cardinality_distribution(&x1);
        for (a, b) in first.probabilities().iter().zip(direct.probabilities()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        let meet = cardinality_distribution(&x1.product_intersection(&x2).unwrap());
        for (a, b) in q.intersection_marginal().probabilities().iter().zip(meet.probabilities()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        // |Y1 ∩ Y2| never exceeds |Y1|
        prop_assert!(q.cells().all(|(ci, c1, _)| ci <= c1));
    }

    #[test]
    fn crisp_arguments_reproduce_kernel(bits in 0u64..(1 << 8), q in prop::collection::vec(0.0..=1.0f64, 9)) {
        let y = probquant::CrispSet::from_bits(bits, 8).unwrap();
        let x = FuzzySet::from_crisp(&y);
        let q = SemiFuzzyQuantifier::unary_quantitative("q", q).unwrap();
        prop_assert_eq!(eval_unary_dp(&q, &x).unwrap(), q.value(&[y]));
        prop_assert_eq!(eval_exact(&q, &[&x]).unwrap(), q.value(&[y]));
    }
}
