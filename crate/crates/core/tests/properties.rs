use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use pbt_core::figures::{det_fidelity_nonopt, success_probability};
use pbt_core::repcore::{
    character, class_size, enumerate_partitions, gl_multiplicity, sym_dimension, Partition, Permutation,
};
use pbt_core::sdc::{conditional_fidelities, sdc_report};
use pbt_core::simulator::{permutation_operator, Limits, Simulator};
use pbt_core::{Execution, ProtocolVariant};
use proptest::prelude::*;
use proptest::sample::select;

fn partition_of(n: usize) -> impl Strategy<Value = Partition> {
    select(enumerate_partitions(n, None))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Small `(N, d)` pairs the simulator handles in well under a second.
fn small_case() -> impl Strategy<Value = (usize, usize)> {
    select(vec![(1, 2), (2, 2), (3, 2), (4, 2), (2, 3)])
}

proptest! {
    #[test]
    fn schur_weyl_completeness(n in 0usize..=10, d in 1usize..=6) {
        let total: BigUint = enumerate_partitions(n, Some(d))
            .iter()
            .map(|l| sym_dimension(l) * gl_multiplicity(l, d))
            .sum();
        prop_assert_eq!(total, BigUint::from(d).pow(n as u32));
    }

    #[test]
    fn symmetric_group_branching(mu in (1usize..=9).prop_flat_map(partition_of)) {
        let below: BigUint = mu.remove_box().iter().map(sym_dimension).sum();
        prop_assert_eq!(sym_dimension(&mu), below);
    }

    #[test]
    fn unitary_pieri(alpha in (0usize..=8).prop_flat_map(partition_of), d in 1usize..=5) {
        prop_assume!(alpha.admissible(d));
        let up: BigUint = alpha
            .add_box()
            .iter()
            .filter(|m| m.admissible(d))
            .map(|m| gl_multiplicity(m, d))
            .sum();
        prop_assert_eq!(gl_multiplicity(&alpha, d) * BigUint::from(d), up);
    }

    #[test]
    fn character_row_orthogonality(
        (a, b) in (1usize..=6).prop_flat_map(|n| (partition_of(n), partition_of(n)))
    ) {
        let n = a.size();
        let s: BigInt = enumerate_partitions(n, None)
            .iter()
            .map(|c| BigInt::from(class_size(c)) * character(&a, c).unwrap() * character(&b, c).unwrap())
            .sum();
        let want = if a == b { factorial(n) } else { BigInt::zero() };
        prop_assert_eq!(s, want);
    }

    #[test]
    fn character_column_orthogonality(
        (r, s) in (1usize..=6).prop_flat_map(|n| (partition_of(n), partition_of(n)))
    ) {
        let n = r.size();
        let total: BigInt = enumerate_partitions(n, None)
            .iter()
            .map(|l| character(l, &r).unwrap() * character(l, &s).unwrap())
            .sum();
        let want = if r == s { factorial(n) / BigInt::from(class_size(&r)) } else { BigInt::zero() };
        prop_assert_eq!(total, want);
    }

    #[test]
    fn character_at_identity_is_dimension(l in (1usize..=10).prop_flat_map(partition_of)) {
        let id = Partition::new(vec![1; l.size()]).unwrap();
        prop_assert_eq!(character(&l, &id).unwrap(), BigInt::from(sym_dimension(&l)));
    }

    #[test]
    fn class_sizes_sum_to_order(n in 1usize..=10) {
        let total: BigUint = enumerate_partitions(n, None).iter().map(class_size).sum();
        prop_assert_eq!(BigInt::from(total), factorial(n));
    }

    #[test]
    fn permutation_operators_represent(
        (a, b) in (1usize..=4).prop_flat_map(|n| {
            let perms = Permutation::all(n);
            (select(perms.clone()), select(perms))
        }),
        d in 2usize..=3,
    ) {
        let limits = Limits::default();
        let va = permutation_operator(&a, d, &limits).unwrap();
        let vb = permutation_operator(&b, d, &limits).unwrap();
        let vab = permutation_operator(&a.compose(&b), d, &limits).unwrap();
        let direct = &va * &vb;
        let flipped = &vb * &va;
        prop_assert!(vab.max_abs_diff(&direct) < 1e-12 || vab.max_abs_diff(&flipped) < 1e-12);
    }

    #[test]
    fn analytic_merits_in_range(n in 1usize..=25, d in 2usize..=4) {
        for v in [ProtocolVariant::Minimal, ProtocolVariant::ProbabilisticNonOpt, ProtocolVariant::ProbabilisticOpt] {
            let p = success_probability(v, n, d, None).unwrap();
            let r = p.exact().unwrap();
            prop_assert!(r >= &num_rational::BigRational::zero() && r <= &num_rational::BigRational::one());
        }
        let f = det_fidelity_nonopt(n, d);
        prop_assert!(f > 0.0 && f <= 1.0 + 1e-12);
        // minimal scheme: F_det cannot exceed its success probability
        let p = success_probability(ProtocolVariant::Minimal, n, d, None).unwrap().value();
        prop_assert!(f <= p + 1e-12);
    }

    #[test]
    fn sdc_rows_normalised(n in 2usize..=200, d in 2usize..=5, t in 0.0f64..=1.0) {
        let f = t * (n as f64 / (d * d) as f64).min(1.0);
        let r = sdc_report(n, d, f).unwrap();
        prop_assert!((r.q_diag + (n as f64 - 1.0) * r.q_off - 1.0).abs() < 1e-9);
        let (diag, off) = conditional_fidelities(n, d, f).unwrap();
        prop_assert!(off >= -1e-15);
        prop_assert!((diag + (n as f64 - 1.0) * off - n as f64 / (d * d) as f64).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn povm_sets_are_valid(
        (n, d) in small_case(),
        v in select(ProtocolVariant::ALL.to_vec()),
        parallel in any::<bool>(),
    ) {
        prop_assume!(d == 2 || !matches!(v, ProtocolVariant::DeterministicOpt | ProtocolVariant::MinimalOptimized));
        let exec = if parallel { Execution::Parallel } else { Execution::Sequential };
        let sim = Simulator::with_config(n, d, exec, Limits::default()).unwrap();
        let povm = sim.build_povms(v, None).unwrap();
        prop_assert!(povm.completeness_residual() <= 1e-10, "completeness {}", povm.completeness_residual());
        prop_assert!(povm.min_eigenvalue() >= -1e-10, "positivity {}", povm.min_eigenvalue());
        prop_assert!(sim.covariance_residual(&povm).unwrap() <= 1e-10);
        prop_assert_eq!(povm.ports(), n);
    }

    #[test]
    fn excess_term_is_orthogonal_to_signals((n, d) in small_case()) {
        let sim = Simulator::new(n, d).unwrap();
        prop_assert!(sim.excess_overlap().unwrap() <= 1e-10);
    }

    #[test]
    fn young_projectors_resolve_identity(n in 1usize..=4, d in 2usize..=3) {
        let frames = enumerate_partitions(n, Some(d));
        let limits = Limits::default();
        let projs: Vec<_> = frames
            .iter()
            .map(|f| pbt_core::simulator::young_projector(f, d, Execution::Sequential, &limits).unwrap())
            .collect();
        let mut total = pbt_core::simulator::DenseOperator::zeros(n, d);
        for p in &projs {
            prop_assert!((p * p).max_abs_diff(p) < 1e-10);
            total = &total + p;
        }
        prop_assert!(total.max_abs_diff(&pbt_core::simulator::DenseOperator::identity(n, d)) < 1e-10);
    }
}

#[test]
fn factorial_sanity() {
    assert_eq!(factorial(5), BigInt::from(120));
    assert!(factorial(0).is_one());
}
