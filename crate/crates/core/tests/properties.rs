mod common;

use koszul_core::linalg::{rank_exact, rank_mod_p, Deadline, SparseMatrix};
use koszul_core::operad::{
    dimension, dimension_table, relation_span, EngineConfig, Family, OperadPresentation, SpanLimits,
};
use koszul_core::{ExactSeries, Parity};
use num_rational::BigRational;
use proptest::prelude::*;

fn series_strategy() -> impl Strategy<Value = ExactSeries> {
    (2usize..12).prop_flat_map(|order| {
        prop::collection::vec(-5i64..=5, order - 1).prop_map(move |tail| {
            let mut terms = vec![(1, 1)];
            terms.extend(tail.into_iter().enumerate().map(|(i, c)| (i + 2, c)));
            ExactSeries::from_int_terms(order, &terms)
        })
    })
}

fn rational_series_strategy() -> impl Strategy<Value = ExactSeries> {
    (2usize..8).prop_flat_map(|order| {
        prop::collection::vec((-6i64..=6, 1i64..=4), order - 1).prop_map(move |tail| {
            let mut terms = vec![(1, BigRational::from_integer(1.into()))];
            terms.extend(
                tail.into_iter()
                    .enumerate()
                    .map(|(i, (a, b))| (i + 2, BigRational::new(a.into(), b.into()))),
            );
            ExactSeries::from_terms(order, terms)
        })
    })
}

proptest! {
    #[test]
    fn integer_inversion_round_trips(g in series_strategy()) {
        common::inversion_round_trip(&g).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn rational_inversion_round_trips(g in rational_series_strategy()) {
        common::inversion_round_trip(&g).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn composition_is_associative(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn desuspension_is_an_involution(g in series_strategy(), n in 2usize..9, d in -4i64..5, total in any::<bool>()) {
        let family = if total { Family::Total } else { Family::Partial };
        common::desuspension_involution(&g, family, n, d).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn exact_rank_equals_modular_rank(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..8),
        seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        let m = SparseMatrix::from_dense(&rows);
        let exact = rank_exact(&m, Deadline::none()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = koszul_core::linalg::random_prime(&mut rng);
        prop_assert_eq!(exact, rank_mod_p(&m, q, Deadline::none()).unwrap());
    }
}

#[test]
fn lagrange_oracles_agree() {
    for n in 2..=8 {
        common::lagrange_agreement(n, 60).unwrap();
    }
}

#[test]
fn graft_signs_are_coherent() {
    for n in [2, 3] {
        for parity in [Parity::Odd, Parity::Even] {
            common::graft_coherence(n, 3, parity).unwrap();
        }
    }
}

#[test]
fn fuss_catalan_counts() {
    for n in 2..=6 {
        for p in 0..=5 {
            common::fuss_catalan_count(n, p).unwrap();
        }
    }
}

#[test]
fn dimensions_depend_only_on_parity() {
    for family in [Family::Total, Family::Partial] {
        for n in 2..=4 {
            for p in 2..=4 {
                common::parity_only(family, n, p).unwrap();
            }
        }
    }
}

#[test]
fn total_associativity_closed_forms() {
    let config = EngineConfig::default();
    for n in 2..=4 {
        let even = dimension_table(&OperadPresentation::total(n, 0).unwrap(), 5, &config).unwrap();
        assert!(even.dims().iter().all(|&d| d == 1));
        let odd = dimension_table(&OperadPresentation::total(n, 1).unwrap(), 5, &config).unwrap();
        assert_eq!(odd.dims(), vec![1, 1, 1, 0, 0, 0]);
    }
}

#[test]
fn dimensions_bounded_by_tree_counts() {
    let config = EngineConfig::default();
    for family in [Family::Total, Family::Partial] {
        for n in 2..=4 {
            for p in 0..=4 {
                let e =
                    dimension(&OperadPresentation::new(family, n, 1).unwrap(), p, &config).unwrap();
                assert!(
                    num_bigint::BigUint::from(e.dim) <= koszul_core::operad::fuss_catalan(n, p)
                );
            }
        }
    }
}

#[test]
fn relation_ranks_certified_by_both_methods() {
    for (family, n, d, p) in [
        (Family::Partial, 3, 0, 5),
        (Family::Partial, 4, 1, 4),
        (Family::Total, 3, 1, 4),
        (Family::Partial, 2, 1, 5),
    ] {
        let pres = OperadPresentation::new(family, n, d).unwrap();
        let span = relation_span(&pres, p, SpanLimits::default()).unwrap();
        let exact = rank_exact(&span.matrix, Deadline::none()).unwrap();
        for q in [4_611_686_018_427_388_039u64, 1_000_000_007] {
            assert_eq!(
                rank_mod_p(&span.matrix, q, Deadline::none()).unwrap(),
                exact,
                "{pres} p = {p}"
            );
        }
    }
}
