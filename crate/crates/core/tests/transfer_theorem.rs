mod common;

use staircase_polytope::exact::{positive_real_root_count, Int};
use staircase_polytope::transfer::{
    char_poly_ft, evaluate_e, evaluate_e_truncated, partitions_of, recursion_holds,
};

#[test]
fn transfer_values_match_naive_counts() {
    for n in 2..=4u32 {
        for t in 0..=4u32 {
            let expected = common::naive_count(n, t, &[], 0);
            assert_eq!(
                evaluate_e(n, t, false).unwrap(),
                Int::from(expected),
                "n={n} t={t}"
            );
        }
    }
}

#[test]
fn recursions_hold_through_n12() {
    for t in 0..=6u32 {
        let values: Vec<Int> = (1..=12)
            .map(|n| evaluate_e_truncated(n, t, false).unwrap())
            .collect();
        assert!(recursion_holds(t, &values).unwrap(), "t={t}");
    }
}

#[test]
fn truncated_equals_full_on_a_grid() {
    for n in 1..=6u32 {
        for t in 0..=6u32 {
            assert_eq!(
                evaluate_e_truncated(n, t, false).unwrap(),
                evaluate_e(n, t, false).unwrap(),
                "n={n} t={t}"
            );
        }
    }
}

#[test]
fn segment_counts_are_linear() {
    // e(P_2, t) = t + 1; the truncated matrix over partitions of length
    // <= 2 keeps large t cheap.
    for t in 0..=20u32 {
        assert_eq!(evaluate_e_truncated(2, t, false).unwrap(), Int::from(t + 1));
    }
    for t in 0..=8u32 {
        assert_eq!(evaluate_e(2, t, false).unwrap(), Int::from(t + 1));
    }
}

#[test]
fn recursion_polynomials_have_only_positive_roots() {
    for t in 0..=5u32 {
        let ft = char_poly_ft(t, false).unwrap();
        let count = positive_real_root_count(&ft).unwrap();
        assert_eq!(count, partitions_of(t).len(), "t={t}");
    }
}
