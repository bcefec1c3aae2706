mod common;

use staircase_polytope::exact::{Int, Rat};
use staircase_polytope::oracle::{
    count_interior, count_points_dp, interior_bound, row_len, FaceSpec,
};
use staircase_polytope::{ehrhart, transfer};

#[test]
fn dp_matches_the_independent_naive_counter() {
    for n in 2..=4u32 {
        let mut zero_sets: Vec<Vec<(u32, u32)>> = vec![vec![]];
        for r in 1..=n {
            for s in 1..=row_len(n, r) {
                zero_sets.push(vec![(r, s)]);
            }
        }
        zero_sets.push(vec![(1, 1), (n, n)]);
        zero_sets.push(vec![(2, 2), (n, 1)]);
        for zeros in &zero_sets {
            let spec = FaceSpec::new(n, zeros.iter().copied()).unwrap();
            for t in 0..=4u32 {
                assert_eq!(
                    count_points_dp(&spec, t, false).unwrap(),
                    Int::from(common::naive_count(n, t, zeros, 0)),
                    "n={n} zeros={zeros:?} t={t}"
                );
            }
        }
    }
}

#[test]
fn interior_counts_match_naive_positive_fillings() {
    for n in 2..=4u32 {
        for t in 1..=7u32 {
            assert_eq!(
                count_interior(n, t).unwrap(),
                Int::from(common::naive_count(n, t, &[], 1)),
                "n={n} t={t}"
            );
        }
    }
}

#[test]
fn face_at_t1_counts_the_avoiding_vertices() {
    // The t=1 points of a zero-forced face are exactly the staircase
    // permutation matrices avoiding that cell.
    use staircase_polytope::vertices::staircase_permutations;
    for n in 3..=5u32 {
        for r in 1..=n {
            for s in 1..=row_len(n, r) {
                let spec = FaceSpec::new(n, [(r, s)]).unwrap();
                let avoiding = staircase_permutations(n)
                    .iter()
                    .filter(|perm| perm[r as usize - 1] != s)
                    .count();
                assert_eq!(
                    count_points_dp(&spec, 1, false).unwrap(),
                    Int::from(avoiding as u64),
                    "n={n} cell=({r},{s})"
                );
            }
        }
    }
}

#[test]
fn counts_are_monotone_in_t() {
    for n in 2..=5u32 {
        let spec = FaceSpec::polytope(n).unwrap();
        let mut last = Int::from(0);
        for t in 0..=8u32 {
            let c = count_points_dp(&spec, t, false).unwrap();
            assert!(c >= last, "n={n} t={t}");
            last = c;
        }
    }
}

#[test]
fn dp_agrees_with_the_transfer_path() {
    let spec = FaceSpec::polytope(5).unwrap();
    assert_eq!(
        count_points_dp(&spec, 3, false).unwrap(),
        transfer::evaluate_e(5, 3, false).unwrap()
    );
    let spec6 = FaceSpec::polytope(6).unwrap();
    for t in 0..=8u32 {
        assert_eq!(
            count_points_dp(&spec6, t, false).unwrap(),
            transfer::evaluate_e_truncated(6, t, false).unwrap(),
            "t={t}"
        );
    }
}

#[test]
fn reciprocity_against_the_interpolated_polynomial() {
    for n in 3..=4u32 {
        let result = ehrhart::ehrhart_poly(n, false).unwrap();
        let d = ehrhart::dimension(n);
        for t in 1..=(interior_bound(n) + 3) {
            let interior = count_interior(n, t).unwrap();
            let mut value = result.poly.eval_i64(-(t as i64));
            if d % 2 == 1 {
                value = -value;
            }
            assert_eq!(Rat::from_integer(interior), value, "n={n} t={t}");
        }
    }
}

#[test]
fn vanishing_thresholds_are_sharp() {
    use num_traits::Zero;
    for n in 2..=6u32 {
        let bound = interior_bound(n);
        for t in 1..bound {
            assert!(count_interior(n, t).unwrap().is_zero(), "n={n} t={t}");
        }
        assert!(!count_interior(n, bound).unwrap().is_zero(), "n={n} at bound {bound}");
    }
}
