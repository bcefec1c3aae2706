mod common;

use staircase_polytope::arrays::{
    count_arrays, enumerate_arrays, equality_profile, kostant_count, profile_counts,
};
use staircase_polytope::exact::Int;

#[test]
fn profiles_partition_the_family() {
    for n in 3..=7u32 {
        let counts = profile_counts(n, false).unwrap();
        let total: Int = counts.values().cloned().sum();
        assert_eq!(total, count_arrays(n, 1, false).unwrap(), "n={n}");
        assert!(counts.keys().all(|&k| (1..=n - 2).contains(&k)), "n={n}");
    }
}

#[test]
fn zero_prefix_subfamilies_nest_and_shrink() {
    for n in 4..=7u32 {
        let mut last = None;
        for j in 1..=(n - 2) {
            let count = count_arrays(n, j, false).unwrap();
            if let Some(prev) = last {
                assert!(count < prev, "n={n} j={j}: {count} !< {prev}");
            }
            last = Some(count);
        }
        assert_eq!(last.unwrap(), Int::from(1u32), "n={n} fully-zero family");
    }
}

#[test]
fn subfamily_equals_filtered_family() {
    for n in 4..=6u32 {
        let family = enumerate_arrays(n, 1).unwrap();
        for j in 2..=(n - 2) {
            let filtered: Vec<_> =
                family.iter().filter(|a| a.zero_prefix() >= j).cloned().collect();
            let listed = enumerate_arrays(n, j).unwrap();
            assert_eq!(filtered, listed, "n={n} j={j}");
        }
    }
}

#[test]
fn every_streamed_array_revalidates() {
    for n in 3..=7u32 {
        for arr in enumerate_arrays(n, 1).unwrap() {
            arr.validate().unwrap();
            assert!(equality_profile(&arr) >= 1);
        }
    }
}

#[test]
fn kostant_matches_the_naive_root_enumeration() {
    for n in 2..=5u32 {
        assert_eq!(
            kostant_count(n, false).unwrap(),
            Int::from(common::naive_kostant(n)),
            "n={n}"
        );
    }
}

#[test]
fn kostant_equals_next_array_family_size() {
    for n in 2..=6u32 {
        assert_eq!(
            kostant_count(n, false).unwrap(),
            count_arrays(n + 1, 1, false).unwrap(),
            "n={n}"
        );
    }
}
