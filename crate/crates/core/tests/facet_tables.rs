use staircase_polytope::exact::{int, Int};
use staircase_polytope::facets::{
    check_rectangular, check_vertex_sum, facet_ehrhart, facet_lattice_index, facet_table,
    facet_volume, FacetTable,
};
use staircase_polytope::{ehrhart, fixtures};

#[test]
fn small_tables_match_the_fixture_data() {
    let fx = fixtures::embedded();
    for n in 3..=5u32 {
        let table = facet_table(n, false).unwrap();
        assert_eq!(&table.triangle, &fx.triangles[&n], "n={n}");
    }
}

#[test]
fn facet_polynomials_have_codimension_one_degree() {
    for (n, r, s) in [(4u32, 2u32, 2u32), (4, 3, 2), (5, 4, 3)] {
        let poly = facet_ehrhart(n, r, s, false).unwrap();
        assert_eq!(poly.degree(), Some(ehrhart::dimension(n) as usize - 1), "({n},{r},{s})");
    }
}

#[test]
fn vertex_difference_lattices_are_unimodular() {
    // Resolves the normalization question empirically: the vertex lattice of
    // every small facet already spans the ambient slice lattice.
    for n in 3..=5u32 {
        for r in 2..n {
            for s in 2..=r {
                assert_eq!(facet_lattice_index(n, r, s).unwrap(), int(1), "({n},{r},{s})");
            }
        }
    }
}

#[test]
fn exchange_symmetries_hold_by_recomputation() {
    for r in 2..4u32 {
        assert_eq!(
            facet_volume(4, r, 1, false).unwrap(),
            facet_volume(4, r, 2, false).unwrap(),
            "first-column exchange at r={r}"
        );
    }
    for s in 2..4u32 {
        assert_eq!(
            facet_volume(4, 4, s, false).unwrap(),
            facet_volume(4, 3, s, false).unwrap(),
            "last-row exchange at s={s}"
        );
    }
}

#[test]
fn skew_completion_matches_the_reference_matrix_n7() {
    // Built from fixture data; the first row of the completed matrix is the
    // negated first column of volumes.
    let fx = fixtures::embedded();
    let table = FacetTable { n: 7, triangle: fx.triangles[&7].clone() };
    let skew = table.skew_completion();
    let first_row: Vec<Int> = skew[0].clone();
    assert_eq!(
        first_row,
        vec![int(0), int(-840), int(-2180), int(-3700), int(-5040), int(-5880)]
    );
    let last_row: Vec<Int> = skew[5].clone();
    assert_eq!(
        last_row,
        vec![int(5880), int(5040), int(3700), int(2180), int(840), int(0)]
    );
    let report = check_rectangular(&table);
    assert!(report.holds && report.antidiagonal_symmetric);
}

#[test]
fn constant_triangles_separate_the_two_relation_strengths() {
    // Equal sums hold identically inside the triangle, but the completed
    // skew matrix mixes signs and rejects any nonzero constant.
    let table = FacetTable {
        n: 5,
        triangle: vec![vec![int(7)], vec![int(7), int(7)], vec![int(7), int(7), int(7)]],
    };
    let report = check_rectangular(&table);
    assert!(report.triangle_holds);
    assert!(!report.holds);
    let zero = FacetTable {
        n: 5,
        triangle: vec![vec![int(0)], vec![int(0), int(0)], vec![int(0), int(0), int(0)]],
    };
    assert!(check_rectangular(&zero).holds);
}

#[test]
fn vertex_sums_reproduce_the_total_volume_n5() {
    let table = facet_table(5, false).unwrap();
    let volume = ehrhart::relative_volume(5, false).unwrap();
    let report = check_vertex_sum(&table, &volume);
    assert!(report.holds, "{report:?}");
    // The identity vertex opposes the main diagonal: 3 + 4 + 3 = 10.
    let diag: Vec<Int> = table.diagonal();
    let total: Int = diag.iter().cloned().sum();
    assert_eq!(total, volume);
}
