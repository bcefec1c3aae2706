mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use staircase_polytope::exact::{
    char_poly, det_exact, int, lattice_index, poly_interpolate, rat, rat_from_string,
    rat_to_string, Int, IntMatrix, Rat, UniPoly,
};
use staircase_polytope::vertices::staircase_permutations;

/// Independent cofactor-expansion determinant for the randomized comparison.
fn det_cofactor(m: &IntMatrix) -> Int {
    let d = m.dim();
    if d == 1 {
        return m.get(0, 0).clone();
    }
    let mut det = Int::from(0);
    for j in 0..d {
        let mut minor = Vec::with_capacity((d - 1) * (d - 1));
        for r in 1..d {
            for c in 0..d {
                if c != j {
                    minor.push(m.get(r, c).clone());
                }
            }
        }
        let sub = det_cofactor(&IntMatrix::new(d - 1, minor).unwrap());
        let term = m.get(0, j) * sub;
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

#[test]
fn interpolation_of_counted_ordinates_gives_product_form() {
    // Ordinates for n=3, t=0..3, from the independent naive counter.
    let counts: Vec<u64> = (0..=3).map(|t| common::naive_count(3, t, &[], 0)).collect();
    assert_eq!(counts, vec![1, 4, 10, 20]);
    let points: Vec<(Rat, Rat)> = counts
        .iter()
        .enumerate()
        .map(|(t, &c)| (rat(t as i64), rat(c as i64)))
        .collect();
    let poly = poly_interpolate(&points).unwrap();
    // (1/6)(t+1)(t+2)(t+3)
    let expected = (&(&UniPoly::linear_shift(1) * &UniPoly::linear_shift(2))
        * &UniPoly::linear_shift(3))
        .scale(&Rat::new(int(1), int(6)));
    assert_eq!(poly, expected);
}

#[test]
fn cayley_hamilton_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let d = rng.gen_range(1..=5);
        let entries: Vec<Int> = (0..d * d).map(|_| int(rng.gen_range(-3..=3))).collect();
        let m = IntMatrix::new(d, entries).unwrap();
        let p = char_poly(&m);
        // Evaluate p at M: sum of c_k * M^k must vanish.
        let mut acc = IntMatrix::new(d, vec![Int::from(0); d * d]).unwrap();
        let mut power = IntMatrix::identity(d);
        for k in 0..=p.degree().unwrap() {
            let c = p.coeff(k);
            assert!(c.denom() == &Int::from(1));
            for i in 0..d {
                for j in 0..d {
                    let v = acc.get(i, j) + c.numer() * power.get(i, j);
                    acc.set(i, j, v);
                }
            }
            power = power.mul(&m);
        }
        assert!(acc.is_zero(), "Cayley-Hamilton fails for {m:?}");
    }
}

#[test]
fn char_poly_agrees_with_determinant_interpolation() {
    // Second route to det(xI - M): exact determinants at d+1 integer points
    // of x, then Newton interpolation. Must coincide with the recurrence-
    // based computation coefficient for coefficient.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..60 {
        let d = rng.gen_range(1..=5);
        let entries: Vec<Int> = (0..d * d).map(|_| int(rng.gen_range(-4..=4))).collect();
        let m = IntMatrix::new(d, entries).unwrap();
        let points: Vec<(Rat, Rat)> = (0..=d as i64)
            .map(|x| {
                let mut shifted = IntMatrix::identity(d);
                for i in 0..d {
                    for j in 0..d {
                        shifted.set(i, j, int(if i == j { x } else { 0 }) - m.get(i, j));
                    }
                }
                (rat(x), Rat::from_integer(det_exact(&shifted)))
            })
            .collect();
        let interpolated = poly_interpolate(&points).unwrap();
        assert_eq!(interpolated, char_poly(&m), "matrix {m:?}");
    }
}

#[test]
fn bareiss_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..1000 {
        let d = rng.gen_range(1..=4);
        let entries: Vec<Int> = (0..d * d).map(|_| int(rng.gen_range(-2..=2))).collect();
        let m = IntMatrix::new(d, entries).unwrap();
        assert_eq!(det_exact(&m), det_cofactor(&m));
    }
}

#[test]
fn lattice_index_invariant_under_unimodular_row_ops() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..100 {
        let rows = rng.gen_range(2..=4);
        let cols = rng.gen_range(rows..=5);
        let mut vectors: Vec<Vec<Int>> = (0..rows)
            .map(|_| (0..cols).map(|_| int(rng.gen_range(-3..=3))).collect())
            .collect();
        let before = lattice_index(&vectors, None).unwrap();
        // A few random row operations: swap, negate, add multiple.
        for _ in 0..6 {
            match rng.gen_range(0..3) {
                0 => {
                    let (a, b) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
                    vectors.swap(a, b);
                }
                1 => {
                    let a = rng.gen_range(0..rows);
                    for v in &mut vectors[a] {
                        *v = -v.clone();
                    }
                }
                _ => {
                    let a = rng.gen_range(0..rows);
                    let mut b = rng.gen_range(0..rows);
                    if a == b {
                        b = (b + 1) % rows;
                    }
                    let k = int(rng.gen_range(-2..=2));
                    for c in 0..cols {
                        let v = &vectors[a][c] + &k * &vectors[b][c];
                        vectors[a][c] = v;
                    }
                }
            }
        }
        assert_eq!(lattice_index(&vectors, None).unwrap(), before);
    }
}

#[test]
fn vertex_difference_lattice_of_t3_is_unimodular() {
    let verts = staircase_permutations(3);
    let flat = |perm: &Vec<u32>| -> Vec<Int> {
        let mut v = vec![Int::from(0); 9];
        for (i, &c) in perm.iter().enumerate() {
            v[i * 3 + c as usize - 1] = Int::from(1);
        }
        v
    };
    let base = flat(&verts[0]);
    let diffs: Vec<Vec<Int>> = verts[1..]
        .iter()
        .map(|p| flat(p).iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    assert_eq!(lattice_index(&diffs, Some(3)).unwrap(), int(1));
}

proptest! {
    #[test]
    fn interpolation_reproduces_input_points(
        xs in proptest::collection::btree_set(-30i64..30, 1..7),
        nums in proptest::collection::vec(-50i64..50, 7),
        dens in proptest::collection::vec(1i64..20, 7),
    ) {
        let points: Vec<(Rat, Rat)> = xs
            .iter()
            .enumerate()
            .map(|(k, &x)| (rat(x), Rat::new(int(nums[k]), int(dens[k]))))
            .collect();
        let poly = poly_interpolate(&points).unwrap();
        prop_assert!(poly.degree().is_none_or(|d| d < points.len()));
        for (x, y) in &points {
            prop_assert_eq!(&poly.eval(x), y);
        }
    }

    #[test]
    fn rational_strings_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
        let r = Rat::new(int(num), int(den));
        let text = rat_to_string(&r);
        prop_assert_eq!(rat_from_string(&text).unwrap(), r);
    }
}
