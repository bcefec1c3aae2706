//! Vertices of `P_n`: the n×n permutation matrices with support inside the
//! staircase pattern (zero above the first superdiagonal, i.e. `pi(i) <= i+1`).

/// All staircase permutations of `{1..n}`, as images `pi(1..n)` (1-based).
/// There are exactly `2^(n-1)` of them; enumeration order is lexicographic.
pub fn staircase_permutations(n: u32) -> Vec<Vec<u32>> {
    let n = n as usize;
    let mut out = Vec::new();
    let mut used = vec![false; n + 1];
    let mut perm = Vec::with_capacity(n);
    fn rec(n: usize, used: &mut Vec<bool>, perm: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let row = perm.len() + 1;
        if row > n {
            out.push(perm.clone());
            return;
        }
        let cap = (row + 1).min(n);
        for col in 1..=cap {
            if !used[col] {
                used[col] = true;
                perm.push(col as u32);
                rec(n, used, perm, out);
                perm.pop();
                used[col] = false;
            }
        }
    }
    rec(n, &mut used, &mut perm, &mut out);
    out
}

/// Row-major 0/1 matrix of a permutation given as images.
pub fn permutation_matrix(perm: &[u32]) -> Vec<Vec<u32>> {
    let n = perm.len();
    let mut m = vec![vec![0u32; n]; n];
    for (i, &col) in perm.iter().enumerate() {
        m[i][col as usize - 1] = 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts_are_powers_of_two() {
        for n in 2..=8u32 {
            assert_eq!(staircase_permutations(n).len(), 1usize << (n - 1));
        }
    }

    #[test]
    fn all_vertices_respect_the_staircase() {
        for perm in staircase_permutations(6) {
            for (i, &col) in perm.iter().enumerate() {
                assert!(col as usize <= i + 2);
            }
        }
    }
}
