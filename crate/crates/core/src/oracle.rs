//! Slow reference implementations used by the test suites to cross-check
//! the main routines. Nothing here is called from the production paths.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::pline::is_invertible_matrix;
use crate::ring::{Elem, FiniteRing};

/// Left-ideal closure of a seed set, as a membership bitmask. Requires
/// `|R| <= 64`.
fn left_ideal_closure(ring: &FiniteRing, seed: u64) -> u64 {
    let n = ring.size();
    let mut mask = 0u64;
    let mut queue: Vec<Elem> = (0..n).filter(|&x| seed >> x & 1 == 1).collect();
    while let Some(e) = queue.pop() {
        if mask >> e & 1 == 1 {
            continue;
        }
        mask |= 1 << e;
        for r in 0..n {
            let m = ring.mul(r, e);
            if mask >> m & 1 == 0 {
                queue.push(m);
            }
        }
        for x in 0..n {
            if mask >> x & 1 == 1 {
                let s = ring.add(x, e);
                if mask >> s & 1 == 0 {
                    queue.push(s);
                }
            }
        }
    }
    mask
}

/// The Jacobson radical as the literal intersection of all maximal left
/// ideals, found by exhaustively generating the left-ideal lattice.
/// Requires `|R| <= 64`.
pub fn maximal_left_ideal_intersection(ring: &FiniteRing) -> Vec<Elem> {
    let n = ring.size();
    assert!(n <= 64, "oracle is limited to rings with at most 64 elements");
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut ideals: BTreeSet<u64> = BTreeSet::new();
    let mut queue: Vec<u64> = alloc::vec![left_ideal_closure(ring, 1 << ring.zero())];
    while let Some(ideal) = queue.pop() {
        if !ideals.insert(ideal) {
            continue;
        }
        if ideal == full {
            continue;
        }
        for x in 0..n {
            if ideal >> x & 1 == 0 {
                queue.push(left_ideal_closure(ring, ideal | (1 << x)));
            }
        }
    }
    let proper: Vec<u64> = ideals.iter().copied().filter(|&i| i != full).collect();
    let maximal: Vec<u64> = proper
        .iter()
        .copied()
        .filter(|&i| !proper.iter().any(|&j| j != i && j & i == i))
        .collect();
    let intersection = maximal.iter().fold(full, |acc, &m| acc & m);
    (0..n).filter(|&x| intersection >> x & 1 == 1).collect()
}

/// Admissibility of a pair: some `(c, d)` completes it to an invertible
/// 2x2 matrix. Quartic in the ring size; for finite rings this agrees with
/// unimodularity.
pub fn is_admissible_pair(ring: &FiniteRing, a: Elem, b: Elem) -> bool {
    let n = ring.size();
    for c in 0..n {
        for d in 0..n {
            if is_invertible_matrix(ring, (a, b, c, d)) {
                return true;
            }
        }
    }
    false
}

/// Count `rows x cols` matrices over `F(q)` that are in reduced row-echelon
/// form with no zero row, by checking the structural predicate on every
/// digit matrix. Each subspace of dimension `rows` has exactly one such
/// basis, so this counts subspaces independently of any enumeration.
pub fn rref_matrix_count(rows: usize, cols: usize, q: usize) -> u64 {
    let total = crate::ring::pow_usize(q, rows * cols);
    let mut count = 0u64;
    for code in 0..total {
        let mut m = alloc::vec![0usize; rows * cols];
        let mut rem = code;
        for d in m.iter_mut() {
            *d = rem % q;
            rem /= q;
        }
        if is_rref_no_zero_rows(&m, rows, cols) {
            count += 1;
        }
    }
    count
}

fn is_rref_no_zero_rows(m: &[usize], rows: usize, cols: usize) -> bool {
    let mut last_pivot: isize = -1;
    for r in 0..rows {
        let Some(lead) = (0..cols).find(|&c| m[r * cols + c] != 0) else {
            return false; // zero row
        };
        if m[r * cols + lead] != 1 {
            return false;
        }
        if lead as isize <= last_pivot {
            return false;
        }
        for other in 0..rows {
            if other != r && m[other * cols + lead] != 0 {
                return false;
            }
        }
        last_pivot = lead as isize;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{jacobson_radical, make_ring};

    #[test]
    fn radical_oracle_on_z4() {
        let r = make_ring("Z4").unwrap();
        assert_eq!(maximal_left_ideal_intersection(&r), vec![0, 2]);
        assert_eq!(
            maximal_left_ideal_intersection(&r),
            jacobson_radical(&r).members()
        );
    }

    #[test]
    fn rref_count_small() {
        assert_eq!(rref_matrix_count(1, 2, 2), 3);
        assert_eq!(rref_matrix_count(2, 4, 2), 35);
    }
}
