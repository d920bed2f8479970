//! Exact-cover search over bitsets (Algorithm X with a fewest-candidates
//! column heuristic). Each solution is produced exactly once, as a set of
//! row ids; enumeration order is deterministic.

use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;

/// Columns are `0..n_cols`; every row lists the columns it covers
/// (ascending).
#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub n_cols: usize,
    pub rows: Vec<Vec<u32>>,
}

/// The search visited more nodes than the configured budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub nodes: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "search budget exceeded after {} nodes", self.nodes)
    }
}

impl core::error::Error for BudgetExceeded {}

struct Searcher<'a> {
    inst: &'a CoverInstance,
    col_rows: Vec<BitSet>,
    max_nodes: u64,
    nodes: u64,
    max_solutions: usize,
    partial: Vec<u32>,
    solutions: Vec<Vec<u32>>,
}

impl Searcher<'_> {
    /// Returns `Ok(true)` when the search should stop (solution cap hit).
    fn search(
        &mut self,
        active: &BitSet,
        covered: &BitSet,
        n_covered: usize,
    ) -> Result<bool, BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(BudgetExceeded { nodes: self.nodes });
        }
        if n_covered == self.inst.n_cols {
            let mut sol = self.partial.clone();
            sol.sort_unstable();
            self.solutions.push(sol);
            return Ok(self.solutions.len() >= self.max_solutions);
        }
        // fewest-candidates uncovered column
        let mut best_col = usize::MAX;
        let mut best_cnt = usize::MAX;
        for c in 0..self.inst.n_cols {
            if covered.contains(c) {
                continue;
            }
            let cnt = active.intersection_len(&self.col_rows[c]);
            if cnt < best_cnt {
                best_cnt = cnt;
                best_col = c;
                if cnt == 0 {
                    break;
                }
            }
        }
        if best_cnt == 0 {
            return Ok(false);
        }
        let candidates = active.intersection(&self.col_rows[best_col]);
        for r in candidates.iter() {
            let mut next_active = active.clone();
            let mut next_covered = covered.clone();
            let mut next_n = n_covered;
            for &c in &self.inst.rows[r] {
                next_active.subtract(&self.col_rows[c as usize]);
                if !next_covered.contains(c as usize) {
                    next_covered.insert(c as usize);
                    next_n += 1;
                }
            }
            self.partial.push(r as u32);
            let stop = self.search(&next_active, &next_covered, next_n)?;
            self.partial.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Enumerate exact covers, at most `max_solutions` of them, visiting at most
/// `max_nodes` search nodes. Solutions are sorted row-id lists in the order
/// the deterministic search finds them.
pub fn solve_exact_cover(
    inst: &CoverInstance,
    max_nodes: u64,
    max_solutions: Option<usize>,
) -> Result<Vec<Vec<u32>>, BudgetExceeded> {
    let n_rows = inst.rows.len();
    let mut col_rows = alloc::vec![BitSet::empty(n_rows); inst.n_cols];
    for (r, cols) in inst.rows.iter().enumerate() {
        for &c in cols {
            col_rows[c as usize].insert(r);
        }
    }
    let mut searcher = Searcher {
        inst,
        col_rows,
        max_nodes,
        nodes: 0,
        max_solutions: max_solutions.unwrap_or(usize::MAX),
        partial: Vec::new(),
        solutions: Vec::new(),
    };
    let active = BitSet::full(n_rows);
    let covered = BitSet::empty(inst.n_cols.max(1));
    searcher.search(&active, &covered, 0)?;
    Ok(searcher.solutions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knuth_example() {
        // the classic 7-column instance with a unique solution
        let inst = CoverInstance {
            n_cols: 7,
            rows: alloc::vec![
                alloc::vec![2, 4, 5],
                alloc::vec![0, 3, 6],
                alloc::vec![1, 2, 5],
                alloc::vec![0, 3],
                alloc::vec![1, 6],
                alloc::vec![3, 4, 6],
            ],
        };
        let sols = solve_exact_cover(&inst, 1 << 20, None).unwrap();
        assert_eq!(sols, alloc::vec![alloc::vec![0, 3, 4]]);
    }

    #[test]
    fn counts_all_perfect_matchings() {
        // perfect matchings of a 4-cycle as exact covers: 2 solutions
        let inst = CoverInstance {
            n_cols: 4,
            rows: alloc::vec![
                alloc::vec![0, 1],
                alloc::vec![1, 2],
                alloc::vec![2, 3],
                alloc::vec![0, 3],
            ],
        };
        let sols = solve_exact_cover(&inst, 1 << 20, None).unwrap();
        assert_eq!(sols.len(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let inst = CoverInstance {
            n_cols: 2,
            rows: alloc::vec![alloc::vec![0], alloc::vec![1], alloc::vec![0, 1]],
        };
        assert!(solve_exact_cover(&inst, 1, None).is_err());
    }

    #[test]
    fn solution_cap() {
        let inst = CoverInstance {
            n_cols: 1,
            rows: alloc::vec![alloc::vec![0], alloc::vec![0], alloc::vec![0]],
        };
        let sols = solve_exact_cover(&inst, 1 << 20, Some(2)).unwrap();
        assert_eq!(sols.len(), 2);
    }
}
