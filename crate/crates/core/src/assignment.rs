//! Dense linear assignment.
//!
//! Shortest augmenting paths with row and column potentials, the augmentation
//! scheme of Jonker and Volgenant: each row is inserted in turn and a
//! Dijkstra-like scan over reduced costs finds the cheapest alternating path
//! to a free column. O(n³) time, O(n) extra memory beyond the matrix.
//!
//! Ties are broken by scanning columns in ascending order and taking the
//! first strict minimum, so results are deterministic.

use alloc::vec;
use alloc::vec::Vec;

/// Costs above this bound are rejected so potential updates cannot overflow.
pub const MAX_COST: i64 = i64::MAX / 8;

/// Square row-major cost matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    n: usize,
    data: Vec<i64>,
}

impl CostMatrix {
    pub fn filled(n: usize, value: i64) -> Self {
        CostMatrix { n, data: vec![value; n * n] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = CostMatrix::filled(n, 0);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "cost matrix must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.data[row * self.n + col] = value;
    }
}

/// Minimum-cost perfect matching. Returns the column assigned to each row.
///
/// # Panics
///
/// If any entry is negative or exceeds [`MAX_COST`].
pub fn solve(costs: &CostMatrix) -> Vec<usize> {
    let n = costs.n;
    assert!(costs.data.iter().all(|&c| (0..=MAX_COST).contains(&c)), "assignment costs must lie in 0..=MAX_COST");
    if n == 0 {
        return Vec::new();
    }

    const UNSET: usize = usize::MAX;
    // Index n is a virtual column used as the start of every augmenting path.
    let mut row_pot = vec![0i64; n];
    let mut col_pot = vec![0i64; n + 1];
    let mut col_owner = vec![UNSET; n + 1];
    let mut came_from = vec![n; n + 1];
    let mut dist = vec![0i64; n + 1];
    let mut done = vec![false; n + 1];

    for row in 0..n {
        col_owner[n] = row;
        dist.iter_mut().for_each(|d| *d = i64::MAX);
        done.iter_mut().for_each(|f| *f = false);
        let mut col = n;

        loop {
            done[col] = true;
            let r = col_owner[col];
            let mut delta = i64::MAX;
            let mut next = UNSET;
            for j in 0..n {
                if done[j] {
                    continue;
                }
                let reduced = costs.get(r, j) - row_pot[r] - col_pot[j];
                if reduced < dist[j] {
                    dist[j] = reduced;
                    came_from[j] = col;
                }
                if dist[j] < delta {
                    delta = dist[j];
                    next = j;
                }
            }
            for j in 0..=n {
                if done[j] {
                    let owner = col_owner[j];
                    row_pot[owner] += delta;
                    col_pot[j] -= delta;
                } else {
                    dist[j] -= delta;
                }
            }
            col = next;
            if col_owner[col] == UNSET {
                break;
            }
        }

        // Flip the alternating path back to the virtual column.
        while col != n {
            let prev = came_from[col];
            col_owner[col] = col_owner[prev];
            col = prev;
        }
    }

    let mut assignment = vec![UNSET; n];
    for (j, &owner) in col_owner.iter().enumerate().take(n) {
        assignment[owner] = j;
    }
    assignment
}

/// Sum of the selected entries.
pub fn total_cost(costs: &CostMatrix, assignment: &[usize]) -> i64 {
    assignment.iter().enumerate().map(|(r, &c)| costs.get(r, c)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(costs: &CostMatrix) -> i64 {
        fn go(costs: &CostMatrix, row: usize, used: &mut Vec<bool>, acc: i64, best: &mut i64) {
            if row == costs.size() {
                *best = (*best).min(acc);
                return;
            }
            for c in 0..costs.size() {
                if !used[c] {
                    used[c] = true;
                    go(costs, row + 1, used, acc + costs.get(row, c), best);
                    used[c] = false;
                }
            }
        }
        let mut best = i64::MAX;
        go(costs, 0, &mut vec![false; costs.size()], 0, &mut best);
        best
    }

    #[test]
    fn empty_and_single() {
        assert!(solve(&CostMatrix::filled(0, 0)).is_empty());
        assert_eq!(solve(&CostMatrix::from_rows(&[vec![7]])), [0]);
    }

    #[test]
    fn classic_three_by_three() {
        let m = CostMatrix::from_rows(&[vec![4, 1, 3], vec![2, 0, 5], vec![3, 2, 2]]);
        let a = solve(&m);
        assert_eq!(total_cost(&m, &a), 5);
        assert_eq!(a, [1, 0, 2]);
    }

    #[test]
    fn ties_are_resolved_deterministically() {
        let m = CostMatrix::filled(4, 3);
        assert_eq!(solve(&m), solve(&m));
        let mut seen = solve(&m);
        seen.sort_unstable();
        assert_eq!(seen, [0, 1, 2, 3]);
    }

    #[test]
    #[should_panic]
    fn negative_costs_are_rejected() {
        solve(&CostMatrix::from_rows(&[vec![-1]]));
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..=6, seed in proptest::collection::vec(0i64..50, 36)) {
            let mut m = CostMatrix::filled(n, 0);
            for r in 0..n {
                for c in 0..n {
                    m.set(r, c, seed[r * 6 + c]);
                }
            }
            let a = solve(&m);
            let mut cols = a.clone();
            cols.sort_unstable();
            prop_assert_eq!(cols, (0..n).collect::<Vec<_>>());
            prop_assert_eq!(total_cost(&m, &a), brute_force(&m));
        }

        #[test]
        fn large_sentinels_do_not_overflow(n in 1usize..=5, seed in proptest::collection::vec(0i64..4, 25)) {
            let big = 1_000_000_000_000i64;
            let mut m = CostMatrix::filled(n, big);
            for r in 0..n {
                for c in 0..n {
                    if seed[r * 5 + c] > 0 {
                        m.set(r, c, seed[r * 5 + c]);
                    }
                }
            }
            prop_assert_eq!(total_cost(&m, &solve(&m)), brute_force(&m));
        }
    }
}
