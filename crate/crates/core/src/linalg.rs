//! Dense linear algebra over F₂ with at most 64 unknowns.

/// Why a system `M·z = t` has no solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inconsistent {
    /// Rank of `M`.
    pub rank: usize,
    /// Rank of the augmented matrix `[M | t]`; always `rank + 1`.
    pub augmented_rank: usize,
}

/// Solves `M·z = t` where `columns[j]` is column `j` of `M` (bit `k` = row `k`)
/// and `rows` is the number of equations.
///
/// Pivots are taken lowest column first, lowest row first; free unknowns are
/// set to zero, so the returned solution is canonical.
pub fn solve_columns(columns: &[u64], rows: usize, target: u64) -> Result<u64, Inconsistent> {
    assert!(columns.len() <= 64 && rows <= 64);
    // Row k: coefficient bits over unknowns, plus its right-hand side.
    let mut eqs: Vec<(u64, bool)> = (0..rows)
        .map(|k| {
            let coeffs = columns
                .iter()
                .enumerate()
                .filter(|(_, c)| *c >> k & 1 == 1)
                .fold(0u64, |m, (j, _)| m | (1 << j));
            (coeffs, target >> k & 1 == 1)
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0;
    for j in 0..columns.len() {
        let Some(p) = (next_row..rows).find(|&r| eqs[r].0 >> j & 1 == 1) else {
            continue;
        };
        eqs.swap(next_row, p);
        let pivot = eqs[next_row];
        for (r, eq) in eqs.iter_mut().enumerate() {
            if r != next_row && eq.0 >> j & 1 == 1 {
                eq.0 ^= pivot.0;
                eq.1 ^= pivot.1;
            }
        }
        pivots.push((next_row, j));
        next_row += 1;
    }
    let rank = pivots.len();
    if eqs[rank..].iter().any(|&(c, rhs)| c == 0 && rhs) {
        return Err(Inconsistent { rank, augmented_rank: rank + 1 });
    }
    Ok(pivots
        .iter()
        .filter(|&&(r, _)| eqs[r].1)
        .fold(0u64, |z, &(_, j)| z | (1 << j)))
}

/// Rank of the matrix whose columns are given as bitmasks.
pub fn rank(columns: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &c in columns {
        let mut v = c;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}
