//! Small exact Gaussian-elimination kernel over the rationals, shared by the
//! cone, spectrum and model-system code. Matrices are dense `Vec<Vec<Rat>>`
//! in row-major order; everything here is desk scale.

use num_traits::{One, Zero};

use crate::Rat;

/// Reduced row echelon form in place. Returns the pivot column of each pivot row.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..n {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    pivots
}

pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    rref(&mut rows).len()
}

/// Basis of the right kernel of the matrix (rows × cols), one vector per free column.
pub fn kernel_basis(mut rows: Vec<Vec<Rat>>, cols: usize) -> Vec<Vec<Rat>> {
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b` exactly; `None` when inconsistent. `A` is given by rows.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // A pivot in the augmented column means the system is inconsistent.
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rat {
        Rat::new(a.into(), b.into())
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![
            vec![q(1, 1), q(2, 1), q(3, 1)],
            vec![q(2, 1), q(4, 1), q(6, 1)],
        ];
        assert_eq!(rank(rows.clone()), 1);
        let ker = kernel_basis(rows, 3);
        assert_eq!(ker.len(), 2);
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = vec![vec![q(2, 1), q(0, 1)], vec![q(0, 1), q(3, 1)]];
        let x = solve(&a, &[q(4, 1), q(9, 1)]).unwrap();
        assert_eq!(x, vec![q(2, 1), q(3, 1)]);
        let bad = vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]];
        assert!(solve(&bad, &[q(0, 1), q(1, 1)]).is_none());
    }
}
