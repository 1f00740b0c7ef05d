//! Exact Gaussian elimination over the rationals.

use crate::rational::Q;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution {
    Inconsistent,
    Unique(Vec<Q>),
    /// Consistent with free variables; `free` lists their column indices.
    Underdetermined { rank: usize, free: Vec<usize> },
}

/// Reduced row echelon form of `[a | b]` in place; returns pivot columns.
fn rref(a: &mut [Vec<Q>], b: &mut [Q], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = Q::from_integer(1.into()) / &a[row][col];
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        b[row] *= &inv;
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..cols {
                    let delta = &factor * &a[row][c];
                    a[r][c] -= delta;
                }
                let delta = &factor * &b[row];
                b[r] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solves `a·x = b` for `x` with `cols` unknowns.
pub fn solve(a: &[Vec<Q>], b: &[Q], cols: usize) -> AffineSolution {
    let mut m: Vec<Vec<Q>> = a.to_vec();
    let mut rhs: Vec<Q> = b.to_vec();
    let pivots = rref(&mut m, &mut rhs, cols);
    let rank = pivots.len();
    if rhs[rank..].iter().any(|v| !v.is_zero()) {
        return AffineSolution::Inconsistent;
    }
    if rank < cols {
        let free = (0..cols).filter(|c| !pivots.contains(c)).collect();
        return AffineSolution::Underdetermined { rank, free };
    }
    AffineSolution::Unique(rhs[..cols].to_vec())
}

/// Indices of a maximal linearly independent subset of the rows of `a`,
/// chosen greedily in order.
pub fn independent_rows(a: &[Vec<Q>], cols: usize) -> Vec<usize> {
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut chosen = Vec::new();
    for (i, row) in a.iter().enumerate() {
        let mut candidate = basis.clone();
        candidate.push(row.clone());
        let mut zeros = vec![Q::zero(); candidate.len()];
        if rref(&mut candidate, &mut zeros, cols).len() > basis.len() {
            basis.push(row.clone());
            chosen.push(i);
        }
    }
    chosen
}

/// Orthogonal projection of `r` onto `{x : a·x = b}`, or `None` when the
/// system is inconsistent.
pub fn project_onto_affine(a: &[Vec<Q>], b: &[Q], r: &[Q]) -> Option<Vec<Q>> {
    let cols = r.len();
    let rows = independent_rows(a, cols);
    let basis: Vec<&Vec<Q>> = rows.iter().map(|&i| &a[i]).collect();
    let k = basis.len();
    let dot = |u: &[Q], v: &[Q]| -> Q { u.iter().zip(v).map(|(x, y)| x * y).sum() };
    let gram: Vec<Vec<Q>> = (0..k)
        .map(|i| (0..k).map(|j| dot(basis[i], basis[j])).collect())
        .collect();
    let rhs: Vec<Q> = rows
        .iter()
        .zip(&basis)
        .map(|(&i, row)| &b[i] - dot(row, r))
        .collect();
    let AffineSolution::Unique(y) = solve(&gram, &rhs, k) else {
        unreachable!("Gram matrix of independent rows is nonsingular");
    };
    let mut x = r.to_vec();
    for (yi, row) in y.iter().zip(&basis) {
        for (xc, rc) in x.iter_mut().zip(row.iter()) {
            *xc += yi * rc;
        }
    }
    let consistent = a.iter().zip(b).all(|(row, v)| dot(row, &x) == *v);
    consistent.then_some(x)
}
