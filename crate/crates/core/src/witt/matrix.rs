//! Small dense matrices over a rational function field.

use crate::field::{FunctionField, RatFunc};

pub type Matrix = Vec<Vec<RatFunc>>;

pub fn zeros(field: &FunctionField, rows: usize, cols: usize) -> Matrix {
    vec![vec![field.zero(); cols]; rows]
}

pub fn identity(field: &FunctionField, n: usize) -> Matrix {
    let mut m = zeros(field, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = field.one();
    }
    m
}

pub fn diagonal(field: &FunctionField, entries: &[RatFunc]) -> Matrix {
    let mut m = zeros(field, entries.len(), entries.len());
    for (i, e) in entries.iter().enumerate() {
        m[i][i] = e.clone();
    }
    m
}

pub fn transpose(field: &FunctionField, a: &Matrix) -> Matrix {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut t = zeros(field, cols, rows);
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            t[j][i] = x.clone();
        }
    }
    t
}

pub fn mul(field: &FunctionField, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(field, a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate().take(inner) {
            if aik.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add(&aik.mul(&b[k][j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec(field: &FunctionField, a: &Matrix, v: &[RatFunc]) -> Vec<RatFunc> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (x, y)| acc.add(&x.mul(y)))
        })
        .collect()
}

/// Block-diagonal sum.
pub fn block_diag(field: &FunctionField, a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = zeros(field, n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[n + i][n + j] = b[i][j].clone();
        }
    }
    out
}

/// Rank by fraction-field Gaussian elimination.
pub fn rank(rows: &Matrix) -> usize {
    let mut m: Matrix = rows.clone();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        let pivot: Vec<RatFunc> = m[r].iter().map(|x| x.mul(&inv)).collect();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                m[i][j] = m[i][j].sub(&f.mul(&pivot[j]));
            }
        }
        m[r] = pivot;
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn is_invertible(a: &Matrix) -> bool {
    a.iter().all(|row| row.len() == a.len()) && rank(a) == a.len()
}
