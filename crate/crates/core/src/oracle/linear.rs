//! Dense Gaussian elimination over F_p.

use crate::field::PrimeField;

/// `A x = b` over F_p, `A` given row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub field: PrimeField,
    pub ncols: usize,
    pub rows: Vec<Vec<u32>>,
    pub rhs: Vec<u32>,
}

impl LinearSystem {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        LinearSystem {
            field,
            ncols,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<u32>, b: u32) {
        debug_assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
        self.rhs.push(b);
    }
}

/// Some solution (free variables set to zero), or `None` if inconsistent.
pub fn solve_linear_fp(sys: &LinearSystem) -> Option<Vec<u32>> {
    let f = sys.field;
    let n = sys.ncols;
    let mut rows: Vec<Vec<u32>> = sys
        .rows
        .iter()
        .zip(&sys.rhs)
        .map(|(r, &b)| {
            let mut r = r.clone();
            r.push(b);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = f.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    if rows[rank..].iter().any(|r| r[n] != 0) {
        return None;
    }
    let mut x = vec![0u32; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n];
    }
    Some(x)
}
