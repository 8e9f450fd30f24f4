//! Dense exact elimination over cyclotomic fields and residue fields.

use crate::cyclotomic::{Cyclotomic, FiniteFieldElem};

/// Rank of a matrix over the cyclotomic field generated by its entries.
pub fn rank(mut rows: Vec<Vec<Cyclotomic>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].mul(&inv);
            for j in c..width {
                let t = f.mul(&rows[r][j]);
                rows[i][j] = rows[i][j].sub(&t);
            }
        }
        r += 1;
    }
    r
}

/// Coefficients `c` with `sum_i c_i basis[i] = v` over a residue field, or
/// `None` if `v` is outside the span. `basis` must be linearly independent.
pub fn express(basis: &[&[FiniteFieldElem]], v: &[FiniteFieldElem]) -> Option<Vec<FiniteFieldElem>> {
    let n = basis.len();
    let len = v.len();
    let zero = v.first().map(|x| x.sub(x))?;
    // Rows are coordinates; columns are basis vectors followed by v.
    let mut m: Vec<Vec<FiniteFieldElem>> = (0..len)
        .map(|i| {
            let mut row: Vec<FiniteFieldElem> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..=n {
        let Some(p) = (r..len).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if c == n {
            return None;
        }
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..len {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let t = f.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    debug_assert_eq!(pivots.len(), n, "basis must be independent");
    let mut out = vec![zero; n];
    for (row, &c) in pivots.iter().enumerate() {
        out[c] = m[row][n].clone();
    }
    Some(out)
}
