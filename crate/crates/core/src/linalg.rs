//! Exact linear algebra for the brute-force dimension oracles.

use rustc_hash::FxHashMap;

use crate::monomial::Monomial;
use crate::poly::SparsePolynomial;
use crate::scalar::ExactScalar;

/// Rank of a dense matrix over the Gaussian rationals (row reduction).
pub fn rank(mut rows: Vec<Vec<ExactScalar>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r][c..].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Rank of the linear map sending each basis polynomial to the
/// concatenation of its images under `ops`.
pub fn rank_of_images(basis: &[SparsePolynomial], ops: &[&dyn Fn(&SparsePolynomial) -> SparsePolynomial]) -> usize {
    let mut index: FxHashMap<(usize, Monomial), usize> = FxHashMap::default();
    let mut images: Vec<Vec<(usize, ExactScalar)>> = Vec::with_capacity(basis.len());
    for b in basis {
        let mut col = Vec::new();
        for (k, op) in ops.iter().enumerate() {
            for (m, c) in op(b).terms() {
                let n = index.len();
                let row = *index.entry((k, m.clone())).or_insert(n);
                col.push((row, c.clone()));
            }
        }
        images.push(col);
    }
    // rows of the transposed matrix are the basis images; rank is the same
    let width = index.len();
    let rows = images
        .into_iter()
        .map(|col| {
            let mut r = vec![ExactScalar::zero(); width];
            for (i, c) in col {
                r[i] = c;
            }
            r
        })
        .collect();
    rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<ExactScalar>> {
        rows.iter().map(|r| r.iter().map(|&x| ExactScalar::int(x)).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]])), 3);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(Vec::new()), 0);
    }
}
