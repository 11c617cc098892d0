//! Small dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::poly::Rational;

/// Reduced row echelon form with zero rows dropped.
pub fn row_reduce(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = Rational::one() / &rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x -= &factor * p;
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

pub fn rank(rows: Vec<Vec<Rational>>) -> usize {
    row_reduce(rows).len()
}

/// Whether `v` lies in the row space of the reduced rows `basis`.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    rank(rows) == basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[0, 1], &[1, 0], &[1, 1]])), 2);
        assert_eq!(rank(Vec::new()), 0);
        let b = row_reduce(m(&[&[1, 0, 0], &[0, 0, 0]]));
        assert!(in_span(&b, &[rat(3), rat(0), rat(0)]));
        assert!(!in_span(&b, &[rat(0), rat(1), rat(0)]));
    }
}
