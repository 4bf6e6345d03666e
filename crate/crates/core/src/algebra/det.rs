//! Exact determinants of Laurent-polynomial matrices.
//!
//! Cofactor expansion organized over row subsets: the minor on rows `S`
//! and the first `|S|` columns is computed once per subset, which is
//! division-free and comfortably fast at the sizes appearing here
//! (never beyond roughly 12x12).

use super::laurent::LaurentPoly;
use crate::error::Error;

/// Determinant of a square matrix of Laurent polynomials.
///
/// The empty (0x0) matrix has determinant 1 by convention.
pub fn poly_det(matrix: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, Error> {
    let n = matrix.len();
    for row in matrix {
        if row.len() != n {
            return Err(Error::Dimension {
                rows: n,
                cols: row.len(),
            });
        }
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    // minors[s] = det of rows in bitmask s, columns 0..popcount(s)
    let mut minors = vec![LaurentPoly::zero(); 1usize << n];
    minors[0] = LaurentPoly::one();
    for s in 1usize..(1 << n) {
        let col = (s.count_ones() - 1) as usize;
        let mut acc = LaurentPoly::zero();
        // Expansion along the last used column: the cofactor sign for the
        // i-th smallest row of the subset is (-1)^(i + col).
        let mut sign_pos = col.is_multiple_of(2);
        for r in 0..n {
            if s & (1 << r) == 0 {
                continue;
            }
            let entry = &matrix[r][col];
            if !entry.is_zero() {
                let term = &minors[s & !(1 << r)] * entry;
                acc = if sign_pos { &acc + &term } else { &acc - &term };
            }
            sign_pos = !sign_pos;
        }
        minors[s] = acc;
    }
    Ok(minors[(1 << n) - 1].clone())
}

/// Determinant of an integer matrix lifted to Laurent polynomials.
pub fn int_det(matrix: &[Vec<i64>]) -> Result<LaurentPoly, Error> {
    let lifted: Vec<Vec<LaurentPoly>> = matrix
        .iter()
        .map(|row| row.iter().map(|&c| LaurentPoly::from_int(c)).collect())
        .collect();
    poly_det(&lifted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_matrix_det_is_one() {
        let m: Vec<Vec<LaurentPoly>> = Vec::new();
        assert_eq!(poly_det(&m).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn one_by_one() {
        // [[y - 2]] with y = 2 + q + q^{-1} gives q + q^{-1}
        let m = vec![vec![LaurentPoly::y_minus(2)]];
        assert_eq!(
            poly_det(&m).unwrap(),
            LaurentPoly::from_terms(&[(-1, 1), (1, 1)])
        );
    }

    #[test]
    fn two_by_two_seed_determinant() {
        // det(y - K1) for K1 = [[2,1],[1,1]] is 1 + q + q^{-1} + q^2 + q^{-2}
        let m = vec![
            vec![LaurentPoly::y_minus(2), LaurentPoly::from_int(-1)],
            vec![LaurentPoly::from_int(-1), LaurentPoly::y_minus(1)],
        ];
        assert_eq!(
            poly_det(&m).unwrap(),
            LaurentPoly::from_terms(&[(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1)])
        );
    }

    #[test]
    fn non_square_rejected() {
        let m = vec![vec![LaurentPoly::one(), LaurentPoly::one()]];
        assert!(matches!(poly_det(&m), Err(Error::Dimension { .. })));
    }

    #[test]
    fn integer_det_matches_cofactor_by_hand() {
        let m = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]];
        assert_eq!(int_det(&m).unwrap(), LaurentPoly::from_int(-3));
    }
}
