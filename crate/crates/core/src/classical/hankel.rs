use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `H[i][j] = m[i+j]` for `0 ≤ i, j < order`.
pub fn hankel_matrix(moments: &[Scalar], order: usize) -> Result<Vec<Vec<Scalar>>> {
    if order > 0 && 2 * order - 2 >= moments.len() {
        return Err(Error::InsufficientMoments {
            needed: 2 * order - 2,
            available: moments.len().saturating_sub(1),
        });
    }
    Ok((0..order)
        .map(|i| (0..order).map(|j| moments[i + j].clone()).collect())
        .collect())
}

pub fn hankel_determinant(moments: &[Scalar], order: usize) -> Result<Scalar> {
    Ok(determinant(hankel_matrix(moments, order)?))
}

/// Exact determinant by Gaussian elimination over ℚ.
pub fn determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            let (top, bottom) = m.split_at_mut(r);
            for (target, pivot_entry) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *target -= &factor * pivot_entry;
            }
        }
    }
    det
}
