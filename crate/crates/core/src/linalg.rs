//! Small dense helpers that do not need a full eigendecomposition.

use crate::scalar::Real;

/// Determinant of a square row-major matrix by LU with partial pivoting.
pub fn determinant<T: Real>(n: usize, a: &[T]) -> T {
    assert_eq!(a.len(), n * n, "determinant needs an n x n matrix");
    let mut m = a.to_vec();
    let mut det = T::one();
    for c in 0..n {
        let mut p = c;
        for r in (c + 1)..n {
            if m[r * n + c].abs() > m[p * n + c].abs() {
                p = r;
            }
        }
        let pivot = m[p * n + c];
        if pivot == T::zero() {
            return T::zero();
        }
        if p != c {
            for k in 0..n {
                m.swap(c * n + k, p * n + k);
            }
            det = -det;
        }
        det = det * pivot;
        for r in (c + 1)..n {
            let f = m[r * n + c] / pivot;
            if f != T::zero() {
                for k in c..n {
                    m[r * n + k] = m[r * n + k] - f * m[c * n + k];
                }
            }
        }
    }
    det
}
