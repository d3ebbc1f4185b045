//! Symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! nalgebra 0.33's `symmetric_eigen` mispairs eigenvalues and eigenvectors
//! on matrices with degenerate spectra (the circulant Laplacians here are
//! full of them), so the crate carries its own solver. Jacobi is
//! unconditionally convergent on symmetric matrices and accurate to machine
//! precision at the sizes used here (a few hundred rows).

use nalgebra::{DMatrix, DVector};

/// Eigenvalues (ascending) and matching orthonormal eigenvectors (columns).
pub(crate) fn sym_eigen(a: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    let mut m = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    if n <= 1 {
        return (DVector::from_fn(n, |i, _| m[(i, i)]), v);
    }
    let frob = a.norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)] * m[(p, q)];
            }
        }
        if off.sqrt() <= 1e-15 * frob {
            break;
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                m[(p, p)] = app - t * apq;
                m[(q, q)] = aqq + t * apq;
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    if k != p && k != q {
                        let akp = m[(k, p)];
                        let akq = m[(k, q)];
                        m[(k, p)] = c * akp - s * akq;
                        m[(p, k)] = m[(k, p)];
                        m[(k, q)] = s * akp + c * akq;
                        m[(q, k)] = m[(k, q)];
                    }
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    // Sort ascending, permuting eigenvectors along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].partial_cmp(&m[(j, j)]).unwrap());
    let values = DVector::from_fn(n, |i, _| m[(order[i], order[i])]);
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        vectors.set_column(new, &v.column(old));
    }
    (values, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(values: &DVector<f64>, vectors: &DMatrix<f64>) -> DMatrix<f64> {
        let n = values.len();
        let mut rec = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            let col = vectors.column(k);
            rec += col * col.transpose() * values[k];
        }
        rec
    }

    #[test]
    fn decomposes_degenerate_spectrum() {
        // The kind of matrix nalgebra 0.33 gets wrong: circulant blocks with
        // doubly degenerate eigenvalues.
        let a = DMatrix::from_row_slice(
            6,
            6,
            &[
                75.0, 10.0, 10.0, 10.0, 10.0, 10.0, //
                10.0, 6.0, 4.0, 3.0, 3.0, 4.0, //
                10.0, 4.0, 6.0, 4.0, 3.0, 3.0, //
                10.0, 3.0, 4.0, 6.0, 4.0, 3.0, //
                10.0, 3.0, 3.0, 4.0, 6.0, 4.0, //
                10.0, 4.0, 3.0, 3.0, 4.0, 6.0,
            ],
        );
        let (values, vectors) = sym_eigen(&a);
        assert!((reconstruct(&values, &vectors) - &a).amax() < 1e-12);
        let vtv = vectors.transpose() * &vectors;
        assert!((vtv - DMatrix::<f64>::identity(6, 6)).amax() < 1e-13);
        for k in 1..6 {
            assert!(values[k] >= values[k - 1]);
        }
    }

    #[test]
    fn handles_small_and_rank_deficient() {
        let zero = DMatrix::<f64>::zeros(3, 3);
        let (values, _) = sym_eigen(&zero);
        assert!(values.amax() == 0.0);
        let one = DMatrix::from_element(1, 1, 4.0);
        let (values, vectors) = sym_eigen(&one);
        assert_eq!(values[0], 4.0);
        assert_eq!(vectors[(0, 0)], 1.0);
        // Rank-1 projector.
        let p = DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        let (values, vectors) = sym_eigen(&p);
        assert!(values[0].abs() < 1e-15 && (values[1] - 1.0).abs() < 1e-15);
        assert!((reconstruct(&values, &vectors) - &p).amax() < 1e-15);
    }
}
