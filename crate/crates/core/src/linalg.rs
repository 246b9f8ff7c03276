//! Dense symmetric helpers on top of nalgebra's eigensolver.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Eigendecomposition with eigenvalues sorted ascending (columns follow).
pub struct SortedEigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

pub fn eigen(m: &DMatrix<f64>) -> SortedEigen {
    let n = m.nrows();
    if n == 0 {
        return SortedEigen {
            values: DVector::zeros(0),
            vectors: DMatrix::zeros(0, 0),
        };
    }
    let e = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| e.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &e.eigenvectors.column(src));
    }
    SortedEigen { values, vectors }
}

pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Largest absolute eigenvalue of a symmetric matrix.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    eigenvalues(m).iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Applies `f` to the spectrum: `V diag(f(λ)) Vᵀ`.
pub fn spectral_apply(e: &SortedEigen, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let scaled = DMatrix::from_fn(e.vectors.nrows(), e.vectors.ncols(), |i, j| {
        e.vectors[(i, j)] * f(e.values[j])
    });
    scaled * e.vectors.transpose()
}

/// Frobenius inner product `A • B`.
pub fn frobenius(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.component_mul(b).sum()
}

/// Symmetrizes in place, removing round-off asymmetry.
pub fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn spectral_apply_square_root() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let e = eigen(&m);
        let root = spectral_apply(&e, f64::sqrt);
        let back = &root * &root;
        for (a, b) in back.iter().zip(m.iter()) {
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
        assert_relative_eq!(e.values[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(spectral_norm(&m), 3.0, epsilon = 1e-12);
    }
}
