use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

/// Default floor used when clipping non-positive eigenvalues.
pub const DEFAULT_CLIP_EPSILON: f64 = 1e-10;

/// Cholesky factor `L` of a Hermitian positive definite matrix, `L·L† = S`.
///
/// A pivot that is not above `n·ε_mach·max|Sᵢᵢ|` is reported as
/// [`Error::NotPositiveDefinite`] with its index.
pub fn cholesky(s: &CMatrix) -> Result<CMatrix> {
    if !s.is_square() {
        return Err(Error::Dimension(format!(
            "cholesky needs a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    let n = s.rows();
    let max_diag = (0..n).map(|i| s[(i, i)].re.abs()).fold(0.0, f64::max);
    let tol = n as f64 * f64::EPSILON * max_diag;

    let mut l = CMatrix::zeros(n, n);
    for j in 0..n {
        let pivot = s[(j, j)].re - (0..j).map(|k| l[(j, k)].norm_sqr()).sum::<f64>();
        if pivot.is_nan() || pivot <= tol {
            return Err(Error::NotPositiveDefinite { index: j, pivot });
        }
        let ljj = pivot.sqrt();
        l[(j, j)] = Complex64::new(ljj, 0.0);
        for i in j + 1..n {
            let mut acc = s[(i, j)];
            for k in 0..j {
                acc -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = acc / ljj;
        }
    }
    Ok(l)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the unitary matrix whose
/// columns are the matching eigenvectors. Only the lower triangle is read.
pub fn hermitian_eig(s: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !s.is_square() || s.rows() == 0 {
        return Err(Error::Dimension(format!(
            "eigendecomposition needs a non-empty square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    let eig = SymmetricEigen::new(s.to_nalgebra());
    let mut order: Vec<usize> = (0..s.rows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_nalgebra(&eig.eigenvectors);
    let sorted = CMatrix::from_fn(s.rows(), s.cols(), |r, c| vectors[(r, order[c])]);
    Ok((values, sorted))
}

/// Result of [`modified_cholesky`].
#[derive(Debug, Clone)]
pub struct ModifiedCholesky {
    /// Lower-triangular factor.
    pub factor: CMatrix,
    /// `maxᵢ |Σₖ |Lᵢₖ|² − 1|`, the deviation of the rows from unit norm.
    pub row_norm_error: f64,
    /// Number of eigenvalues replaced; zero when plain Cholesky succeeded.
    pub clipped: usize,
}

/// Cholesky factorization without pivoting that tolerates slightly
/// indefinite overlap matrices.
///
/// Positive definite input goes straight through [`cholesky`]. Otherwise the
/// matrix is diagonalized, every eigenvalue below `epsilon` is replaced by
/// `max(|λ|, epsilon)`, the matrix is rebuilt and factored again. The row
/// normalization error is reported, not checked; the caller decides what is
/// acceptable.
pub fn modified_cholesky(s: &CMatrix, epsilon: f64) -> Result<ModifiedCholesky> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "clip epsilon must be positive, got {epsilon}"
        )));
    }
    match cholesky(s) {
        Ok(factor) => Ok(ModifiedCholesky {
            row_norm_error: row_norm_error(&factor),
            factor,
            clipped: 0,
        }),
        Err(Error::NotPositiveDefinite { .. }) => {
            let (values, u) = hermitian_eig(s)?;
            let mut clipped = 0;
            let fixed: Vec<f64> = values
                .iter()
                .map(|&d| {
                    if d < epsilon {
                        clipped += 1;
                        d.abs().max(epsilon)
                    } else {
                        d
                    }
                })
                .collect();
            let rebuilt = &(&u * &CMatrix::from_diagonal(&fixed)) * &u.adjoint();
            let factor = cholesky(&hermitize(&rebuilt))?;
            Ok(ModifiedCholesky {
                row_norm_error: row_norm_error(&factor),
                factor,
                clipped,
            })
        }
        Err(e) => Err(e),
    }
}

fn hermitize(m: &CMatrix) -> CMatrix {
    CMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        if r == c {
            Complex64::new(m[(r, r)].re, 0.0)
        } else {
            (m[(r, c)] + m[(c, r)].conj()) * 0.5
        }
    })
}

fn row_norm_error(l: &CMatrix) -> f64 {
    (0..l.rows())
        .map(|i| (l.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max)
}
