use num_complex::Complex64;

use super::{CMatrix, ONE};
use crate::error::{Error, Result};

/// Largest dimension accepted by [`permanent_glynn`].
pub const MAX_GLYNN_DIM: usize = 20;

/// Largest dimension accepted by [`permanent_naive`].
pub const MAX_NAIVE_DIM: usize = 9;

/// Permanent by the Balasubramanian-Bax-Franklin-Glynn formula.
///
/// Sums over sign vectors `δ` with `δ₀ = +1` fixed, visited in gray-code
/// order so that each step flips one sign and updates the column sums
/// incrementally. Cost is `O(n·2ⁿ⁻¹)`.
pub fn permanent_glynn(m: &CMatrix) -> Result<Complex64> {
    let n = square_dim(m)?;
    if n > MAX_GLYNN_DIM {
        return Err(Error::CostGuard {
            what: "permanent dimension",
            got: n,
            limit: MAX_GLYNN_DIM,
        });
    }
    if n == 0 {
        return Ok(ONE);
    }

    // Column sums for δ = (+1, ..., +1).
    let mut sums: Vec<Complex64> = (0..n).map(|j| (0..n).map(|i| m[(i, j)]).sum()).collect();
    let mut delta = vec![1.0_f64; n];
    let mut total: Complex64 = sums.iter().product();
    let mut sign = 1.0;

    let steps: u64 = 1 << (n - 1);
    for k in 1..steps {
        let row = k.trailing_zeros() as usize + 1;
        delta[row] = -delta[row];
        let twice = 2.0 * delta[row];
        for (j, s) in sums.iter_mut().enumerate() {
            *s += m[(row, j)] * twice;
        }
        sign = -sign;
        total += sums.iter().product::<Complex64>() * sign;
    }
    Ok(total / steps as f64)
}

/// Permanent by explicit enumeration of all `n!` permutations (Heap's algorithm).
///
/// Intended as a reference for small matrices.
pub fn permanent_naive(m: &CMatrix) -> Result<Complex64> {
    let n = square_dim(m)?;
    if n > MAX_NAIVE_DIM {
        return Err(Error::CostGuard {
            what: "naive permanent dimension",
            got: n,
            limit: MAX_NAIVE_DIM,
        });
    }
    if n == 0 {
        return Ok(ONE);
    }

    let term = |perm: &[usize]| -> Complex64 { perm.iter().enumerate().map(|(i, &p)| m[(i, p)]).product() };

    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut total = term(&perm);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            total += term(&perm);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}

fn square_dim(m: &CMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "permanent needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.rows())
}
