//! Matrix permanents: the gray-code Glynn formula against the permutation
//! sum, and how the cost grows with the size.

use std::time::Instant;

use fockwave::linalg::{permanent_glynn, permanent_naive, CMatrix};
use num_complex::Complex64;

fn main() -> fockwave::error::Result<()> {
    // The all-ones matrix has permanent n!.
    let ones = CMatrix::from_fn(6, 6, |_, _| Complex64::new(1.0, 0.0));
    println!("perm(J_6) = {} (6! = 720)", permanent_glynn(&ones)?);

    let m = CMatrix::from_fn(7, 7, |r, c| Complex64::from_polar(1.0, 0.3 * (r * c) as f64));
    let (g, n) = (permanent_glynn(&m)?, permanent_naive(&m)?);
    println!("7x7 phase matrix: glynn {g:.10}, naive {n:.10}");

    for size in [10, 14, 18, 20] {
        let m = CMatrix::from_fn(size, size, |r, c| {
            Complex64::from_polar(1.0 / (size as f64).sqrt(), (r * 7 + c * 3) as f64 * 0.37)
        });
        let start = Instant::now();
        let p = permanent_glynn(&m)?;
        println!("n = {size:>2}: {:>12.4e} in {:?}", p.norm(), start.elapsed());
    }
    match permanent_glynn(&CMatrix::identity(21)) {
        Err(e) => println!("n = 21: {e}"),
        Ok(p) => println!("n = 21: {p}"),
    }
    Ok(())
}
