//! Building and inspecting Fock states over (channel, polarization, packet)
//! levels.

use fockwave::state::{enumerate_kets, ket_count, FockState, LevelIndex};
use num_complex::Complex64;

fn main() -> fockwave::error::Result<()> {
    let levels = LevelIndex::new(2, 2, 2)?;
    println!("{} levels", levels.dim());
    for l in [0, 3, 5] {
        let t = levels.tuple_of(l)?;
        println!(
            "level {l}: channel {}, polarization {}, packet {}",
            t.channel, t.pol, t.packet
        );
    }

    let mut a = vec![0i64; levels.dim()];
    a[levels.level_of(0, 0, 0)?] = 1;
    a[levels.level_of(1, 1, 1)?] = 1;
    let mut b = vec![0i64; levels.dim()];
    b[levels.level_of(0, 1, 0)?] = 2;
    let state = FockState::new(levels, [(Complex64::new(1.0, 0.0), a), (Complex64::new(0.0, 1.0), b)])?.normalized();
    println!("\n{state}");
    println!("norm^2 = {}", state.norm2());

    // Entries whose occupations cancel are dropped.
    let zero = state.plus(&state.scaled(Complex64::new(-1.0, 0.0)))?;
    println!("state minus itself has {} kets", zero.len());

    println!("\n3 photons in 4 levels: {} kets", ket_count(4, 3));
    for occ in enumerate_kets(4, 3, None).iter().take(6) {
        println!("  {occ:?}");
    }
    Ok(())
}
