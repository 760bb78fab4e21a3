//! Wavepacket overlaps, their Cholesky factor, and what happens when the
//! overlap matrix is singular.

use fockwave::circuit::CircuitBuilder;
use fockwave::linalg::{modified_cholesky, CMatrix, DEFAULT_CLIP_EPSILON};
use fockwave::packet::{build_overlap_matrix, PacketTable, Shape};
use fockwave::state::LevelIndex;

fn show(name: &str, m: &CMatrix) {
    println!("{name}:");
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|z| format!("{:>7.4}{:+.4}i", z.re, z.im)).collect();
        println!("  {}", row.join("  "));
    }
}

fn main() -> fockwave::error::Result<()> {
    let mut table = PacketTable::new(Shape::Gaussian);
    table.def_packet(0, 0.0, 1.0, 1.0)?;
    table.def_packet(1, 2.0, 1.0, 1.0)?;
    table.def_packet(2, 0.5, 1.5, 0.8)?;
    let s = build_overlap_matrix(&table)?;
    show("overlap matrix", &s);

    let fact = modified_cholesky(&s, DEFAULT_CLIP_EPSILON)?;
    show("Cholesky factor", &fact.factor);
    println!(
        "row-norm error {:.1e}, clipped eigenvalues {}",
        fact.row_norm_error, fact.clipped
    );

    // Two identical packets give a singular overlap; the zero eigenvalue is
    // lifted to the clip threshold and the rows stay normalized.
    let twins = CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]])?;
    let fact = modified_cholesky(&twins, DEFAULT_CLIP_EPSILON)?;
    println!(
        "\nidentical packets: clipped {}, row-norm error {:.1e}",
        fact.clipped, fact.row_norm_error
    );

    // Something that is not an overlap matrix at all is refused.
    let bogus = CMatrix::from_real_rows(&[&[1.0, 1.2], &[1.2, 1.0]])?;
    let mut emitter = CircuitBuilder::new(LevelIndex::new(1, 1, 2)?);
    if let Err(e) = emitter.emitter_from_overlap(&bogus) {
        println!("overlap with off-diagonal 1.2: {e}");
    }

    let mut circuit = CircuitBuilder::new(LevelIndex::new(1, 1, table.total())?);
    circuit.emitter_from_table(&table)?;
    show("\nemitter matrix for one channel", circuit.total());
    Ok(())
}
