//! Entanglement swapping with two Bell pairs, ideal and with a delayed photon.

use fockwave::device::{BellKind, QODevice};
use fockwave::engine::SimConfig;
use fockwave::outcomes::{density_matrix, postselect, unconditioned_channels};

fn swap(ch2_time: f64, ch3_time: f64) -> fockwave::error::Result<()> {
    let mut dev = QODevice::new(4, 2)?;
    dev.add_bell_pair(0, 1, BellKind::PhiPlus, 0.0, [0.0, 1.0, 1.0], [0.0, 1.0, 1.0])?;
    dev.add_bell_pair(2, 3, BellKind::PhiPlus, 0.0, [ch2_time, 1.0, 1.0], [ch3_time, 1.0, 1.0])?;
    dev.beamsplitter(1, 2, 45.0, 0.0)?;
    dev.detector(0, None)?
        .detector(1, Some(1))?
        .detector(2, Some(1))?
        .detector(3, None)?;

    let out = dev.run(&SimConfig::default())?;
    let circuit = dev.circuit()?;
    let branches = postselect(&out, circuit.detectors());
    let p: f64 = branches.iter().map(|b| b.weight).sum();
    let rho = density_matrix(
        &branches,
        &unconditioned_channels(circuit.levels(), circuit.detectors()),
    )?;
    println!("herald probability {p:.4}, purity {:.4}", rho.purity());
    print!("{rho}");
    Ok(())
}

fn main() -> fockwave::error::Result<()> {
    println!("indistinguishable photons");
    swap(0.0, 0.0)?;
    println!("\nphoton in channel 2 delayed by 1.0");
    swap(1.0, 20.0)?;
    Ok(())
}
