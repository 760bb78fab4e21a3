//! Post-selection and density matrices: one half of a Psi- pair meets a
//! horizontally polarized photon on a beamsplitter. Heralding one photon in
//! each beamsplitter output projects the other half of the pair, and the
//! purity of the result tracks how distinguishable the photons are.

use fockwave::device::{BellKind, QODevice, H};
use fockwave::engine::SimConfig;
use fockwave::outcomes::{density_matrix, postselect};

fn main() -> fockwave::error::Result<()> {
    for t in [0.0, 0.5, 1.0, 3.0] {
        let mut dev = QODevice::new(3, 2)?;
        dev.add_bell_pair(0, 1, BellKind::PsiMinus, 0.0, [0.0, 1.0, 1.0], [0.0, 1.0, 1.0])?;
        dev.add_photons(1, 2, H, t, 1.0, 1.0)?;
        dev.beamsplitter(1, 2, 45.0, 0.0)?;
        dev.detector(0, None)?.detector(1, Some(1))?.detector(2, Some(1))?;

        let out = dev.run(&SimConfig::default())?;
        let branches = postselect(&out, dev.circuit()?.detectors());
        let p: f64 = branches.iter().map(|b| b.weight).sum();
        let rho = density_matrix(&branches, &[0])?.reduce_packets(&dev.levels()?);
        println!("delay {t}: herald probability {p:.4}, purity {:.4}", rho.purity());
        print!("{rho}");
    }
    Ok(())
}
