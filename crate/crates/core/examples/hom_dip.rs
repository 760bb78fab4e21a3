//! Hong-Ou-Mandel dip: coincidence probability of two Gaussian photons on a
//! balanced beamsplitter as one of them is delayed.

use fockwave::device::{QODevice, H};
use fockwave::engine::SimConfig;
use fockwave::outcomes::distribution;

fn main() -> fockwave::error::Result<()> {
    println!("{:>5}  {:>8}  {:>8}", "dt", "P(1,1)", "bar");
    for k in 0..=30 {
        let dt = k as f64 * 0.1;
        let mut dev = QODevice::new(2, 1)?;
        dev.add_photons(1, 0, H, 0.0, 1.0, 1.0)?;
        dev.add_photons(1, 1, H, dt, 1.0, 1.0)?;
        dev.beamsplitter(0, 1, 45.0, 0.0)?;
        dev.detector(0, None)?.detector(1, None)?;

        let out = dev.run(&SimConfig::default())?;
        let p = distribution(&out, dev.circuit()?.detectors()).probability(&[1, 1]);
        println!("{dt:>5.2}  {p:>8.5}  {}", "#".repeat((p * 80.0).round() as usize));
    }
    Ok(())
}
