//! Three photons in each input of a balanced beamsplitter. At zero delay the
//! |3,3> outcome vanishes; far apart the photons split binomially.

use fockwave::device::{QODevice, H};
use fockwave::engine::{Core, SimConfig};
use fockwave::outcomes::distribution;

fn run(dt: f64, core: Core) -> fockwave::error::Result<Vec<f64>> {
    let mut dev = QODevice::new(2, 1)?;
    dev.add_photons(3, 0, H, 0.0, 1.0, 1.0)?;
    dev.add_photons(3, 1, H, dt, 1.0, 1.0)?;
    dev.beamsplitter(0, 1, 45.0, 0.0)?;
    dev.detector(0, None)?.detector(1, None)?;
    let out = dev.run(&SimConfig::with_core(core))?;
    let dist = distribution(&out, dev.circuit()?.detectors());
    Ok((0..=6).map(|a| dist.probability(&[a, 6 - a])).collect())
}

fn main() -> fockwave::error::Result<()> {
    print!("{:>6}", "dt");
    for a in 0..=6 {
        print!("  |{a},{}>  ", 6 - a);
    }
    println!();
    for dt in [0.0, 0.5, 1.0, 2.0, 5.0] {
        print!("{dt:>6.1}");
        for p in run(dt, Core::Permanent)? {
            print!("  {p:.5}");
        }
        println!();
    }
    let (a, b) = (run(0.0, Core::Permanent)?, run(0.0, Core::Direct)?);
    let gap = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    println!("permanent and direct cores differ by {gap:.1e} at dt = 0");
    Ok(())
}
