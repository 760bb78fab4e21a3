//! Time correlation behind a Mach-Zehnder interferometer whose long arm is a
//! one-period delay.
//!
//! Two exponential photons enter 3.1 time units apart. Two narrow zero-photon
//! packets act as detection windows at t2 (channel 0) and t2 + tau
//! (channel 1). When the delay equals the photon separation the delayed
//! photon meets its partner in the same packet and coincidences near tau = 0
//! vanish. A slightly shorter period leaves the two photons partially
//! distinguishable and a small peak appears there.

use fockwave::device::{QODevice, H};
use fockwave::engine::SimConfig;
use fockwave::outcomes::coincidence;
use fockwave::packet::{PacketTable, Shape};

fn correlation(period: f64, tau: f64) -> fockwave::error::Result<f64> {
    let t2 = 0.001;
    let table = PacketTable::with_periods(Shape::Exponential, 3, period)?;
    let mut dev = QODevice::with_table(2, 1, table)?;
    let window_a = dev.add_photons(0, 0, H, t2, 1.0, 0.01)?;
    let window_b = dev.add_photons(0, 1, H, t2 + tau, 1.0, 0.01)?;
    dev.add_photons(1, 0, H, 0.001, 1.0, 0.3)?;
    dev.add_photons(1, 1, H, 3.101, 1.0, 0.3)?;
    dev.beamsplitter(0, 1, 45.0, 0.0)?;
    dev.delay(1)?;
    dev.beamsplitter(0, 1, 45.0, 0.0)?;
    dev.detector(0, None)?.detector(1, None)?;

    let out = dev.run(&SimConfig::default())?;
    let levels = dev.levels()?;
    let n_t = dev.table().per_period();
    let mut g = 0.0;
    // Both windows move together through the periods.
    for shift in 0..3 {
        let (pa, pb) = (window_a.period + shift, window_b.period + shift);
        if pa.max(pb) >= 3 {
            break;
        }
        let la = levels.level_of(0, H, pa * n_t + window_a.base)?;
        let lb = levels.level_of(1, H, pb * n_t + window_b.base)?;
        g += coincidence(&out, la, lb);
    }
    Ok(g)
}

fn main() -> fockwave::error::Result<()> {
    for period in [3.1, 3.0] {
        println!("period {period}");
        let curve: Vec<(f64, f64)> = (0..160)
            .map(|k| {
                let tau = 8.0 * k as f64 / 159.0;
                correlation(period, tau).map(|g| (tau, g))
            })
            .collect::<Result<_, _>>()?;
        let top = curve.iter().map(|p| p.1).fold(0.0, f64::max);
        for &(tau, g) in curve.iter().step_by(4) {
            println!("{tau:>6.3}  {g:.3e}  {}", "#".repeat((g / top * 60.0).round() as usize));
        }
    }
    Ok(())
}
