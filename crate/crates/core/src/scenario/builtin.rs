//! Ready-made scenarios.

use super::{ElementRecord, InputRecord, Periods, Report, Scenario, SweepParam};
use crate::engine::Core;
use crate::error::{Error, Result};
use crate::packet::Shape;

pub const NAMES: [&str; 5] = ["hom", "hom3", "delay_mz", "swap", "swap_partial"];

/// Grid of the delay-correlation sweep.
pub const DELAY_TAU_MAX: f64 = 8.0;
pub const DELAY_TAU_STEPS: usize = 160;
/// Period length of the delay-correlation circuit; the delay matches the
/// separation of the two input photons.
pub const DELAY_PERIOD: f64 = 3.1;

pub fn builtin(name: &str) -> Result<Scenario> {
    match name {
        "hom" => Ok(hom(1)),
        "hom3" => Ok(hom(3)),
        "delay_mz" => Ok(delay_mz()),
        "swap" => Ok(swap(false)),
        "swap_partial" => Ok(swap(true)),
        other => Err(Error::Scenario(format!(
            "unknown builtin '{other}' (expected one of {})",
            NAMES.join(", ")
        ))),
    }
}

fn bs(a: usize, b: usize) -> ElementRecord {
    ElementRecord::Bs(a, b, 45.0, 0.0)
}

fn detector(ch: u32, cond: Option<u32>) -> ElementRecord {
    ElementRecord::Detector(std::iter::once(ch).chain(cond).collect())
}

/// `n` photons in each of two channels meeting at a balanced beamsplitter,
/// the second group delayed by `dt`.
fn hom(n: u32) -> Scenario {
    Scenario {
        name: if n == 1 { "hom".into() } else { format!("hom{n}") },
        description: format!("{n}+{n} Gaussian photons on a balanced beamsplitter, swept over their delay"),
        channels: 2,
        polarizations: 1,
        shape: Shape::Gaussian,
        core: Core::Permanent,
        order_by_time: false,
        cartesian: false,
        restrict: Vec::new(),
        input: vec![
            InputRecord::Photons(n, 0, 0, 0.0, 1.0, 1.0),
            InputRecord::Photons(n, 1, 0, 0.0, 1.0, 1.0),
        ],
        circuit: vec![bs(0, 1), detector(0, None), detector(1, None)],
        periods: None,
        sweep: vec![SweepParam {
            name: "dt".into(),
            field: "input.1.t".into(),
            from: 0.0,
            to: 3.0,
            steps: 60,
            shift: 0.0,
        }],
        report: Report::Distribution,
    }
}

/// Two exponential photons into a Mach-Zehnder interferometer whose long
/// arm delays by one period. Two narrow zero-photon packets probe the
/// outputs at `t2` (channel 0) and `t1 = t2 + τ` (channel 1).
fn delay_mz() -> Scenario {
    let t2 = 0.001;
    Scenario {
        name: "delay_mz".into(),
        description: "two-photon time correlation behind a Mach-Zehnder with a one-period delay".into(),
        channels: 2,
        polarizations: 1,
        shape: Shape::Exponential,
        core: Core::Permanent,
        order_by_time: false,
        cartesian: false,
        restrict: Vec::new(),
        input: vec![
            InputRecord::Photons(0, 0, 0, t2, 1.0, 0.01),
            InputRecord::Photons(0, 1, 0, t2, 1.0, 0.01),
            InputRecord::Photons(1, 0, 0, 0.001, 1.0, 0.3),
            InputRecord::Photons(1, 1, 0, 3.101, 1.0, 0.3),
        ],
        circuit: vec![
            bs(0, 1),
            ElementRecord::Delay([1]),
            bs(0, 1),
            detector(0, None),
            detector(1, None),
        ],
        periods: Some(Periods {
            count: 3,
            length: DELAY_PERIOD,
        }),
        sweep: vec![SweepParam {
            name: "tau".into(),
            field: "input.1.t".into(),
            from: 0.0,
            to: DELAY_TAU_MAX,
            steps: DELAY_TAU_STEPS,
            shift: t2,
        }],
        report: Report::Correlation {
            a: 0,
            b: 1,
            sum_periods: true,
        },
    }
}

/// Entanglement swapping: two Φ⁺ pairs on (0, 1) and (2, 3), a balanced
/// beamsplitter on (1, 2) heralded by one photon in each of 1 and 2.
///
/// With `partial`, the photon in channel 2 arrives one time unit late, which
/// leaves `|⟨P₁|P₂⟩|² = e^{−1/2} ≈ 0.6065` between the interfering photons.
/// The photon in channel 3 gets a packet of its own so that the surviving
/// photons carry distinct packet labels.
fn swap(partial: bool) -> Scenario {
    let (t2, t3) = if partial { (1.0, 20.0) } else { (0.0, 0.0) };
    Scenario {
        name: if partial { "swap_partial" } else { "swap" }.into(),
        description: if partial {
            "entanglement swapping with partially distinguishable interfering photons".into()
        } else {
            "entanglement swapping with indistinguishable photons".into()
        },
        channels: 4,
        polarizations: 2,
        shape: Shape::Gaussian,
        core: Core::Permanent,
        order_by_time: false,
        cartesian: false,
        restrict: Vec::new(),
        input: vec![
            InputRecord::Bell(0, 1, "p".into(), 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0),
            InputRecord::Bell(2, 3, "p".into(), 0.0, t2, 1.0, 1.0, t3, 1.0, 1.0),
        ],
        circuit: vec![
            bs(1, 2),
            detector(0, None),
            detector(1, Some(1)),
            detector(2, Some(1)),
            detector(3, None),
        ],
        periods: None,
        sweep: Vec::new(),
        report: Report::Density { reduce_packets: false },
    }
}
