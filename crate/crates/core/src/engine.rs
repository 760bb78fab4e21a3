//! Output amplitudes of a circuit.
//!
//! Two cores compute the same thing. The direct core substitutes every input
//! creation operator `a†ⱼ → Σₖ Uₖⱼ a†ₖ` and expands the product. The
//! permanent core evaluates each output ket on its own,
//!
//! ```text
//! ⟨m|U|n⟩ = perm(U[m, n]) / √(Π nⱼ! · Π mₖ!)
//! ```
//!
//! where `U[m, n]` repeats column `j` `nⱼ` times and row `k` `mₖ` times.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{permanent_glynn, CMatrix, MAX_GLYNN_DIM, ZERO};
use crate::state::{enumerate_kets, ket_count, Accumulator, FockState, Occupation, DEFAULT_PRUNE};

/// Photon-number limit of the direct core.
pub const MAX_DIRECT_PHOTONS: usize = 8;

/// Limit on the number of output kets enumerated for a full distribution.
pub const MAX_OUTPUT_KETS: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Core {
    Direct,
    #[default]
    Permanent,
}

impl FromStr for Core {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Core::Direct),
            "permanent" => Ok(Core::Permanent),
            other => Err(Error::InvalidParameter(format!("unknown core '{other}'"))),
        }
    }
}

/// Which output kets to compute.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum OutputMode {
    #[default]
    Full,
    Restricted(Vec<Occupation>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub core: Core,
    pub output: OutputMode,
    pub prune: f64,
    pub max_direct_photons: usize,
    pub max_output_kets: u128,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            core: Core::default(),
            output: OutputMode::Full,
            prune: DEFAULT_PRUNE,
            max_direct_photons: MAX_DIRECT_PHOTONS,
            max_output_kets: MAX_OUTPUT_KETS,
        }
    }
}

impl SimConfig {
    pub fn with_core(core: Core) -> Self {
        SimConfig {
            core,
            ..Self::default()
        }
    }
}

fn check_circuit(u: &CMatrix, input: &FockState) -> Result<()> {
    let d = input.levels().dim();
    if u.rows() != d || u.cols() != d {
        return Err(Error::Dimension(format!(
            "circuit is {}x{}, state has {d} levels",
            u.rows(),
            u.cols()
        )));
    }
    Ok(())
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn occupation_factorials(occ: &[u32]) -> f64 {
    occ.iter().map(|&n| factorial(n)).product()
}

/// Direct core with the default photon limit and pruning.
pub fn run_direct(u: &CMatrix, input: &FockState) -> Result<FockState> {
    run_direct_with(u, input, MAX_DIRECT_PHOTONS, DEFAULT_PRUNE)
}

fn run_direct_with(u: &CMatrix, input: &FockState, max_photons: usize, prune: f64) -> Result<FockState> {
    check_circuit(u, input)?;
    for k in input.kets() {
        let n = k.photons() as usize;
        if n > max_photons {
            return Err(Error::CostGuard {
                what: "photons for the direct core",
                got: n,
                limit: max_photons,
            });
        }
    }
    let per_ket: Vec<BTreeMap<Occupation, Complex64>> =
        input.kets().par_iter().map(|k| expand_ket(u, &k.occupations)).collect();

    let mut acc = Accumulator::new(*input.levels());
    for (k, terms) in input.kets().iter().zip(per_ket) {
        for (occ, amp) in terms {
            acc.add(occ, k.amplitude * amp);
        }
    }
    Ok(acc.finish(prune))
}

/// Expands `Π a†ⱼ^{nⱼ}/√nⱼ! |0⟩` through `u`, one photon at a time, over
/// monomials of output creation operators.
fn expand_ket(u: &CMatrix, occ: &[u32]) -> BTreeMap<Occupation, Complex64> {
    let d = occ.len();
    let mut terms = BTreeMap::new();
    terms.insert(
        vec![0u32; d],
        Complex64::new(1.0 / occupation_factorials(occ).sqrt(), 0.0),
    );
    for (j, &n) in occ.iter().enumerate() {
        let targets: Vec<(usize, Complex64)> = (0..d).map(|k| (k, u[(k, j)])).filter(|(_, z)| *z != ZERO).collect();
        for _ in 0..n {
            let mut next = BTreeMap::new();
            for (mono, c) in &terms {
                for &(k, z) in &targets {
                    let mut m = mono.clone();
                    m[k] += 1;
                    *next.entry(m).or_insert(ZERO) += c * z;
                }
            }
            terms = next;
        }
    }
    // Π a†ₖ^{mₖ}|0⟩ = √(Π mₖ!) |m⟩
    terms
        .into_iter()
        .map(|(m, c)| {
            let f = occupation_factorials(&m).sqrt();
            (m, c * f)
        })
        .collect()
}

/// Amplitude `⟨output|U|input⟩` from a single permanent. Zero when the photon
/// numbers differ.
pub fn run_permanent(u: &CMatrix, input: &[u32], output: &[u32]) -> Result<Complex64> {
    let d = u.rows();
    if !u.is_square() || input.len() != d || output.len() != d {
        return Err(Error::Dimension(format!(
            "circuit is {}x{}, kets have {} and {} levels",
            u.rows(),
            u.cols(),
            input.len(),
            output.len()
        )));
    }
    let n_in: u32 = input.iter().sum();
    let n_out: u32 = output.iter().sum();
    if n_in != n_out {
        return Ok(ZERO);
    }
    permanent_amplitude(u, &repeat(input), &repeat(output), input, output)
}

/// Level numbers repeated by occupation.
fn repeat(occ: &[u32]) -> Vec<usize> {
    occ.iter()
        .enumerate()
        .flat_map(|(l, &n)| std::iter::repeat_n(l, n as usize))
        .collect()
}

fn permanent_amplitude(
    u: &CMatrix,
    cols: &[usize],
    rows: &[usize],
    input: &[u32],
    output: &[u32],
) -> Result<Complex64> {
    let n = cols.len();
    let m = CMatrix::from_fn(n, n, |r, c| u[(rows[r], cols[c])]);
    let p = permanent_glynn(&m)?;
    Ok(p / (occupation_factorials(input) * occupation_factorials(output)).sqrt())
}

/// Permanent core over the given output kets (or all reachable ones).
fn run_permanent_state(u: &CMatrix, input: &FockState, cfg: &SimConfig) -> Result<FockState> {
    check_circuit(u, input)?;
    let d = input.levels().dim();
    let inputs: Vec<(Complex64, &[u32], Vec<usize>, u32)> = input
        .kets()
        .iter()
        .map(|k| {
            (
                k.amplitude,
                k.occupations.as_slice(),
                repeat(&k.occupations),
                k.photons(),
            )
        })
        .collect();
    if let Some(n) = inputs.iter().map(|i| i.3 as usize).find(|&n| n > MAX_GLYNN_DIM) {
        return Err(Error::CostGuard {
            what: "photons for the permanent core",
            got: n,
            limit: MAX_GLYNN_DIM,
        });
    }

    let outputs: Vec<Occupation> = match &cfg.output {
        OutputMode::Restricted(kets) => {
            if let Some(bad) = kets.iter().find(|k| k.len() != d) {
                return Err(Error::Dimension(format!(
                    "requested ket has {} levels, expected {d}",
                    bad.len()
                )));
            }
            kets.clone()
        }
        OutputMode::Full => {
            let mut photon_numbers: Vec<u32> = inputs.iter().map(|i| i.3).collect();
            photon_numbers.sort_unstable();
            photon_numbers.dedup();
            let reachable = reachable_levels(u, input);
            let mut all = Vec::new();
            for n in photon_numbers {
                let count = ket_count(reachable.len(), n as usize);
                if count > cfg.max_output_kets {
                    return Err(Error::CostGuard {
                        what: "output kets",
                        got: usize::try_from(count).unwrap_or(usize::MAX),
                        limit: usize::try_from(cfg.max_output_kets).unwrap_or(usize::MAX),
                    });
                }
                for sub in enumerate_kets(reachable.len(), n, None) {
                    let mut occ = vec![0u32; d];
                    for (&l, &m) in reachable.iter().zip(&sub) {
                        occ[l] = m;
                    }
                    all.push(occ);
                }
            }
            all
        }
    };

    let amps: Vec<Result<Complex64>> = outputs
        .par_iter()
        .map(|out| {
            let n_out: u32 = out.iter().sum();
            let rows = repeat(out);
            let mut amp = ZERO;
            for (alpha, occ, cols, n_in) in &inputs {
                if *n_in == n_out {
                    amp += alpha * permanent_amplitude(u, cols, &rows, occ, out)?;
                }
            }
            Ok(amp)
        })
        .collect();

    let mut acc = Accumulator::new(*input.levels());
    for (out, amp) in outputs.into_iter().zip(amps) {
        acc.add(out, amp?);
    }
    Ok(acc.finish(cfg.prune))
}

/// Output levels with a nonzero entry in some column that carries photons.
fn reachable_levels(u: &CMatrix, input: &FockState) -> Vec<usize> {
    let d = u.rows();
    let mut used = vec![false; d];
    for k in input.kets() {
        for (j, &n) in k.occupations.iter().enumerate() {
            if n > 0 {
                used[j] = true;
            }
        }
    }
    (0..d)
        .filter(|&r| (0..d).any(|j| used[j] && u[(r, j)] != ZERO))
        .collect()
}

/// Runs `input` through the circuit `u` with the configured core.
pub fn run(u: &CMatrix, input: &FockState, cfg: &SimConfig) -> Result<FockState> {
    match cfg.core {
        Core::Permanent => run_permanent_state(u, input, cfg),
        Core::Direct => {
            let full = run_direct_with(u, input, cfg.max_direct_photons, cfg.prune)?;
            match &cfg.output {
                OutputMode::Full => Ok(full),
                OutputMode::Restricted(kets) => {
                    let d = input.levels().dim();
                    if let Some(bad) = kets.iter().find(|k| k.len() != d) {
                        return Err(Error::Dimension(format!(
                            "requested ket has {} levels, expected {d}",
                            bad.len()
                        )));
                    }
                    let mut acc = Accumulator::new(*input.levels());
                    for k in kets {
                        acc.add(k.clone(), full.amplitude(k));
                    }
                    Ok(acc.finish(cfg.prune))
                }
            }
        }
    }
}
