//! Multi-level bosonic states.
//!
//! A level is a flat index over (channel, polarization, packet). Packets are
//! innermost, so every packet of one physical mode sits in a contiguous run:
//!
//! ```text
//! level = ((channel · n_pol) + pol) · n_packets + packet
//! ```
//!
//! States are lists of kets with distinct occupation vectors, kept in
//! descending lexicographic order (`|2,0⟩` before `|1,1⟩` before `|0,2⟩`).

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Amplitudes smaller than this are dropped from states.
pub const DEFAULT_PRUNE: f64 = 1e-14;

pub type Occupation = Vec<u32>;

/// Bijection between flat level numbers and (channel, polarization, packet).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelIndex {
    channels: usize,
    polarizations: usize,
    packets: usize,
}

/// The physical meaning of one level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level {
    pub channel: usize,
    pub pol: usize,
    pub packet: usize,
}

impl LevelIndex {
    pub fn new(channels: usize, polarizations: usize, packets: usize) -> Result<Self> {
        if channels == 0 || polarizations == 0 || packets == 0 {
            return Err(Error::InvalidParameter(format!(
                "level counts must be positive (channels {channels}, polarizations {polarizations}, packets {packets})"
            )));
        }
        Ok(LevelIndex {
            channels,
            polarizations,
            packets,
        })
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn polarizations(&self) -> usize {
        self.polarizations
    }

    pub fn packets(&self) -> usize {
        self.packets
    }

    /// Total number of levels.
    pub fn dim(&self) -> usize {
        self.channels * self.polarizations * self.packets
    }

    pub fn level_of(&self, channel: usize, pol: usize, packet: usize) -> Result<usize> {
        check(channel, self.channels, "channel")?;
        check(pol, self.polarizations, "polarization")?;
        check(packet, self.packets, "packet")?;
        Ok((channel * self.polarizations + pol) * self.packets + packet)
    }

    pub fn tuple_of(&self, level: usize) -> Result<Level> {
        check(level, self.dim(), "level")?;
        Ok(Level {
            channel: level / (self.polarizations * self.packets),
            pol: (level / self.packets) % self.polarizations,
            packet: level % self.packets,
        })
    }

    /// All levels that belong to `channel`, in ascending order.
    pub fn channel_levels(&self, channel: usize) -> std::ops::Range<usize> {
        let width = self.polarizations * self.packets;
        channel * width..(channel + 1) * width
    }

    /// Photon count per channel for an occupation vector.
    pub fn channel_counts(&self, occ: &[u32]) -> Vec<u32> {
        (0..self.channels)
            .map(|ch| occ[self.channel_levels(ch)].iter().sum())
            .collect()
    }

    /// Renders a ket as `| H(0)0, V(1)3 >`: polarization letter, packet in
    /// parentheses, then channel. Empty levels are omitted and a level holding
    /// several photons is listed once per photon.
    pub fn render(&self, occ: &[u32]) -> String {
        let mut parts = Vec::new();
        for (level, &n) in occ.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let l = self.tuple_of(level).expect("occupation vector longer than level index");
            let label = format!("{}({}){}", pol_letter(l.pol), l.packet, l.channel);
            parts.extend(std::iter::repeat_n(label, n as usize));
        }
        if parts.is_empty() {
            "| >".to_string()
        } else {
            format!("| {} >", parts.join(", "))
        }
    }
}

/// Label of a channel-occupation pattern, e.g. `| 1, 1 >`.
pub fn render_pattern(counts: &[u32]) -> String {
    let body: Vec<String> = counts.iter().map(u32::to_string).collect();
    format!("| {} >", body.join(", "))
}

fn pol_letter(pol: usize) -> String {
    match pol {
        0 => "H".into(),
        1 => "V".into(),
        p => format!("P{p}"),
    }
}

fn check(value: usize, bound: usize, what: &'static str) -> Result<()> {
    if value < bound {
        Ok(())
    } else {
        Err(Error::OutOfRange { what, value, bound })
    }
}

/// One term of a state: amplitude and occupation numbers per level.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    pub amplitude: Complex64,
    pub occupations: Occupation,
}

impl Ket {
    pub fn photons(&self) -> u32 {
        self.occupations.iter().sum()
    }
}

/// Superposition of occupation-number kets over a fixed level set.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    levels: LevelIndex,
    kets: Vec<Ket>,
}

impl FockState {
    /// Builds a state from `(amplitude, occupations)` pairs. Duplicate
    /// occupation vectors are merged by adding amplitudes; terms below
    /// [`DEFAULT_PRUNE`] are dropped.
    pub fn new<V: AsRef<[i64]>>(levels: LevelIndex, entries: impl IntoIterator<Item = (Complex64, V)>) -> Result<Self> {
        let d = levels.dim();
        let mut acc = Accumulator::new(levels);
        for (amp, occ) in entries {
            let occ = occ.as_ref();
            if occ.len() != d {
                return Err(Error::Dimension(format!("ket has {} levels, expected {d}", occ.len())));
            }
            let mut v = Vec::with_capacity(d);
            for &n in occ {
                if n < 0 {
                    return Err(Error::NegativeOccupation(n));
                }
                v.push(u32::try_from(n).map_err(|_| Error::InvalidParameter(format!("occupation {n} too large")))?);
            }
            acc.add(v, amp);
        }
        Ok(acc.finish(DEFAULT_PRUNE))
    }

    /// Empty (zero) state.
    pub fn empty(levels: LevelIndex) -> Self {
        FockState {
            levels,
            kets: Vec::new(),
        }
    }

    /// The single ket `|occ⟩` with amplitude 1.
    pub fn basis(levels: LevelIndex, occ: Occupation) -> Result<Self> {
        if occ.len() != levels.dim() {
            return Err(Error::Dimension(format!(
                "ket has {} levels, expected {}",
                occ.len(),
                levels.dim()
            )));
        }
        Ok(FockState {
            levels,
            kets: vec![Ket {
                amplitude: Complex64::new(1.0, 0.0),
                occupations: occ,
            }],
        })
    }

    pub fn levels(&self) -> &LevelIndex {
        &self.levels
    }

    pub fn kets(&self) -> &[Ket] {
        &self.kets
    }

    pub fn len(&self) -> usize {
        self.kets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kets.is_empty()
    }

    /// `Σ |αᵢ|²`.
    pub fn norm2(&self) -> f64 {
        self.kets.iter().map(|k| k.amplitude.norm_sqr()).sum()
    }

    pub fn amplitude(&self, occ: &[u32]) -> Complex64 {
        self.kets
            .binary_search_by(|k| Reverse(k.occupations.as_slice()).cmp(&Reverse(occ)))
            .map(|i| self.kets[i].amplitude)
            .unwrap_or_default()
    }

    /// Entries in the form accepted by [`FockState::new`].
    pub fn entries(&self) -> Vec<(Complex64, Vec<i64>)> {
        self.kets
            .iter()
            .map(|k| (k.amplitude, k.occupations.iter().map(|&n| n as i64).collect()))
            .collect()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        let mut acc = Accumulator::new(self.levels);
        for k in &self.kets {
            acc.add(k.occupations.clone(), k.amplitude * s);
        }
        acc.finish(DEFAULT_PRUNE)
    }

    /// `self + other`; both states must share the level index.
    pub fn plus(&self, other: &FockState) -> Result<Self> {
        if self.levels != other.levels {
            return Err(Error::Dimension("states have different level indices".into()));
        }
        let mut acc = Accumulator::new(self.levels);
        for k in self.kets.iter().chain(&other.kets) {
            acc.add(k.occupations.clone(), k.amplitude);
        }
        Ok(acc.finish(DEFAULT_PRUNE))
    }

    /// Copy scaled to unit norm. The empty state is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm2();
        if n == 0.0 {
            return self.clone();
        }
        self.scaled(Complex64::new(1.0 / n.sqrt(), 0.0))
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.kets {
            writeln!(
                f,
                "{:+.6}{:+.6}i  {}",
                k.amplitude.re,
                k.amplitude.im,
                self.levels.render(&k.occupations)
            )?;
        }
        Ok(())
    }
}

/// Merges amplitudes by occupation vector and emits a canonical state.
pub(crate) struct Accumulator {
    levels: LevelIndex,
    terms: BTreeMap<Reverse<Occupation>, Complex64>,
}

impl Accumulator {
    pub(crate) fn new(levels: LevelIndex) -> Self {
        Accumulator {
            levels,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn add(&mut self, occ: Occupation, amp: Complex64) {
        *self.terms.entry(Reverse(occ)).or_default() += amp;
    }

    pub(crate) fn finish(self, prune: f64) -> FockState {
        let kets = self
            .terms
            .into_iter()
            .filter(|(_, a)| a.norm() >= prune)
            .map(|(Reverse(occupations), amplitude)| Ket { amplitude, occupations })
            .collect();
        FockState {
            levels: self.levels,
            kets,
        }
    }
}

/// Number of ways to place `n` photons in `d` levels, `C(n+d−1, n)`.
pub fn ket_count(d: usize, n: usize) -> u128 {
    if d == 0 {
        return u128::from(n == 0);
    }
    let (top, k) = ((n + d - 1) as u128, n.min(d - 1) as u128);
    (0..k).fold(1u128, |acc, i| acc * (top - i) / (i + 1))
}

/// Predicate on occupation vectors.
pub type KetFilter<'a> = &'a dyn Fn(&[u32]) -> bool;

/// All occupation vectors with `n` photons over `d` levels, in descending
/// lexicographic order, optionally filtered.
pub fn enumerate_kets(d: usize, n: u32, filter: Option<KetFilter>) -> Vec<Occupation> {
    let mut out = Vec::new();
    if d == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; d];
    fill(&mut cur, 0, n, &mut |v: &[u32]| {
        if filter.is_none_or(|f| f(v)) {
            out.push(v.to_vec());
        }
    });
    out
}

fn fill(cur: &mut [u32], pos: usize, left: u32, emit: &mut dyn FnMut(&[u32])) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        emit(cur);
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        fill(cur, pos + 1, left - k, emit);
    }
    cur[pos] = 0;
}
